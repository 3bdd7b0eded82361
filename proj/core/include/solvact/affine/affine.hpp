#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "solvact/exact/number_field.hpp"
#include "solvact/group/group.hpp"
#include "solvact/spectral/spectral.hpp"

namespace solvact::affine {

using exact::FieldPtr;
using exact::FieldVector;
using exact::NumberFieldElement;
using exact::Rational;
using exact::RationalMatrix;
using exact::RationalVector;
using group::GroupContext;
using group::GroupElement;

/// x -> slope * x + offset over Q(λ).
struct AffineMap {
    NumberFieldElement slope;
    NumberFieldElement offset;

    NumberFieldElement operator()(const NumberFieldElement& x) const { return slope * x + offset; }
    double operator()(double x) const { return slope.to_double() * x + offset.to_double(); }

    friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

/// f ∘ g
AffineMap compose(const AffineMap& f, const AffineMap& g);
AffineMap inverse(const AffineMap& f);
AffineMap homothety(const NumberFieldElement& lambda);
AffineMap translation(const NumberFieldElement& t);

struct FaithfulnessCertificate {
    bool faithful = false;
    /// Row i: power-basis coordinates of t_i.
    RationalMatrix coordinates;
    std::size_t rank = 0;
    /// Nonzero v with <t, v> = 0 when not faithful.
    std::optional<RationalVector> witness;
};

/// ψ(a) = M_λ, ψ(b^v) = T_<t,v>, so ψ(a^k b^v)(x) = λ^k (x + <t, v>).
struct AffineRepresentation {
    GroupContext ctx;
    spectral::RealAlgebraic lambda_info;
    FieldPtr field;
    NumberFieldElement lambda;
    FieldVector t;  ///< A^T t = λ t, first nonzero entry 1
    double lambda_approx = 0;        ///< embedded λ
    std::vector<double> t_approx;    ///< embedded t

    AffineMap evaluate(const GroupElement& g) const;
    /// Binary64 evaluation of ψ(g)(x) from embedded λ and t.
    double evaluate_double(const GroupElement& g, double x) const;
    NumberFieldElement pairing(const RationalVector& v) const;  ///< <t, v>
    /// <t, v> from the embedded values.
    double pairing_double(const std::vector<double>& v) const;
};

/// Throws NoPositiveRealEigenvalue, DegenerateEigenvalue (λ = 1), and the
/// errors of spectral::classify.
AffineRepresentation synthesize(const RationalMatrix& a);
/// Synthesis for a specific positive eigenvalue (one of
/// classify(a).positive_real_eigenvalues).
AffineRepresentation synthesize(const RationalMatrix& a, const spectral::RealAlgebraic& lambda);

/// Same context and λ with an arbitrary translation vector (harness use).
AffineRepresentation with_translation_vector(const AffineRepresentation& rep, FieldVector t);

struct HomomorphismReport {
    std::size_t trials = 0;
    std::size_t violations = 0;
    /// First violating pair, if any.
    std::optional<std::pair<GroupElement, GroupElement>> counterexample;
    bool exact() const { return violations == 0; }
};

/// ψ(g1 g2) = ψ(g1) ∘ ψ(g2) exactly on random pairs (|k| <= 4, entries of height <= 20).
HomomorphismReport homomorphism_check(const AffineRepresentation& rep, std::size_t trials,
                                      std::uint64_t seed);

FaithfulnessCertificate faithfulness_certificate(const AffineRepresentation& rep);

}  // namespace solvact::affine
