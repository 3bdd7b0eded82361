#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "solvact/exact/factor.hpp"
#include "solvact/exact/matrix.hpp"
#include "solvact/exact/number_field.hpp"
#include "solvact/exact/sturm.hpp"

namespace solvact::spectral {

using exact::Polynomial;
using exact::Rational;
using exact::RationalInterval;
using exact::RationalMatrix;

/// Unit-circle content of a squarefree polynomial, decided exactly.
struct UnitCircleProfile {
    Polynomial reciprocal_part;  ///< gcd(p, p*) with the x-1 and x+1 factors removed
    Polynomial y_polynomial;     ///< q with reciprocal_part(x) = x^m q(x + 1/x)
    int roots_in_open_band = 0;  ///< roots of q in (-2, 2)
    bool root_at_one = false;
    bool root_at_minus_one = false;

    /// Number of roots of p of modulus 1.
    int unit_roots() const {
        return 2 * roots_in_open_band + int(root_at_one) + int(root_at_minus_one);
    }
};

UnitCircleProfile unit_circle_profile(const Polynomial& squarefree);

/// A real algebraic number: irreducible minimal polynomial plus isolating interval.
struct RealAlgebraic {
    Polynomial minpoly;
    RationalInterval interval;
    double value = 0;

    exact::FieldPtr field() const { return exact::make_field(minpoly, interval); }
};

struct SpectralClassification {
    Polynomial charpoly;
    exact::Factorization factors;
    bool irreducible_over_Q = false;
    bool hyperbolic = false;
    bool has_positive_real_eigenvalue = false;
    /// Product of the irreducible factors that carry unit-modulus roots.
    std::optional<Polynomial> unit_circle_factor;
    UnitCircleProfile profile;  ///< of the squarefree part of the charpoly
    std::vector<RealAlgebraic> positive_real_eigenvalues;  ///< increasing
    std::optional<RealAlgebraic> chosen_lambda;
};

/// Exact classification. Throws DimensionError for non-square input and
/// SingularMatrix for det A = 0.
///
/// The chosen λ is the largest positive real eigenvalue different from 1;
/// when 1 is the only positive real eigenvalue it is chosen (and synthesis
/// then refuses it).
SpectralClassification classify(const RationalMatrix& a);

using Vec = std::vector<double>;
using Basis = std::vector<Vec>;

/// Numerical invariant splitting of A^T into stable, unstable and central parts.
struct SpectralSplit {
    std::size_t dim = 0;
    std::vector<std::complex<double>> eigenvalues;  ///< of A^T
    Basis stable;
    Basis unstable;
    Basis central;
    /// Orthogonal pair (Re, Im) of a unit-modulus eigenvector with |Re| = 1 >= |Im|,
    /// or a single eigenvector for real eigenvalue ±1.
    Basis central_star;
    double contraction = 0;  ///< max |μ| over E^s (0 when E^s = 0)
    double expansion = 0;    ///< min |μ| over E^u (0 when E^u = 0)
    std::complex<double> leading_eigenvalue;
    Vec leading_direction;  ///< unit eigenvector of the eigenvalue of largest modulus (real part)

    Vec project_stable(const Vec& w) const;
    Vec project_unstable(const Vec& w) const;
    Vec project_central(const Vec& w) const;
    /// max(|π_s w|, |π_u w|)
    double norm_star(const Vec& w) const;
    /// Largest |A^T u - P_G A^T u| over basis vectors u of every part G.
    double invariance_residual(const RationalMatrix& a) const;
    /// Largest deviation of B B^{-1} from the identity, B = [E^s | E^u | E^c].
    double reconstruction_residual() const;

    std::vector<double> coords;  ///< row-major B^{-1}
};

/// Throws UnsupportedStructure when a unit-modulus eigenvalue is defective.
SpectralSplit splitting(const RationalMatrix& a);

/// E^c_* computed exactly over the real field Q(y), y = w + 1/w for the
/// unit-modulus eigenvalue w of A^T with the smallest argument.
///
/// For a non-real w the basis is (u, A^T u) with u in ker(A^T^2 - y A^T + I);
/// for w = ±1 it is a single vector of ker(A^T ∓ I) and y = ±2. Orbits of
/// these vectors under A^T stay exact, so their boundedness can be checked
/// at any horizon without rounding growth along the unstable direction.
struct ExactCentral {
    RealAlgebraic y;
    exact::FieldPtr field;
    std::vector<exact::FieldVector> basis;

    Basis to_double() const;
};

/// Throws UnsupportedStructure when A has no unit-modulus eigenvalue or the
/// unit-modulus part is defective.
ExactCentral exact_central_star(const RationalMatrix& a);

/// A^T applied to a vector over a number field.
exact::FieldVector transpose_apply(const RationalMatrix& a, const exact::FieldVector& v);

double norm(const Vec& v);
Vec mat_vec(const RationalMatrix& m, const Vec& v);

}  // namespace solvact::spectral
