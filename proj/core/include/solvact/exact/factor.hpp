#pragma once

#include <vector>

#include "solvact/exact/polynomial.hpp"

namespace solvact::exact {

/// Largest degree accepted by factor_over_Q.
inline constexpr std::size_t kMaxFactorDegree = 8;

struct FactorPower {
    Polynomial factor;  ///< monic, irreducible over Q
    int multiplicity = 1;
};

struct Factorization {
    Rational leading;
    std::vector<FactorPower> factors;  ///< ordered by degree, then coefficients

    /// leading * prod factor^multiplicity
    Polynomial expand() const;
};

/// Complete factorization over Q of a nonzero polynomial of degree <= 8.
///
/// Squarefree parts come from Yun's algorithm; each part is turned into a
/// monic integer polynomial and searched for monic integer factors of
/// increasing degree. A degree-m candidate is pinned down by its values at m
/// integer points, each of which must divide the polynomial's value there,
/// and is discarded when a coefficient exceeds the Mignotte bound. Because
/// degrees are tried in increasing order, each factor found is irreducible.
///
/// Throws UnsupportedDegree above kMaxFactorDegree.
Factorization factor_over_Q(const Polynomial& p);

bool is_irreducible(const Polynomial& p);

}  // namespace solvact::exact
