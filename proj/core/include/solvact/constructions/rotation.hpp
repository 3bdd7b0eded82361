#pragma once

#include <vector>

#include "solvact/exact/matrix.hpp"
#include "solvact/exact/smith.hpp"

namespace solvact::constructions {

using exact::BigInt;
using exact::RationalMatrix;
using exact::RationalVector;

/// Rotation vectors v with (A^T - I) v in Z^d, modulo Z^d:
/// L / Z^d with L = (A^T - I)^{-1} Z^d + Z^d.
struct RotationGroup {
    std::size_t dim = 0;
    std::vector<BigInt> invariant_factors;  ///< nontrivial, d_1 | d_2 | ...
    BigInt order = 1;
    /// One generator of L / Z^d per invariant factor, entries in [0,1).
    std::vector<RationalVector> generators;

    /// Every element of L / Z^d, entries in [0,1), when order <= limit.
    std::vector<RationalVector> elements(std::size_t limit = 4096) const;
};

/// Throws InfiniteFamily when det(A^T - I) = 0.
RotationGroup rotation_vector_group(const RationalMatrix& a);

}  // namespace solvact::constructions
