#pragma once

#include <functional>
#include <string>
#include <vector>

#include "solvact/exact/matrix.hpp"

namespace solvact::group {

using exact::Rational;
using exact::RationalMatrix;
using exact::RationalVector;

/// Z ⋉_A Q^d: conjugation by a acts on exponent vectors of b as A.
class GroupContext {
public:
    /// Throws DimensionError for non-square A and SingularMatrix when det A = 0.
    explicit GroupContext(RationalMatrix a);

    const RationalMatrix& A() const { return a_; }
    std::size_t dim() const { return a_.rows(); }
    /// A^k, cached for small |k|.
    RationalMatrix power(long k) const;

private:
    RationalMatrix a_;
    std::vector<RationalMatrix> pos_;  // A^0 .. A^K
    std::vector<RationalMatrix> neg_;  // A^0 .. A^-K
};

/// a^k b^v, a-power on the left.
struct GroupElement {
    long k = 0;
    RationalVector v;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

GroupElement identity(const GroupContext& ctx);
GroupElement gen_a(const GroupContext& ctx);
/// b_i (0-based i).
GroupElement gen_b(const GroupContext& ctx, std::size_t i);
GroupElement translation(const RationalVector& v);

/// (k1 + k2, A^{-k2} v1 + v2)
GroupElement multiply(const GroupContext& ctx, const GroupElement& g1, const GroupElement& g2);
/// (-k, -A^k v)
GroupElement invert(const GroupContext& ctx, const GroupElement& g);
GroupElement power(const GroupContext& ctx, const GroupElement& g, long n);
/// Left-to-right product of a word of elements.
GroupElement product(const GroupContext& ctx, const std::vector<GroupElement>& word);

std::string to_string(const GroupElement& g);

using MultiplyFn =
    std::function<GroupElement(const GroupContext&, const GroupElement&, const GroupElement&)>;

struct RelationCheck {
    std::string name;  ///< e.g. "b1 b2 = b2 b1", "a b1 a^-1 = b^(A e1)"
    bool passed = false;
};

struct RelationReport {
    std::vector<RelationCheck> checks;
    bool all_passed() const;
};

/// Checks b_i b_j = b_j b_i and a b_i a^-1 = b^{A e_i} exactly. The product
/// is injectable so a harness can confirm that a broken law gets caught.
RelationReport verify_relations(const GroupContext& ctx, const MultiplyFn& mul = multiply);

}  // namespace solvact::group
