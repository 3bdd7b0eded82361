#include "solvact/group/group.hpp"

#include <sstream>

#include "solvact/errors.hpp"

namespace solvact::group {

namespace {

constexpr long kPowerCache = 16;

void require_dim(const GroupContext& ctx, const GroupElement& g) {
    if (g.v.size() != ctx.dim()) {
        throw DimensionError("group element has " + std::to_string(g.v.size()) +
                             " exponents, context dimension is " + std::to_string(ctx.dim()));
    }
}

}  // namespace

GroupContext::GroupContext(RationalMatrix a) : a_(std::move(a)) {
    if (!a_.is_square()) throw DimensionError("defining matrix must be square");
    if (a_.rows() == 0) throw DimensionError("defining matrix is empty");
    if (a_.determinant().is_zero()) throw SingularMatrix("defining matrix is singular");
    RationalMatrix inv = a_.inverse();
    pos_.push_back(RationalMatrix::identity(a_.rows()));
    neg_.push_back(pos_.front());
    for (long k = 1; k <= kPowerCache; ++k) {
        pos_.push_back(pos_.back() * a_);
        neg_.push_back(neg_.back() * inv);
    }
}

RationalMatrix GroupContext::power(long k) const {
    if (k >= 0 && k <= kPowerCache) return pos_[static_cast<std::size_t>(k)];
    if (k < 0 && -k <= kPowerCache) return neg_[static_cast<std::size_t>(-k)];
    return a_.power(k);
}

GroupElement identity(const GroupContext& ctx) { return {0, RationalVector(ctx.dim())}; }

GroupElement gen_a(const GroupContext& ctx) { return {1, RationalVector(ctx.dim())}; }

GroupElement gen_b(const GroupContext& ctx, std::size_t i) {
    if (i >= ctx.dim()) throw DimensionError("generator index out of range");
    RationalVector v(ctx.dim());
    v[i] = Rational(1);
    return {0, v};
}

GroupElement translation(const RationalVector& v) { return {0, v}; }

GroupElement multiply(const GroupContext& ctx, const GroupElement& g1, const GroupElement& g2) {
    require_dim(ctx, g1);
    require_dim(ctx, g2);
    if (g2.k == 0) return {g1.k, g1.v + g2.v};
    return {g1.k + g2.k, ctx.power(-g2.k) * g1.v + g2.v};
}

GroupElement invert(const GroupContext& ctx, const GroupElement& g) {
    require_dim(ctx, g);
    return {-g.k, Rational(-1) * (ctx.power(g.k) * g.v)};
}

GroupElement power(const GroupContext& ctx, const GroupElement& g, long n) {
    GroupElement base = n < 0 ? invert(ctx, g) : g;
    unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n);
    GroupElement acc = identity(ctx);
    while (e) {
        if (e & 1ul) acc = multiply(ctx, acc, base);
        e >>= 1ul;
        if (e) base = multiply(ctx, base, base);
    }
    return acc;
}

GroupElement product(const GroupContext& ctx, const std::vector<GroupElement>& word) {
    GroupElement acc = identity(ctx);
    for (const auto& g : word) acc = multiply(ctx, acc, g);
    return acc;
}

std::string to_string(const GroupElement& g) {
    std::ostringstream os;
    os << "(" << g.k << ", [";
    for (std::size_t i = 0; i < g.v.size(); ++i) os << (i ? ", " : "") << g.v[i];
    os << "])";
    return os.str();
}

bool RelationReport::all_passed() const {
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

RelationReport verify_relations(const GroupContext& ctx, const MultiplyFn& mul) {
    RelationReport rep;
    const std::size_t d = ctx.dim();
    const GroupElement a = gen_a(ctx);
    const GroupElement a_inv{-1, RationalVector(d)};
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            GroupElement bi = gen_b(ctx, i), bj = gen_b(ctx, j);
            bool ok = mul(ctx, bi, bj) == mul(ctx, bj, bi);
            rep.checks.push_back({"b" + std::to_string(i + 1) + " b" + std::to_string(j + 1) +
                                      " = b" + std::to_string(j + 1) + " b" + std::to_string(i + 1),
                                  ok});
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        GroupElement bi = gen_b(ctx, i);
        GroupElement lhs = mul(ctx, mul(ctx, a, bi), a_inv);
        GroupElement rhs = translation(ctx.A().column(i));
        rep.checks.push_back({"a b" + std::to_string(i + 1) + " a^-1 = b^(A e" +
                                  std::to_string(i + 1) + ")",
                              lhs == rhs});
    }
    return rep;
}

}  // namespace solvact::group
