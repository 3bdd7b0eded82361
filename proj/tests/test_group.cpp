#include <gtest/gtest.h>

#include <random>

#include "solvact/errors.hpp"
#include "solvact/group/group.hpp"

using namespace solvact;
using namespace solvact::group;

namespace {

RationalMatrix paper4() {
    return RationalMatrix::from_rows({{0, 0, 0, -1}, {1, 0, 0, -4}, {0, 1, 0, -4}, {0, 0, 1, -4}});
}

Rational random_rational(std::mt19937_64& rng, long h) {
    std::uniform_int_distribution<long> num(-h, h), den(1, h);
    return Rational(num(rng), den(rng));
}

GroupElement random_element(const GroupContext& ctx, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> k(-3, 3);
    GroupElement g{k(rng), RationalVector(ctx.dim())};
    for (auto& x : g.v) x = random_rational(rng, 100);
    return g;
}

/// Rewrites a word in a^{±1} and b^{v} letters to normal form by pushing a's
/// left one letter at a time with b^w a = a b^{A^{-1} w} and b^w a^{-1} = a^{-1} b^{A w}.
GroupElement reduce_word(const RationalMatrix& a, std::vector<GroupElement> word) {
    RationalMatrix ainv = a.inverse();
    long k = 0;
    RationalVector v(a.rows());
    for (const auto& letter : word) {
        if (letter.k == 0) {
            v = v + letter.v;
            continue;
        }
        long steps = letter.k > 0 ? letter.k : -letter.k;
        for (long s = 0; s < steps; ++s) {
            v = letter.k > 0 ? ainv * v : a * v;
            k += letter.k > 0 ? 1 : -1;
        }
        v = v + letter.v;
    }
    return {k, v};
}

}  // namespace

TEST(Group, ContextRejectsSingular) {
    EXPECT_THROW(GroupContext(RationalMatrix::from_rows({{1, 2}, {2, 4}})), SingularMatrix);
    EXPECT_THROW(GroupContext(RationalMatrix(2, 3)), DimensionError);
}

TEST(Group, BaumslagSolitarConjugation) {
    GroupContext ctx(RationalMatrix::from_rows({{2}}));
    GroupElement r = product(ctx, {gen_a(ctx), gen_b(ctx, 0), invert(ctx, gen_a(ctx))});
    EXPECT_EQ(r, (GroupElement{0, {Rational(2)}}));
}

TEST(Group, MultiplyMatchesWordReduction) {
    GroupContext ctx(RationalMatrix::from_rows({{2, 1}, {1, 1}}));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        GroupElement v = random_element(ctx, rng), w = random_element(ctx, rng);
        GroupElement lhs = multiply(ctx, {1, v.v}, {-1, w.v});
        EXPECT_EQ(lhs, (GroupElement{0, ctx.A() * v.v + w.v}));
        GroupElement g1 = random_element(ctx, rng), g2 = random_element(ctx, rng);
        std::vector<GroupElement> word{{g1.k, RationalVector(2)}, {0, g1.v},
                                       {g2.k, RationalVector(2)}, {0, g2.v}};
        EXPECT_EQ(multiply(ctx, g1, g2), reduce_word(ctx.A(), word));
    }
}

TEST(Group, InverseExamples) {
    GroupContext ctx(RationalMatrix::from_rows({{2}}));
    EXPECT_EQ(invert(ctx, {0, {Rational(3, 4)}}), (GroupElement{0, {Rational(-3, 4)}}));
    EXPECT_EQ(invert(ctx, {1, {Rational(0)}}), (GroupElement{-1, {Rational(0)}}));
    GroupElement g{1, {Rational(1)}};
    EXPECT_EQ(invert(ctx, g), (GroupElement{-1, {Rational(-2)}}));
    EXPECT_EQ(multiply(ctx, g, invert(ctx, g)), identity(ctx));
}

TEST(Group, AssociativityIdentityInverseRandom) {
    for (const auto& a : {paper4(), RationalMatrix::from_rows({{2, 1}, {1, 1}}),
                          RationalMatrix::from_rows({{3}})}) {
        GroupContext ctx(a);
        std::mt19937_64 rng(1000);
        for (int i = 0; i < 1000; ++i) {
            GroupElement g1 = random_element(ctx, rng), g2 = random_element(ctx, rng),
                         g3 = random_element(ctx, rng);
            ASSERT_EQ(multiply(ctx, multiply(ctx, g1, g2), g3),
                      multiply(ctx, g1, multiply(ctx, g2, g3)));
            ASSERT_EQ(multiply(ctx, identity(ctx), g1), g1);
            ASSERT_EQ(multiply(ctx, g1, identity(ctx)), g1);
            ASSERT_EQ(multiply(ctx, g1, invert(ctx, g1)), identity(ctx));
            ASSERT_EQ(multiply(ctx, invert(ctx, g1), g1), identity(ctx));
        }
    }
}

TEST(Group, ConjugationActsByA) {
    GroupContext ctx(paper4());
    std::mt19937_64 rng(77);
    for (int i = 0; i < 100; ++i) {
        RationalVector v = random_element(ctx, rng).v;
        GroupElement c = product(ctx, {gen_a(ctx), translation(v), invert(ctx, gen_a(ctx))});
        EXPECT_EQ(c, translation(ctx.A() * v));
    }
}

TEST(Group, PowersAndLargeExponents) {
    GroupContext ctx(RationalMatrix::from_rows({{2, 1}, {1, 1}}));
    GroupElement g{2, {Rational(1, 3), Rational(-2)}};
    GroupElement p = power(ctx, g, 25);
    GroupElement naive = identity(ctx);
    for (int i = 0; i < 25; ++i) naive = multiply(ctx, naive, g);
    EXPECT_EQ(p, naive);
    EXPECT_EQ(multiply(ctx, power(ctx, g, -25), p), identity(ctx));
}

TEST(Relations, HoldForCorpusMatrices) {
    for (const auto& a : {RationalMatrix::from_rows({{2}}), paper4()}) {
        GroupContext ctx(a);
        auto rep = verify_relations(ctx);
        EXPECT_TRUE(rep.all_passed());
        std::size_t d = a.rows();
        EXPECT_EQ(rep.checks.size(), d * (d - 1) / 2 + d);
    }
}

TEST(Relations, CorruptedMultiplyIsCaught) {
    GroupContext ctx(paper4());
    MultiplyFn broken = [](const GroupContext& c, const GroupElement& x, const GroupElement& y) {
        // Conjugates by A instead of A^{-1}.
        return GroupElement{x.k + y.k, c.power(y.k) * x.v + y.v};
    };
    EXPECT_FALSE(verify_relations(ctx, broken).all_passed());
    MultiplyFn noncommuting = [](const GroupContext& c, const GroupElement& x, const GroupElement& y) {
        GroupElement r = multiply(c, x, y);
        if (x.k == 0 && y.k == 0 && x.v != y.v && x.v[0] == 1) r.v[0] += 1;
        return r;
    };
    auto rep = verify_relations(ctx, noncommuting);
    EXPECT_FALSE(rep.all_passed());
}

TEST(Group, DimensionMismatch) {
    GroupContext ctx(paper4());
    EXPECT_THROW(multiply(ctx, gen_a(ctx), {0, {Rational(1)}}), DimensionError);
}
