#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "solvact/errors.hpp"
#include "solvact/exact/factor.hpp"
#include "solvact/exact/matrix.hpp"
#include "solvact/exact/number_field.hpp"
#include "solvact/exact/smith.hpp"
#include "solvact/exact/sturm.hpp"

using namespace solvact;
using namespace solvact::exact;

namespace {

RationalMatrix paper4() {
    return RationalMatrix::from_rows({{0, 0, 0, -1}, {1, 0, 0, -4}, {0, 1, 0, -4}, {0, 0, 1, -4}});
}

Rational random_rational(std::mt19937_64& rng, long h) {
    std::uniform_int_distribution<long> num(-h, h), den(1, h);
    return Rational(num(rng), den(rng));
}

/// Complex roots through the companion matrix.
std::vector<std::complex<double>> float_roots(const Polynomial& p) {
    Polynomial m = p.monic();
    int n = static_cast<int>(m.deg());
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) c(i, n - 1) = -m.coeff(static_cast<std::size_t>(i)).to_double();
    Eigen::EigenSolver<Eigen::MatrixXd> es(c);
    std::vector<std::complex<double>> out;
    for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
    return out;
}

/// True when some proper subset of the complex roots multiplies out to a
/// polynomial with integer coefficients that divides q exactly.
bool has_proper_factor_by_roots(const Polynomial& q) {
    auto prim = primitive_integer_coeffs(q);
    Polynomial z = from_integer_coeffs(prim);
    // Monic integer version: c^{n-1} z(x/c).
    std::size_t n = z.deg();
    Rational c = z.leading();
    Polynomial mq = (z.scaled_argument(c.inverse()) * pow(Polynomial::constant(c), n - 1));
    auto roots = float_roots(mq);
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<std::complex<double>> poly{1.0};
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask & (1u << i))) continue;
            std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
            for (std::size_t j = 0; j < poly.size(); ++j) {
                next[j + 1] += poly[j];
                next[j] -= roots[i] * poly[j];
            }
            poly = next;
        }
        std::vector<Rational> ic;
        bool integral = true;
        for (const auto& z : poly) {
            double r = std::round(z.real());
            if (std::abs(z.real() - r) > 1e-6 || std::abs(z.imag()) > 1e-6) {
                integral = false;
                break;
            }
            ic.emplace_back(static_cast<long>(r));
        }
        if (integral && (mq % Polynomial(ic)).is_zero()) return true;
    }
    return false;
}

}  // namespace

TEST(Rational, CanonicalForm) {
    Rational r(BigInt(6), BigInt(-4));
    EXPECT_EQ(r.numerator(), -3);
    EXPECT_EQ(r.denominator(), 2);
    EXPECT_EQ(r.str(), "-3/2");
    EXPECT_EQ(Rational(4, 2).str(), "2");
}

TEST(Rational, ParseRejectsMalformed) {
    EXPECT_EQ(Rational::parse("-7/21"), Rational(-1, 3));
    EXPECT_THROW(Rational::parse("1/0"), InputError);
    EXPECT_THROW(Rational::parse("1.5"), InputError);
    EXPECT_THROW(Rational::parse(""), InputError);
    EXPECT_THROW(Rational::parse("2/-3"), InputError);
}

TEST(Rational, LongDoubleConversionOfHugeValues) {
    Rational big = pow2(3000) * Rational(3, 7);
    Rational tiny = big.inverse();
    EXPECT_NEAR(static_cast<double>(big.to_long_double() / std::ldexp(3.0L / 7.0L, 3000)), 1.0, 1e-15);
    EXPECT_GT(tiny.to_long_double(), 0.0L);
}

TEST(Polynomial, ZeroHasNoDegree) {
    Polynomial z;
    EXPECT_FALSE(z.degree().has_value());
    EXPECT_EQ(Polynomial::constant(Rational(3)).degree(), 0u);
    EXPECT_EQ((Polynomial{1, 1} - Polynomial{1, 1}), Polynomial());
}

TEST(Polynomial, DivmodAndGcd) {
    Polynomial a{-1, 0, 1};  // x^2 - 1
    Polynomial b{1, 1};
    auto [q, r] = divmod(a, b);
    EXPECT_EQ(q, (Polynomial{-1, 1}));
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(gcd(a, Polynomial{1, 2, 1}), (Polynomial{1, 1}));
    Polynomial a2{-2, 0, 1}, b2{1, 1};
    auto bz = extended_gcd(a2, b2);
    EXPECT_EQ(bz.s * a2 + bz.t * b2, bz.g);
}

TEST(Polynomial, SquarefreeDecomposition) {
    Polynomial p = Polynomial::constant(Rational(3)) * pow(Polynomial{-1, 1}, 3) * Polynomial{2, 0, 1};
    auto parts = squarefree_decomposition(p);
    Polynomial acc = Polynomial::constant(p.leading());
    for (const auto& [s, m] : parts) acc *= pow(s, static_cast<unsigned>(m));
    EXPECT_EQ(acc, p);
    ASSERT_EQ(parts.size(), 2u);
}

TEST(Charpoly, PaperMatrix) {
    EXPECT_EQ(charpoly(paper4()), (Polynomial{1, 4, 4, 4, 1}));
}

TEST(Charpoly, SmallCases) {
    EXPECT_EQ(charpoly(RationalMatrix::identity(2)), pow(Polynomial{-1, 1}, 2));
    EXPECT_EQ(charpoly(RationalMatrix::from_rows({{2}})), (Polynomial{-2, 1}));
    EXPECT_THROW(charpoly(RationalMatrix(2, 3)), DimensionError);
}

TEST(Charpoly, CayleyHamiltonRandom) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = random_rational(rng, 9);
        RationalMatrix z = evaluate(charpoly(m), m);
        EXPECT_EQ(z, RationalMatrix(n, n)) << "trial " << trial;
        EXPECT_EQ(charpoly(m).coeff(0) * Rational(n % 2 ? -1 : 1), m.determinant());
    }
}

TEST(Matrix, InverseKernelRank) {
    auto a = RationalMatrix::from_rows({{2, 1}, {1, 1}});
    EXPECT_EQ(a * a.inverse(), RationalMatrix::identity(2));
    EXPECT_EQ(a.power(-3) * a.power(3), RationalMatrix::identity(2));
    auto s = RationalMatrix::from_rows({{1, 2}, {2, 4}});
    EXPECT_EQ(s.rank(), 1u);
    EXPECT_THROW(s.inverse(), SingularMatrix);
    auto k = s.kernel();
    ASSERT_EQ(k.size(), 1u);
    EXPECT_TRUE(is_zero(s * k[0]));
    EXPECT_THROW(RationalMatrix::from_rows(std::vector<std::vector<Rational>>{{1, 2}, {3}}), InputError);
}

TEST(Factor, PaperPolynomialIsIrreducible) {
    auto f = factor_over_Q(Polynomial{1, 4, 4, 4, 1});
    ASSERT_EQ(f.factors.size(), 1u);
    EXPECT_EQ(f.factors[0].factor, (Polynomial{1, 4, 4, 4, 1}));
    EXPECT_EQ(f.factors[0].multiplicity, 1);
}

TEST(Factor, DifferenceOfSquares) {
    auto f = factor_over_Q(Polynomial{-1, 0, 1});
    ASSERT_EQ(f.factors.size(), 2u);
    EXPECT_EQ(f.factors[0].factor, (Polynomial{-1, 1}));
    EXPECT_EQ(f.factors[1].factor, (Polynomial{1, 1}));
}

TEST(Factor, QuarticSplitsIntoQuadratics) {
    Polynomial p{-4, 0, 0, 0, 1};
    auto f = factor_over_Q(p);
    ASSERT_EQ(f.factors.size(), 2u);
    EXPECT_EQ(f.factors[0].factor, (Polynomial{-2, 0, 1}));
    EXPECT_EQ(f.factors[1].factor, (Polynomial{2, 0, 1}));
    EXPECT_EQ(f.expand(), p);

    // Exhaustive search over monic integer quadratics with small coefficients.
    std::vector<Polynomial> found;
    for (long b = -6; b <= 6; ++b)
        for (long c = -6; c <= 6; ++c) {
            Polynomial g{c, b, 1};
            if ((p % g).is_zero()) found.push_back(g);
        }
    ASSERT_EQ(found.size(), 2u);
    EXPECT_EQ(found[0], (Polynomial{-2, 0, 1}));
    EXPECT_EQ(found[1], (Polynomial{2, 0, 1}));
}

TEST(Factor, RejectsHighDegree) {
    EXPECT_THROW(factor_over_Q(Polynomial::monomial(Rational(1), 9) + Polynomial{1}), UnsupportedDegree);
}

TEST(Factor, RandomProductsReexpandAndFactorsAreIrreducible) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> coef(-4, 4), deg(1, 3), lead(1, 3);
    for (int trial = 0; trial < 80; ++trial) {
        Polynomial p = Polynomial::constant(Rational(lead(rng), lead(rng)));
        std::size_t total = 0;
        while (true) {
            long d = deg(rng);
            if (total + static_cast<std::size_t>(d) > 8) break;
            std::vector<Rational> c;
            for (long i = 0; i < d; ++i) c.emplace_back(coef(rng));
            c.emplace_back(lead(rng));
            Polynomial g(c);
            p *= g;
            total += static_cast<std::size_t>(d);
            if (total >= 5 && trial % 2) break;
        }
        auto f = factor_over_Q(p);
        EXPECT_EQ(f.expand(), p) << p.str();
        for (const auto& fp : f.factors) {
            EXPECT_TRUE(fp.factor.is_monic());
            if (fp.factor.deg() > 1) EXPECT_FALSE(has_proper_factor_by_roots(fp.factor)) << fp.factor.str();
        }
    }
}

TEST(Factor, CyclotomicAndRationalRoots) {
    // x^8 - 1 = (x-1)(x+1)(x^2+1)(x^4+1)
    auto f = factor_over_Q(Polynomial{-1, 0, 0, 0, 0, 0, 0, 0, 1});
    ASSERT_EQ(f.factors.size(), 4u);
    EXPECT_EQ(f.factors[3].factor, (Polynomial{1, 0, 0, 0, 1}));
    // (2x - 1)(3x + 2) has rational, non-integral roots
    auto g = factor_over_Q(Polynomial{-1, 2} * Polynomial{2, 3});
    ASSERT_EQ(g.factors.size(), 2u);
    EXPECT_EQ(g.factors[0].factor, Polynomial::linear_root(Rational(1, 2)));
    EXPECT_EQ(g.factors[1].factor, Polynomial::linear_root(Rational(-2, 3)));
}

TEST(Sturm, SpecExamples) {
    EXPECT_EQ(sturm_count(Polynomial{-2, 0, 1}, Rational(0), Rational(2)), 1);
    EXPECT_EQ(sturm_count(Polynomial{2, 4, 1}, Rational(-2), Rational(2)), 1);
    EXPECT_EQ(sturm_count(Polynomial{-2, 1}, Rational(3), Rational(4)), 0);
    EXPECT_THROW(sturm_count(Polynomial{-2, 1}, Rational(2), Rational(4)), EndpointRoot);
}

TEST(Sturm, QuadraticFormulaOracle) {
    double r1 = -2 + std::sqrt(2.0), r2 = -2 - std::sqrt(2.0);
    int expected = (r1 > -2 && r1 < 2) + (r2 > -2 && r2 < 2);
    EXPECT_EQ(sturm_count(Polynomial{2, 4, 1}, Rational(-2), Rational(2)), expected);
}

TEST(Sturm, RandomPolynomialsAgreeWithFloatRoots) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> coef(-9, 9), deg(1, 6);
    int done = 0;
    while (done < 200) {
        long d = deg(rng);
        std::vector<Rational> c;
        for (long i = 0; i < d; ++i) c.emplace_back(coef(rng));
        long lead = coef(rng);
        if (lead == 0) continue;
        c.emplace_back(lead);
        Polynomial p(c);
        if (gcd(p, p.derivative()).deg() > 0) continue;  // squarefree only
        Rational b = cauchy_bound(p) + Rational(1);
        int exact = sturm_count(p, -b, b);
        int fl = 0;
        for (auto z : float_roots(p)) fl += std::abs(z.imag()) < 1e-7;
        EXPECT_EQ(exact, fl) << p.str();
        EXPECT_EQ(static_cast<int>(isolate_real_roots(p).size()), exact);
        ++done;
    }
}

TEST(Sturm, IsolationWidthAndOrder) {
    Polynomial p{1, 4, 4, 4, 1};
    auto ivs = isolate_real_roots(p);
    ASSERT_EQ(ivs.size(), 2u);
    for (const auto& iv : ivs) {
        EXPECT_LT(iv.width(), pow2(-64));
        EXPECT_EQ(sturm_count(p, iv.lo, iv.hi), 1);
    }
    EXPECT_LT(ivs[0].hi, ivs[1].lo);
    // Rational roots are enclosed strictly.
    auto r = isolate_real_roots(Polynomial{-1, 0, 1} * Polynomial{0, 1});
    ASSERT_EQ(r.size(), 3u);
    EXPECT_LT(r[1].lo, Rational(0));
    EXPECT_GT(r[1].hi, Rational(0));
}

TEST(Smith, SpecExamples) {
    IntMatrix one(1, 1);
    one(0, 0) = 1;
    EXPECT_EQ(smith_normal_form(one).D, one);

    IntMatrix d23(2, 2);
    d23(0, 0) = 2;
    d23(1, 1) = 3;
    auto s = smith_normal_form(d23);
    EXPECT_EQ(s.diagonal(), (std::vector<BigInt>{1, 6}));
    EXPECT_EQ(s.U * d23 * s.V, s.D);

    IntMatrix a1(1, 1);
    a1(0, 0) = 2 - 1;
    EXPECT_EQ(smith_normal_form(a1).diagonal(), (std::vector<BigInt>{1}));
}

TEST(Smith, RandomMatricesAreExact) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> entry(-9, 9), dim(1, 6);
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
        if (trial % 3 == 0) c = r;
        IntMatrix m(r, c);
        for (auto& x : m.a) x = entry(rng);
        auto s = smith_normal_form(m);
        ASSERT_EQ(s.U * m * s.V, s.D) << "trial " << trial;
        EXPECT_EQ(abs(s.U.determinant()), 1);
        EXPECT_EQ(abs(s.V.determinant()), 1);
        for (std::size_t i = 0; i < s.D.rows; ++i)
            for (std::size_t j = 0; j < s.D.cols; ++j)
                if (i != j) EXPECT_EQ(s.D(i, j), 0);
        auto d = s.diagonal();
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            EXPECT_GE(d[i], 0);
            if (d[i] == 0) EXPECT_EQ(d[i + 1], 0);
            else EXPECT_EQ(d[i + 1] % d[i], 0);
        }
        if (r == c) {
            BigInt prod = 1;
            for (const auto& x : d) prod *= x;
            EXPECT_EQ(prod, abs(m.determinant()));
        }
    }
}

class NumberFieldTest : public ::testing::Test {
protected:
    void SetUp() override {
        Polynomial m{1, 4, 4, 4, 1};
        auto roots = isolate_real_roots(m);
        paper_ = make_field(m, roots.back());
        golden_ = make_field(Polynomial{-1, -1, 1}, {Rational(1), Rational(2)});
    }

    NumberFieldElement random_element(const FieldPtr& f, std::mt19937_64& rng) {
        std::vector<Rational> c;
        for (std::size_t i = 0; i < f->degree(); ++i) c.push_back(random_rational(rng, 20));
        return NumberFieldElement(f, Polynomial(c));
    }

    FieldPtr paper_;
    FieldPtr golden_;
};

TEST_F(NumberFieldTest, RejectsBadFields) {
    EXPECT_THROW(make_field(Polynomial{-1, 0, 1}, {Rational(0), Rational(2)}), InputError);
    EXPECT_THROW(make_field(Polynomial{-2, 0, 1}, {Rational(-2), Rational(2)}), InputError);
}

TEST_F(NumberFieldTest, GoldenRatio) {
    auto l = NumberFieldElement::generator(golden_);
    EXPECT_NEAR(l.to_double(), (1 + std::sqrt(5.0)) / 2, 1e-15);
    EXPECT_EQ(l * l, l + NumberFieldElement(golden_, Rational(1)));
    EXPECT_EQ(l.inverse(), l - NumberFieldElement(golden_, Rational(1)));
    EXPECT_EQ(l.sign(), 1);
    EXPECT_EQ((NumberFieldElement(golden_, Rational(1)) - l).sign(), -1);
}

TEST_F(NumberFieldTest, RandomArithmeticLaws) {
    std::mt19937_64 rng(500);
    for (const auto& f : {paper_, golden_}) {
        for (int trial = 0; trial < 500; ++trial) {
            auto a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
            EXPECT_EQ((a * b) * c, a * (b * c));
            if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), NumberFieldElement(f, Rational(1)));
            long double prod = a.to_long_double() * b.to_long_double();
            long double emb = (a * b).to_long_double();
            long double scale = std::max(std::abs(prod), 1e-300L);
            EXPECT_LE(std::abs(emb - prod) / scale, 1e-12L);
            EXPECT_EQ((a - b).sign(), a.to_long_double() > b.to_long_double() ? 1 : -1);
        }
    }
}

TEST_F(NumberFieldTest, MixingFieldsThrows) {
    auto a = NumberFieldElement::generator(paper_);
    auto b = NumberFieldElement::generator(golden_);
    EXPECT_THROW(a + b, FieldMismatch);
    EXPECT_THROW((void)(a == b), FieldMismatch);
    FieldMatrix m{{a, b}, {a, a}};
    EXPECT_THROW(field_solve(m), FieldMismatch);
}

TEST_F(NumberFieldTest, FieldSolveExamples) {
    auto two = make_field(Polynomial{-2, 1}, {Rational(1), Rational(3)});
    auto l2 = NumberFieldElement::generator(two);
    auto k1 = field_solve(shifted(RationalMatrix::from_rows({{2}}), l2));
    ASSERT_EQ(k1.size(), 1u);
    EXPECT_EQ(k1[0][0], NumberFieldElement(two, Rational(1)));

    auto fib = RationalMatrix::from_rows({{0, 1}, {1, 1}});
    auto l = NumberFieldElement::generator(golden_);
    auto m = shifted(fib.transpose(), l);
    auto k = field_solve(m);
    ASSERT_EQ(k.size(), 1u);
    for (const auto& x : m * k[0]) EXPECT_TRUE(x.is_zero());
    // Normalized by its first entry it is (1, λ).
    auto first = k[0][0];
    EXPECT_EQ(k[0][1] / first, l);

    FieldMatrix inv{{l, NumberFieldElement(golden_, Rational(1))},
                    {NumberFieldElement(golden_, Rational(0)), l}};
    EXPECT_TRUE(field_solve(inv).empty());
}
