#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "solvact/errors.hpp"
#include "solvact/spectral/spectral.hpp"

using namespace solvact;
using namespace solvact::spectral;

namespace {

RationalMatrix paper4() {
    return RationalMatrix::from_rows({{0, 0, 0, -1}, {1, 0, 0, -4}, {0, 1, 0, -4}, {0, 0, 1, -4}});
}

/// sum q_k (x^2 + 1)^k x^(m - k): the polynomial q(x + 1/x) cleared by x^m.
Polynomial unsubstitute(const Polynomial& q, std::size_t m) {
    Polynomial acc;
    for (std::size_t k = 0; k < q.coeffs().size(); ++k) {
        acc += q.coeff(k) * exact::pow(Polynomial{1, 0, 1}, static_cast<unsigned>(k)) *
               Polynomial::monomial(Rational(1), m - k);
    }
    return acc;
}

bool float_hyperbolic(const RationalMatrix& a, bool& borderline) {
    Eigen::MatrixXd m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).to_double();
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    bool hyp = true;
    borderline = false;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        double r = std::abs(es.eigenvalues()(i));
        if (std::abs(r - 1) <= 1e-6) {
            borderline = true;
            hyp = false;
        }
    }
    return hyp;
}

}  // namespace

TEST(Classify, PaperMatrix) {
    auto c = classify(paper4());
    EXPECT_EQ(c.charpoly, (Polynomial{1, 4, 4, 4, 1}));
    EXPECT_TRUE(c.irreducible_over_Q);
    EXPECT_FALSE(c.hyperbolic);
    EXPECT_EQ(c.profile.reciprocal_part, c.charpoly);
    EXPECT_EQ(c.profile.y_polynomial, (Polynomial{2, 4, 1}));
    EXPECT_EQ(c.profile.roots_in_open_band, 1);
    EXPECT_EQ(unsubstitute(c.profile.y_polynomial, 2), c.charpoly);
    ASSERT_TRUE(c.unit_circle_factor.has_value());
    EXPECT_EQ(*c.unit_circle_factor, c.charpoly);
    // Real roots are -2 ± √3 ... both negative.
    EXPECT_FALSE(c.has_positive_real_eigenvalue);
    EXPECT_FALSE(c.chosen_lambda.has_value());
}

TEST(Classify, SmallExamples) {
    auto two = classify(RationalMatrix::from_rows({{2}}));
    EXPECT_TRUE(two.hyperbolic);
    ASSERT_TRUE(two.chosen_lambda.has_value());
    EXPECT_EQ(two.chosen_lambda->minpoly, (Polynomial{-2, 1}));
    EXPECT_DOUBLE_EQ(two.chosen_lambda->value, 2.0);

    auto rot = classify(RationalMatrix::from_rows({{0, -1}, {1, 0}}));
    EXPECT_FALSE(rot.hyperbolic);
    EXPECT_FALSE(rot.has_positive_real_eigenvalue);

    EXPECT_THROW(classify(RationalMatrix::from_rows({{1, 1}, {1, 1}})), SingularMatrix);
    EXPECT_THROW(classify(RationalMatrix(1, 2)), DimensionError);
}

TEST(Classify, LambdaChoicePrefersLargestNotOne) {
    auto c = classify(RationalMatrix::diagonal({Rational(1), Rational(3), Rational(1, 2)}));
    ASSERT_TRUE(c.chosen_lambda.has_value());
    EXPECT_EQ(c.chosen_lambda->minpoly, (Polynomial{-3, 1}));
    EXPECT_EQ(c.positive_real_eigenvalues.size(), 3u);
    EXPECT_TRUE(c.profile.root_at_one);
    EXPECT_FALSE(c.hyperbolic);

    auto only_one = classify(RationalMatrix::diagonal({Rational(1), Rational(-2)}));
    ASSERT_TRUE(only_one.chosen_lambda.has_value());
    EXPECT_EQ(only_one.chosen_lambda->minpoly, (Polynomial{-1, 1}));
}

TEST(Classify, FibonacciChoosesGoldenRatio) {
    auto c = classify(RationalMatrix::from_rows({{0, 1}, {1, 1}}));
    ASSERT_TRUE(c.chosen_lambda.has_value());
    EXPECT_EQ(c.chosen_lambda->minpoly, (Polynomial{-1, -1, 1}));
    EXPECT_NEAR(c.chosen_lambda->value, (1 + std::sqrt(5.0)) / 2, 1e-15);
    EXPECT_TRUE(c.hyperbolic);
}

TEST(Classify, AgreesWithFloatSolverOnRandomIntegerMatrices) {
    std::mt19937_64 rng(300);
    std::uniform_int_distribution<long> entry(-5, 5), dim(1, 4);
    int done = 0, disagreements = 0;
    while (done < 300) {
        std::size_t n = static_cast<std::size_t>(dim(rng));
        RationalMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational(entry(rng));
        if (a.determinant().is_zero()) continue;
        auto c = classify(a);
        bool borderline = false;
        bool fl = float_hyperbolic(a, borderline);
        if (c.hyperbolic != fl) {
            ++disagreements;
            EXPECT_TRUE(borderline) << "exact and float disagree away from the unit circle";
        }
        EXPECT_EQ(classify(a.inverse()).hyperbolic, c.hyperbolic);
        ++done;
    }
    RecordProperty("disagreements", disagreements);
}

TEST(Splitting, PaperMatrix) {
    auto s = splitting(paper4());
    EXPECT_EQ(s.stable.size(), 1u);
    EXPECT_EQ(s.unstable.size(), 1u);
    EXPECT_EQ(s.central.size(), 2u);
    EXPECT_EQ(s.central_star.size(), 2u);
    EXPECT_LE(s.invariance_residual(paper4()), 1e-9);
    EXPECT_LE(s.reconstruction_residual(), 1e-9);

    EXPECT_NEAR(s.norm_star(s.central_star[0]), 0.0, 1e-9);
    // Numerical E^c_* is invariant to rounding: one step stays inside.
    Vec img = mat_vec(paper4().transpose(), s.central_star[0]);
    EXPECT_LE(norm(s.project_stable(img)) + norm(s.project_unstable(img)), 1e-9);
}

TEST(ExactCentral, PaperMatrixOrbitIsBounded) {
    auto c = exact_central_star(paper4());
    EXPECT_EQ(c.y.minpoly, (Polynomial{2, 4, 1}));
    EXPECT_NEAR(c.y.value, -2 + std::sqrt(2.0), 1e-15);
    ASSERT_EQ(c.basis.size(), 2u);
    RationalMatrix a = paper4();
    RationalMatrix ainv = a.inverse();
    for (const auto& u : c.basis) {
        // (A^T)^2 u - y A^T u + u = 0 exactly.
        auto y = exact::NumberFieldElement::generator(c.field);
        auto a1 = transpose_apply(a, u), a2 = transpose_apply(a, a1);
        for (std::size_t i = 0; i < 4; ++i) EXPECT_TRUE((a2[i] - y * a1[i] + u[i]).is_zero());

        auto nrm = [](const exact::FieldVector& v) {
            double s = 0;
            for (const auto& x : v) s += x.to_double() * x.to_double();
            return std::sqrt(s);
        };
        double n0 = nrm(u), worst = 0;
        auto fwd = u, bwd = u;
        for (int k = 1; k <= 60; ++k) {
            fwd = transpose_apply(a, fwd);
            bwd = transpose_apply(ainv, bwd);
            worst = std::max({worst, nrm(fwd) / n0, nrm(bwd) / n0});
        }
        EXPECT_LE(worst, 10.0);
        RecordProperty("orbit_ratio", std::to_string(worst));
    }
}

TEST(ExactCentral, RealUnitEigenvalueAndHyperbolic) {
    auto c = exact_central_star(RationalMatrix::diagonal({Rational(1), Rational(3)}));
    ASSERT_EQ(c.basis.size(), 1u);
    EXPECT_EQ(c.to_double()[0], (Vec{1.0, 0.0}));
    EXPECT_THROW(exact_central_star(RationalMatrix::from_rows({{2, 1}, {1, 1}})), UnsupportedStructure);
}

TEST(Splitting, DiagonalAndScalar) {
    auto s = splitting(RationalMatrix::from_rows({{2}}));
    EXPECT_EQ(s.unstable.size(), 1u);
    EXPECT_TRUE(s.stable.empty());
    EXPECT_TRUE(s.central.empty());

    auto d = splitting(RationalMatrix::diagonal({Rational(2), Rational(1, 2)}));
    ASSERT_EQ(d.unstable.size(), 1u);
    ASSERT_EQ(d.stable.size(), 1u);
    EXPECT_NEAR(std::abs(d.unstable[0][0]), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(d.stable[0][1]), 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(d.contraction, 0.5);
    EXPECT_DOUBLE_EQ(d.expansion, 2.0);
}

TEST(Splitting, DefectiveUnitBlockRejected) {
    EXPECT_THROW(splitting(RationalMatrix::from_rows({{1, 1}, {0, 1}})), UnsupportedStructure);
    // Semisimple repeated unit eigenvalue is fine.
    auto s = splitting(RationalMatrix::diagonal({Rational(1), Rational(1), Rational(3)}));
    EXPECT_EQ(s.central.size(), 2u);
}

TEST(Splitting, InvarianceOnRandomMatrices) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> entry(-4, 4);
    int done = 0;
    while (done < 50) {
        RationalMatrix a(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) a(i, j) = Rational(entry(rng));
        if (a.determinant().is_zero()) continue;
        SpectralSplit s;
        try {
            s = splitting(a);
        } catch (const UnsupportedStructure&) {
            continue;
        }
        EXPECT_LE(s.invariance_residual(a), 1e-9);
        ++done;
    }
}
