#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "solvact/dynamics/action.hpp"
#include "solvact/dynamics/audit.hpp"
#include "solvact/errors.hpp"

using namespace solvact;
using namespace solvact::dynamics;
using exact::Rational;

namespace {

RationalMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
    return RationalMatrix::from_rows(rows);
}

const Chart kLogistic(ChartKind::logistic);
const Chart kFlat(ChartKind::mt_flat);

GroupElement elem(long k, std::vector<long> v) {
    GroupElement g{k, {}};
    for (long x : v) g.v.emplace_back(x);
    return g;
}

}  // namespace

TEST(FiniteDifference, RichardsonAccuracy) {
    EXPECT_NEAR(fd_derivative([](double x) { return std::exp(x); }, 0.3), std::exp(0.3), 1e-10);
    EXPECT_NEAR(fd_derivative([](double x) { return std::sin(3 * x); }, 0.7), 3 * std::cos(2.1), 1e-9);
}

TEST(IntervalMapTest, ComposeInverseIterate) {
    IntervalMap f = logistic_flow(0.3);
    IntervalMap g = sine_perturbation({0.5, -0.5}, 0.2);
    IntervalMap fg = compose(f, g);
    for (double x : interior_grid(0, 1, 50)) {
        EXPECT_NEAR(fg(x), f(g(x)), 1e-15);
        EXPECT_NEAR(g.inverse(g(x)), x, 1e-14);
        EXPECT_NEAR(fg.inverse(fg(x)), x, 1e-13);
        EXPECT_NEAR(iterate(f, 3)(x), logistic_flow(0.9)(x), 1e-14);
        EXPECT_NEAR(iterate(f, -2)(x), logistic_flow(-0.6)(x), 1e-14);
        EXPECT_NEAR(fg.derivative(x), f.derivative(g(x)) * g.derivative(x), 1e-14);
    }
    EXPECT_TRUE(check_map(fg).ok());
}

TEST(IntervalMapTest, CheckMapFlagsViolations) {
    IntervalMap bad([](double x) { return x * x * (3 - 2 * x) * 0.5 + 0.25 * x; }, Domain::unit_interval,
                    "bad");
    EXPECT_FALSE(check_map(bad).ok());
    IntervalMap lift([](double x) { return x + 0.1 + 0.05 * std::sin(2 * std::numbers::pi * x); },
                     Domain::circle_lift, "lift");
    EXPECT_TRUE(check_map(lift).ok());
    IntervalMap notlift([](double x) { return 1.5 * x; }, Domain::circle_lift, "scale");
    EXPECT_FALSE(check_map(notlift).ok());
}

TEST(ChartTest, RoundTripAndMonotone) {
    for (const Chart& c : {kLogistic, kFlat}) {
        double prev = -INFINITY;
        for (double x : interior_grid(0, 1, 2000)) {
            double u = c.inverse(x);
            if (std::isfinite(u)) EXPECT_GT(u, prev);
            prev = u;
            // Deep in the flat tails u leaves binary64 range; there the
            // identity is checked through the log form instead.
            if (std::isfinite(u)) {
                EXPECT_NEAR(c.forward(u), x, 1e-10) << c.name() << " x=" << x;
            } else {
                EXPECT_NEAR(c.conjugate_affine(1.0, 0.0, x), x, 1e-12) << c.name() << " x=" << x;
            }
        }
        for (double u : {-30.0, -3.0, -0.2, 0.0, 0.4, 5.0, 40.0}) {
            EXPECT_NEAR(c.derivative(u), fd_derivative([&](double v) { return c.forward(v); }, u),
                        1e-9 * std::max(1.0, c.derivative(u)));
        }
    }
}

TEST(ChartTest, FlatTailsMatchDirectEvaluation) {
    // Where the chart coordinate is still representable both routes must agree.
    for (double x : {1e-3, 5e-3, 0.02, 0.98, 0.995, 0.999}) {
        for (auto [s, o] : {std::pair{2.0, 0.0}, {2.0, 1.5}, {0.5, -3.0}, {1.0, 1.0}}) {
            double direct = kFlat.forward(s * kFlat.inverse(x) + o);
            EXPECT_NEAR(kFlat.conjugate_affine(s, o, x), direct, 1e-12);
        }
    }
}

TEST(ChartConjugate, HomothetyFixedPointAndMultiplier) {
    auto rep = affine::synthesize(mat({{2}}));
    auto act = chart_conjugate(rep, kLogistic);
    IntervalMap a = act.a();
    EXPECT_NEAR(interior_fixed_point(a), kLogistic.forward(0), 1e-13);
    EXPECT_NEAR(fd_derivative([&](double x) { return a(x); }, 0.5), 2.0, 1e-8);
}

TEST(ChartConjugate, TranslationMovesEverything) {
    auto rep = affine::synthesize(mat({{2}}));
    for (const Chart& c : {kLogistic, kFlat}) {
        IntervalMap b = chart_conjugate(rep, c).b(0);
        // Flat germs: near the endpoints the displacement drops below the
        // binary64 spacing, so sample where it is still resolvable.
        for (double x : interior_grid(0.03, 0.97, 1000)) EXPECT_GT(b(x) - x, 0) << c.name();
        EXPECT_THROW(interior_fixed_point(b), NoInteriorFixedPoint);
    }
}

TEST(ChartConjugate, BaumslagSolitarRelation) {
    auto rep = affine::synthesize(mat({{2}}));
    auto grid = interior_grid(0, 1, 10000);
    for (const Chart& c : {kLogistic, kFlat}) {
        auto act = chart_conjugate(rep, c);
        auto r = relation_residuals(act, grid);
        ASSERT_EQ(r.size(), 1u);
        EXPECT_LT(r[0].residual, 1e-9) << c.name();
    }
}

TEST(ChartConjugate, CorpusRelationsAndMapInvariants) {
    for (auto a : {mat({{3}}), mat({{0, 1}, {1, 1}}), mat({{2, 1}, {1, 1}}),
                   mat({{0, 0, 1}, {1, 0, 1}, {0, 1, 0}})}) {
        auto rep = affine::synthesize(a);
        for (const Chart& c : {kLogistic, kFlat}) {
            auto act = chart_conjugate(rep, c);
            EXPECT_LT(max_residual(relation_residuals(act, interior_grid(0, 1, 2000))), 1e-8);
            EXPECT_TRUE(check_map(act.a()).ok());
            for (std::size_t i = 0; i < act.dim(); ++i) EXPECT_TRUE(check_map(act.b(i)).ok());
        }
    }
}

TEST(ChartConjugate, FlatChartHasUnitEndpointDerivatives) {
    auto rep = affine::synthesize(mat({{2}}));
    auto act = chart_conjugate(rep, kFlat);
    const double h = std::ldexp(1.0, -30);
    for (const auto& g : {elem(1, {0}), elem(-1, {0}), elem(0, {1}), elem(2, {-3})}) {
        IntervalMap f = act.element(g);
        EXPECT_NEAR(f(h) / h, 1.0, 1e-6);
        EXPECT_NEAR((1 - f(1 - h)) / h, 1.0, 1e-6);
    }
    // The logistic conjugate of M_2 is not tangent to the identity at 0.
    IntervalMap a = chart_conjugate(rep, kLogistic).a();
    EXPECT_LT(a(h) / h, 1e-6);
}

TEST(MultiplierAudit, AcceptanceCasesUnderBothCharts) {
    struct Case {
        RationalMatrix a;
        long k;
        double expected;
    };
    const double phi = (1 + std::sqrt(5.0)) / 2;
    std::vector<Case> cases{{mat({{2}}), 1, 2.0},
                            {mat({{3}}), 1, 3.0},
                            {mat({{2}}), 2, 4.0},
                            {mat({{0, 1}, {1, 1}}), 1, phi}};
    for (const auto& c : cases) {
        auto rep = affine::synthesize(c.a);
        std::vector<double> measured;
        for (const Chart& ch : {kLogistic, kFlat}) {
            GroupElement g{c.k, exact::RationalVector(rep.ctx.dim())};
            auto r = multiplier_audit(chart_conjugate(rep, ch), g, rep);
            EXPECT_TRUE(r.pass) << ch.name() << " k=" << c.k << " measured " << r.measured;
            EXPECT_NEAR(r.expected, c.expected, 1e-12);
            measured.push_back(r.measured);
        }
        EXPECT_NEAR(measured[0], measured[1], 2e-6);
    }
}

TEST(MultiplierAudit, PowerTimesTranslation) {
    auto rep = affine::synthesize(mat({{0, 1}, {1, 1}}));
    const double phi = (1 + std::sqrt(5.0)) / 2;
    for (const Chart& ch : {kLogistic, kFlat}) {
        auto r = multiplier_audit(chart_conjugate(rep, ch), elem(2, {1, 0}), rep);
        EXPECT_TRUE(r.pass);
        EXPECT_NEAR(r.measured, phi * phi, 1e-6);
        auto r2 = multiplier_audit(chart_conjugate(rep, ch), elem(-1, {0, 2}), rep);
        EXPECT_NEAR(r2.measured, 1 / phi, 1e-6);
    }
    EXPECT_THROW(multiplier_audit(chart_conjugate(rep, kLogistic), elem(0, {1, 0}), rep),
                 NoInteriorFixedPoint);
}

TEST(CompositionEstimate, CalibrationSatisfiesTheRecursion) {
    for (double eta : {0.1, 0.5, 1.0}) {
        EXPECT_DOUBLE_EQ(calibrate_delta(1, eta, false), 0.5);
        for (std::size_t k = 2; k <= 8; ++k) {
            double d = calibrate_delta(k, eta, false);
            EXPECT_LE(d * (double(k) - 1 + eta / 2), eta / 2 * (1 + 1e-15));
            EXPECT_LE(d, calibrate_delta(k - 1, eta / 2, false));
            double m = calibrate_delta(k, eta, true);
            EXPECT_LE(m, d);
            EXPECT_LE(m / (1 - m), calibrate_delta(k, eta / 2, false) * (1 + 1e-15));
            EXPECT_LE(m * (double(k) + eta), eta / 2 * (1 + 1e-15));
        }
    }
}

TEST(CompositionEstimate, SingleMapIsExact) {
    IntervalMap f = sine_perturbation({1.0}, 0.1);
    auto r = composition_estimate_test({f}, {1}, 0.3, 0.5, 0.5);
    EXPECT_EQ(r.residual, 0.0);
    EXPECT_TRUE(r.pass);
}

TEST(CompositionEstimate, AlternatingMapAndInverse) {
    double eta = 0.5;
    double delta = calibrate_delta(4, eta, true);
    IntervalMap f = sine_perturbation({0.6, -0.4}, 0.9 * delta);
    for (double x : interior_grid(0, 1, 100)) {
        auto r = composition_estimate_test({f, f, f, f}, {1, -1, 1, -1}, x, eta, delta);
        EXPECT_TRUE(r.pass) << x;
        EXPECT_LE(r.residual, 1e-15);
    }
}

TEST(CompositionEstimate, RejectsMapsOutsideTheNeighbourhood) {
    IntervalMap f = sine_perturbation({1.0}, 0.3);
    EXPECT_THROW(composition_estimate_test({f, f}, {1, 1}, 0.5, 0.5, 0.1), PreconditionError);
}

TEST(CompositionEstimate, RandomizedHarnessHasNoViolations) {
    auto st = composition_harness(1000, 20240601, 0.5, 6);
    EXPECT_EQ(st.trials, 1000u);
    EXPECT_EQ(st.violations, 0u);
    EXPECT_LT(st.worst_ratio, 1.0);
    EXPECT_GT(st.worst_ratio, 0.0);
}

TEST(CompositionEstimate, FlowRoots) {
    for (std::size_t q : {2u, 3u, 5u}) {
        auto r = flow_root_test(q, 100);
        EXPECT_EQ(r.violations, 0u) << q;
        EXPECT_EQ(r.samples, 100u);
        EXPECT_LT(r.worst_ratio, 1.0);
    }
}

TEST(Displacement, TrivialTranslationActionIsDegenerate) {
    auto rep = affine::synthesize(mat({{2}}));
    Action act = chart_conjugate(rep, kLogistic);
    auto base = act.element;
    act.element = [base](const GroupElement& g) {
        if (g.k == 0) return identity_map(Domain::unit_interval);
        return base(g);
    };
    EXPECT_THROW(displacement_track(act, 0.3, 5), DegenerateDisplacement);
}

TEST(Displacement, FlatChartResidualDecaysTowardZero) {
    // The smaller eigenvalue makes a^-1 expand the chart coordinate, so
    // a-preimages run into the endpoint 0.
    auto a = mat({{2, 1}, {1, 1}});
    auto cls = spectral::classify(a);
    ASSERT_EQ(cls.positive_real_eigenvalues.size(), 2u);
    auto rep = affine::synthesize(a, cls.positive_real_eigenvalues.front());
    ASSERT_LT(rep.lambda_approx, 1.0);
    auto act = chart_conjugate(rep, kFlat);
    auto tr = displacement_track(act, kFlat.forward(-20), 12);
    EXPECT_NEAR(tr.endpoint_derivative, 1.0, 1e-6);
    EXPECT_LT(tr.residuals[10], tr.residuals[1]);
    for (std::size_t k = 1; k + 1 < tr.points.size(); ++k) EXPECT_LT(tr.points[k].x, tr.points[k - 1].x);
    // Translation vectors of an affine-chart action point along t, an eigenvector of A^T.
    EXPECT_LT(misalignment(tr.directions.back(), rep.t_approx), 1e-9);
}

TEST(Displacement, FlatChartForwardFormTowardOne) {
    auto rep = affine::synthesize(mat({{2}}));
    auto act = chart_conjugate(rep, kFlat);
    TrackOptions opts;
    opts.toward_zero = false;
    auto tr = displacement_track(act, kFlat.forward(20), 12, opts);
    EXPECT_LT(tr.residuals[10], tr.residuals[1]);
    EXPECT_NEAR(tr.endpoint_derivative, 1.0, 1e-6);
    std::string csv = tr.to_csv();
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,x,delta_1,norm_star,residual");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 14);
}

TEST(Conjugacy, AffineActionIsItsOwnCoordinate) {
    auto rep = affine::synthesize(mat({{2}}));
    auto act = affine_action(rep);
    ConjugacyOptions opts;
    opts.base_point = 0;
    auto F = conjugacy_extract(act, rep, opts);
    EXPECT_TRUE(F.monotone);
    F.pin(F.xs[10], F.xs[10], F.xs[F.xs.size() - 10], F.xs[F.xs.size() - 10]);
    for (double x : interior_grid(-7, 7, 1000)) EXPECT_NEAR(F(x), x, 1e-3);
    EXPECT_TRUE(F.plateaus.empty());
}

TEST(Conjugacy, LogisticChartRecoversTheChart) {
    for (auto a : {mat({{2}}), mat({{3}}), mat({{0, 1}, {1, 1}})}) {
        auto rep = affine::synthesize(a);
        auto act = chart_conjugate(rep, kLogistic);
        auto F = conjugacy_extract(act, rep);
        EXPECT_TRUE(F.monotone);
        std::size_t i = F.xs.size() / 4, j = 3 * F.xs.size() / 4;
        F.pin(F.xs[i], kLogistic.inverse(F.xs[i]), F.xs[j], kLogistic.inverse(F.xs[j]));
        double worst = 0;
        for (double x : interior_grid(kLogistic.forward(-6), kLogistic.forward(6), 1000)) {
            worst = std::max(worst, std::abs(F(x) - kLogistic.inverse(x)));
        }
        EXPECT_LT(worst, 1e-3);
        EXPECT_TRUE(F.plateaus.empty());
    }
}

TEST(Conjugacy, UnfaithfulRepresentationIsRejected) {
    auto rep = affine::synthesize(mat({{2, 0}, {0, 2}}));
    EXPECT_THROW(conjugacy_extract(chart_conjugate(rep, kLogistic), rep), UnsupportedStructure);
}
