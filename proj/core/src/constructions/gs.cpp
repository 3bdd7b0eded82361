#include "solvact/constructions/gs.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <random>
#include <string>

#include "solvact/errors.hpp"

namespace solvact::constructions {

namespace {

std::vector<SplineKnot> recipe_knots(long n, const GSSpec& spec) {
    const double nd = static_cast<double>(n);
    switch (spec.kind) {
        case GSSpec::Kind::linear:
            return {{0, 0, nd}, {1, nd, nd}};
        case GSSpec::Kind::two_fixed:
            return {{0, 0, 0.5}, {0.5, 0.5, 2}, {1, nd, 0.5}};
        case GSSpec::Kind::spline:
            return spec.knots;
    }
    return {};
}

void validate(long n, const std::vector<SplineKnot>& k) {
    if (n < 2) throw PreconditionError("base map needs n >= 2, got " + std::to_string(n));
    if (k.size() < 2) throw PreconditionError("base map needs at least two knots");
    if (k.front().x != 0 || k.back().x != 1)
        throw PreconditionError("base map knots must start at 0 and end at 1");
    if (k.front().y != 0) throw PreconditionError("f(0) = 0 fails for the base map");
    if (k.back().y != static_cast<double>(n))
        throw PreconditionError("f(x+1) = f(x) + " + std::to_string(n) + " fails: f(1) = " +
                                std::to_string(k.back().y));
    if (k.front().slope != k.back().slope)
        throw PreconditionError("Df(0+) differs from Df(1-): the extension is not C1");
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
        double h = k[i + 1].x - k[i].x;
        double dy = k[i + 1].y - k[i].y;
        if (!(h > 0)) throw PreconditionError("base map knots must increase");
        if (!(dy > 0)) throw PreconditionError("base map values must increase");
        double sec = dy / h;
        double al = k[i].slope / sec;
        double be = k[i + 1].slope / sec;
        if (!(k[i].slope > 0) || !(k[i + 1].slope > 0) || al * al + be * be > 9)
            throw PreconditionError("base map spline is not monotone on knot interval " +
                                    std::to_string(i));
    }
}

}  // namespace

GSBase::GSBase(long n, const GSSpec& spec)
    : n_(n), linear_(spec.kind == GSSpec::Kind::linear), knots_(recipe_knots(n, spec)) {
    validate(n_, knots_);

    const std::size_t grid = 4096;
    std::vector<double> xs(grid), vs(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        xs[i] = static_cast<double>(i) / grid;
        vs[i] = spline(xs[i]) - xs[i];
    }
    auto push = [&](double r) {
        if (fixed_.empty() || r - fixed_.back() > 1e-12) fixed_.push_back(r);
    };
    for (std::size_t i = 0; i < grid; ++i) {
        if (vs[i] == 0) {
            push(xs[i]);
            continue;
        }
        if (i + 1 == grid) break;
        double nv = vs[i + 1];
        if (nv != 0 && (vs[i] < 0) != (nv < 0)) {
            double lo = xs[i], hi = xs[i + 1];
            while (hi - lo > 1e-15) {
                double mid = 0.5 * (lo + hi);
                double m = spline(mid) - mid;
                if ((m < 0) == (vs[i] < 0)) lo = mid; else hi = mid;
            }
            push(0.5 * (lo + hi));
        }
    }
}

double GSBase::spline(double r) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), r,
                               [](double v, const SplineKnot& k) { return v < k.x; });
    std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
    if (i + 1 >= knots_.size()) return knots_.back().y;
    const SplineKnot& a = knots_[i];
    const SplineKnot& b = knots_[i + 1];
    double h = b.x - a.x;
    double t = (r - a.x) / h;
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * a.y + (t3 - 2 * t2 + t) * h * a.slope + (-2 * t3 + 3 * t2) * b.y +
           (t3 - t2) * h * b.slope;
}

double GSBase::spline_derivative(double r) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), r,
                               [](double v, const SplineKnot& k) { return v < k.x; });
    std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
    if (i + 1 >= knots_.size()) return knots_.back().slope;
    const SplineKnot& a = knots_[i];
    const SplineKnot& b = knots_[i + 1];
    double h = b.x - a.x;
    double t = (r - a.x) / h;
    double t2 = t * t;
    return ((6 * t2 - 6 * t) * a.y + (-6 * t2 + 6 * t) * b.y) / h + (3 * t2 - 4 * t + 1) * a.slope +
           (3 * t2 - 2 * t) * b.slope;
}

double GSBase::spline_inverse(double y) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), y,
                               [](double v, const SplineKnot& k) { return v < k.y; });
    std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
    if (i + 1 >= knots_.size()) return 1.0;
    if (y == knots_[i].y) return knots_[i].x;
    auto g = [&](double r) { return spline(r) - y; };
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(g, knots_[i].x, knots_[i + 1].x,
                                               boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (r.first + r.second);
}

double GSBase::operator()(double x) const {
    if (linear_) return static_cast<double>(n_) * x;
    double m = std::floor(x);
    return m * static_cast<double>(n_) + spline(x - m);
}

double GSBase::inverse(double y) const {
    const double nd = static_cast<double>(n_);
    if (linear_) return y / nd;
    double m = std::floor(y / nd);
    double r = y - m * nd;
    if (r >= nd) r = nd;
    if (r < 0) r = 0;
    return m + spline_inverse(r);
}

double GSBase::derivative(double x) const {
    if (linear_) return static_cast<double>(n_);
    return spline_derivative(x - std::floor(x));
}

double GSBase::power(long k, double x) const {
    if (linear_) return x * std::pow(static_cast<double>(n_), static_cast<double>(k));
    for (long i = 0; i < k; ++i) x = (*this)(x);
    for (long i = 0; i > k; --i) x = inverse(x);
    return x;
}

IntervalMap GSBase::map() const {
    auto self = std::make_shared<const GSBase>(*this);
    IntervalMap f([self](double x) { return (*self)(x); }, dynamics::Domain::line, "gs-base");
    f.with_derivative([self](double x) { return self->derivative(x); });
    f.with_inverse([self](double y) { return self->inverse(y); });
    return f;
}

double GSBase::lift_defect(std::size_t grid) const {
    double worst = 0;
    for (double x : dynamics::interior_grid(-4, 4, grid))
        worst = std::max(worst, std::abs((*this)(x + 1) - (*this)(x) - static_cast<double>(n_)));
    return worst;
}

double GSAction::theta_encoded(const BigInt& p, long q, double x) const {
    return base->power(-q, base->power(q, x) + p.get_d());
}

double GSAction::theta(const Rational& v, double x) const {
    const BigInt nn(n());
    BigInt den = v.denominator();
    BigInt rest = den;
    for (BigInt g = gcd(rest, nn); g != 1; g = gcd(rest, nn)) rest /= g;
    if (rest != 1)
        throw UnsupportedStructure(v.str() + " is not in Z[1/" + std::to_string(n()) + "]");
    long q = 0;
    BigInt pw = 1;
    while (pw % den != 0) {
        pw *= nn;
        ++q;
    }
    return theta_encoded(v.numerator() * (pw / den), q, x);
}

GSAction gs_build(long n, const GSSpec& spec) {
    auto base = std::make_shared<const GSBase>(n, spec);
    GSAction gs{base, Action{group::GroupContext(exact::RationalMatrix::from_rows({{n}})),
                             dynamics::Domain::line, "gs", {}}};
    GSAction self{base, gs.action};
    gs.action.element = [self](const group::GroupElement& g) {
        const Rational v = g.v.at(0);
        const long k = g.k;
        self.theta(v, 0.0);  // rejects v outside Z[1/n] up front
        IntervalMap m([self, v, k](double x) { return self.base->power(k, self.theta(v, x)); },
                      dynamics::Domain::line, "gs:" + group::to_string(g));
        m.with_inverse([self, v, k](double y) { return self.theta(-v, self.base->power(-k, y)); });
        return m;
    };
    return gs;
}

double gs_well_definedness(const GSAction& gs, std::size_t trials, std::uint64_t seed,
                           const std::vector<double>& grid) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> qd(0, 6), pd(-64, 64);
    double worst = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        long q = qd(rng);
        BigInt p(pd(rng));
        BigInt np = p * gs.n();
        for (double x : grid)
            worst = std::max(worst, std::abs(gs.theta_encoded(np, q + 1, x) - gs.theta_encoded(p, q, x)));
    }
    return worst;
}

double gs_homomorphism(const GSAction& gs, std::size_t pairs, std::uint64_t seed,
                       const std::vector<double>& grid) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> kd(-3, 3), qd(0, 6), pd(-64, 64);
    auto draw = [&]() {
        long k = kd(rng);
        long q = qd(rng);
        long p = pd(rng);
        BigInt den = 1;
        for (long i = 0; i < q; ++i) den *= gs.n();
        return group::GroupElement{k, {Rational(BigInt(p), den)}};
    };
    double worst = 0;
    const auto& ctx = gs.action.ctx;
    for (std::size_t t = 0; t < pairs; ++t) {
        auto g1 = draw();
        auto g2 = draw();
        IntervalMap m1 = gs.action.element(g1);
        IntervalMap m2 = gs.action.element(g2);
        IntervalMap m12 = gs.action.element(group::multiply(ctx, g1, g2));
        for (double x : grid) worst = std::max(worst, std::abs(m12(x) - m1(m2(x))));
    }
    return worst;
}

}  // namespace solvact::constructions
