#include "solvact/constructions/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "solvact/constructions/bump_flow.hpp"
#include "solvact/errors.hpp"
#include "solvact/spectral/spectral.hpp"

namespace solvact::constructions {

namespace {

long double frac(long double x) { return x - std::floor(x); }

constexpr double kHuge = 1e250;

}  // namespace

class DenjoyData {
public:
    long double alpha = 0;
    long M = 0;
    std::size_t d = 0;
    double kappa = 0;                // density of the minimal set's Lebesgue part
    std::vector<double> theta;       // sorted θ values
    std::vector<long> n_of;          // gap index of sorted slot
    std::vector<double> start;       // x-start of sorted slot
    std::vector<double> len;         // length of sorted slot
    std::vector<double> pre;         // Σ lengths of earlier slots
    std::vector<std::size_t> slot;   // slot of n at n + M
    std::vector<double> times;       // (A^T)^{-n} s at (n + M) * d

    double theta_of(long n) const { return theta[slot[static_cast<std::size_t>(n + M)]]; }

    // X(θ) for θ in [0,1)
    double embed(double th) const {
        std::size_t j = static_cast<std::size_t>(std::lower_bound(theta.begin(), theta.end(), th) -
                                                 theta.begin());
        return kappa * th + (j < pre.size() ? pre[j] : pre.back() + len.back());
    }

    struct Where {
        bool in_gap = false;
        long n = 0;
        double r = 0;       // relative position in the gap
        double theta = 0;   // otherwise
    };

    Where locate(double y) const {
        Where w;
        auto it = std::upper_bound(start.begin(), start.end(), y);
        std::size_t j = it == start.begin() ? 0 : static_cast<std::size_t>(it - start.begin()) - 1;
        if (y < start[j] + len[j]) {
            w.in_gap = true;
            w.n = n_of[j];
            w.r = std::clamp((y - start[j]) / len[j], 0.0, 1.0);
            return w;
        }
        double th = theta[j] + (y - start[j] - len[j]) / kappa;
        double hi = j + 1 < theta.size() ? theta[j + 1] : 1.0;
        w.theta = std::clamp(th, static_cast<double>(theta[j]), hi);
        return w;
    }

    // g^{±1} on [0,1) with values in [-1, 2)
    double step(double y, int dir) const {
        Where w = locate(y);
        if (w.in_gap) {
            long m = w.n + dir;
            long double raw = static_cast<long double>(theta_of(w.n)) + dir * alpha;
            double shift = std::floor(static_cast<double>(raw));
            if (m >= -M && m <= M) {
                std::size_t j = slot[static_cast<std::size_t>(m + M)];
                return shift + start[j] + w.r * len[j];
            }
            return shift + embed(static_cast<double>(frac(raw)));
        }
        long double raw = w.theta + dir * alpha;
        double shift = std::floor(static_cast<double>(raw));
        return shift + embed(static_cast<double>(frac(raw)));
    }

    double flow(const std::vector<double>& h, double y) const {
        Where w = locate(y);
        if (!w.in_gap || w.n < -M || w.n > M) return y;
        const double* tv = &times[static_cast<std::size_t>(w.n + M) * d];
        double tau = 0;
        for (std::size_t i = 0; i < d; ++i)
            if (h[i] != 0) tau += tv[i] * h[i];
        if (std::isnan(tau) || tau == 0) return y;
        tau = std::clamp(tau, -kHuge, kHuge);
        std::size_t j = slot[static_cast<std::size_t>(w.n + M)];
        return start[j] + len[j] * (w.r + bump_flow_displacement(tau, w.r));
    }
};

namespace {

// Applies a map of [0,1) to the lift.
template <class F>
double lifted(double x, F&& f) {
    double fl = std::floor(x);
    double r = x - fl;
    if (r >= 1) {
        fl += 1;
        r = 0;
    }
    return fl + f(r);
}

std::vector<double> default_s(const RationalMatrix& a, std::string& choice) {
    try {
        auto ec = spectral::exact_central_star(a);
        choice = "central";
        return ec.to_double().front();
    } catch (const UnsupportedStructure&) {
    }
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
    std::vector<double> s;
    for (std::size_t i = 0; i < a.rows(); ++i) s.push_back(std::sqrt(static_cast<double>(primes[i % 16])));
    choice = "sqrt-primes";
    return s;
}

}  // namespace

CircleAction::Gap CircleAction::gap(long n) const {
    if (n < -data->M || n > data->M) throw InputError("gap index outside the explicit table");
    std::size_t j = data->slot[static_cast<std::size_t>(n + data->M)];
    return {n, data->start[j], data->len[j]};
}

std::vector<double> CircleAction::gap_samples(long gaps, std::size_t per_gap) const {
    std::vector<double> pts;
    for (long n = -gaps; n <= gaps; ++n) {
        Gap g = gap(n);
        for (double u : dynamics::interior_grid(0, 1, per_gap)) pts.push_back(g.start + u * g.length);
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

double CircleAction::lift_defect(std::size_t grid) const {
    double worst = 0;
    std::vector<IntervalMap> maps{action.a(), action.a_inv()};
    for (std::size_t i = 0; i < action.dim(); ++i) maps.push_back(action.b(i));
    for (const auto& m : maps)
        for (double x : dynamics::interior_grid(-2, 2, grid))
            worst = std::max(worst, std::abs(m(x + 1) - m(x) - 1));
    return worst;
}

CircleAction denjoy_circle_build(const RationalMatrix& a, const DenjoyOptions& opts) {
    if (!(opts.gap_budget > 0) || !(opts.gap_budget < 1))
        throw GeometryError("gap budget must lie in (0,1), the circumference is 1");
    if (opts.table_radius < 1) throw InputError("table radius must be positive");
    const double alpha = static_cast<double>(frac(opts.rotation));
    for (long q = 1; q <= 1000; ++q) {
        double qa = q * alpha;
        if (std::abs(qa - std::round(qa)) < 1e-9)
            throw PreconditionError("rotation target is rational (denominator " + std::to_string(q) +
                                    "): finite orbits, no Denjoy minimal set");
    }
    group::GroupContext ctx(a);
    const std::size_t d = ctx.dim();

    auto dd = std::make_shared<DenjoyData>();
    dd->alpha = alpha;
    dd->M = opts.table_radius;
    dd->d = d;
    const long M = dd->M;
    const double pi = std::acos(-1.0);
    const double c = opts.gap_budget / (pi / std::tanh(pi));
    const std::size_t count = static_cast<std::size_t>(2 * M + 1);

    std::vector<long double> th(count);
    std::vector<double> ln(count);
    for (long n = -M; n <= M; ++n) {
        th[static_cast<std::size_t>(n + M)] = frac(static_cast<long double>(n) * dd->alpha);
        ln[static_cast<std::size_t>(n + M)] = c / (static_cast<double>(n) * static_cast<double>(n) + 1);
    }
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return th[i] < th[j]; });

    double explicit_sum = 0;
    for (double l : ln) explicit_sum += l;
    dd->kappa = 1 - explicit_sum;
    dd->theta.resize(count);
    dd->n_of.resize(count);
    dd->start.resize(count);
    dd->len.resize(count);
    dd->pre.resize(count);
    dd->slot.resize(count);
    double acc = 0;
    for (std::size_t j = 0; j < count; ++j) {
        std::size_t i = order[j];
        dd->theta[j] = static_cast<double>(th[i]);
        dd->n_of[j] = static_cast<long>(i) - M;
        dd->len[j] = ln[i];
        dd->pre[j] = acc;
        dd->start[j] = dd->kappa * dd->theta[j] + acc;
        dd->slot[i] = j;
        acc += ln[i];
    }

    CircleAction out{dd, Action{ctx, dynamics::Domain::circle_lift, "denjoy", {}}, 0, 0, {}, {}};
    out.rotation = alpha;
    out.gap_budget = opts.gap_budget;
    if (opts.s) {
        if (opts.s->size() != d) throw DimensionError("flow-time vector s must have the dimension of A");
        out.s = *opts.s;
        out.s_choice = "configured";
    } else {
        out.s = default_s(a, out.s_choice);
    }

    // (A^T)^{-n} s for |n| <= M
    std::vector<std::vector<double>> at(d, std::vector<double>(d)), ati(d, std::vector<double>(d));
    RationalMatrix atr = a.transpose();
    RationalMatrix atri = atr.inverse();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            at[i][j] = atr(i, j).to_double();
            ati[i][j] = atri(i, j).to_double();
        }
    dd->times.assign(count * d, 0.0);
    auto put = [&](long n, const std::vector<double>& v) {
        std::copy(v.begin(), v.end(), dd->times.begin() + (n + M) * static_cast<long>(d));
    };
    auto run = [&](const std::vector<std::vector<double>>& m, int dir) {
        std::vector<double> v = out.s;
        for (long k = 1; k <= M; ++k) {
            std::vector<double> nx(d, 0.0);
            double big = 0;
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) nx[i] += m[i][j] * v[j];
                big = std::max(big, std::abs(nx[i]));
            }
            if (big < kHuge) v = nx;
            put(dir * k, v);
        }
    };
    put(0, out.s);
    run(ati, 1);
    run(at, -1);

    out.action.element = [dd](const group::GroupElement& g) {
        std::vector<double> h, neg;
        for (const auto& x : g.v) {
            h.push_back(x.to_double());
            neg.push_back(-x.to_double());
        }
        const long k = g.k;
        auto fwd = [dd, h, k](double x) {
            double y = lifted(x, [&](double r) { return dd->flow(h, r); });
            for (long i = 0; i < k; ++i) y = lifted(y, [&](double r) { return dd->step(r, 1); });
            for (long i = 0; i > k; --i) y = lifted(y, [&](double r) { return dd->step(r, -1); });
            return y;
        };
        auto inv = [dd, neg, k](double y) {
            for (long i = 0; i < k; ++i) y = lifted(y, [&](double r) { return dd->step(r, -1); });
            for (long i = 0; i > k; --i) y = lifted(y, [&](double r) { return dd->step(r, 1); });
            return lifted(y, [&](double r) { return dd->flow(neg, r); });
        };
        IntervalMap m(fwd, dynamics::Domain::circle_lift, "denjoy:" + group::to_string(g));
        m.with_inverse(inv);
        return m;
    };
    return out;
}

RotationEstimate rotation_number_estimate(const IntervalMap& lift, std::size_t iterates, double x0) {
    if (lift.domain() != dynamics::Domain::circle_lift)
        throw PreconditionError("rotation number needs a circle lift, got a map of type " +
                                dynamics::to_string(lift.domain()));
    if (iterates == 0) throw InputError("rotation number needs at least one iterate");
    for (double x : dynamics::interior_grid(0, 1, 64)) {
        if (std::abs(lift(x + 1) - lift(x) - 1) > 1e-10)
            throw PreconditionError("map does not commute with the integer translation");
    }
    double y = x0;
    for (std::size_t i = 0; i < iterates; ++i) y = lift(y);
    RotationEstimate e;
    e.iterates = iterates;
    e.rho = (y - x0) / static_cast<double>(iterates);
    e.error_bar = 2.0 / static_cast<double>(iterates);
    return e;
}

PeriodicScan periodic_point_scan(const IntervalMap& lift, long max_period, std::size_t grid) {
    PeriodicScan scan;
    scan.min_margin = INFINITY;
    std::vector<double> ys(grid);
    std::vector<double> xs(grid);
    for (std::size_t i = 0; i < grid; ++i) xs[i] = ys[i] = (static_cast<double>(i) + 0.5) / grid;
    // D[p][i] = F^p(x_i) - x_i
    std::vector<std::vector<double>> disp(static_cast<std::size_t>(max_period), std::vector<double>(grid));
    for (std::size_t i = 0; i < grid; ++i) {
        for (long p = 1; p <= max_period; ++p) {
            ys[i] = lift(ys[i]);
            disp[static_cast<std::size_t>(p - 1)][i] = ys[i] - xs[i];
        }
    }
    for (long p = 1; p <= max_period; ++p) {
        const auto& D = disp[static_cast<std::size_t>(p - 1)];
        for (std::size_t i = 0; i < grid; ++i) {
            double v = D[i];
            double near = std::round(v);
            scan.min_margin = std::min(scan.min_margin, std::abs(v - near));
            double w = i + 1 < grid ? D[i + 1] : D[0];
            if (!scan.found && (v == near || std::floor(v) != std::floor(w))) {
                scan.found = true;
                scan.period = p;
                scan.shift = static_cast<long>(v == near ? near : std::max(std::floor(v), std::floor(w)));
                scan.x = xs[i];
            }
        }
    }
    return scan;
}

}  // namespace solvact::constructions
