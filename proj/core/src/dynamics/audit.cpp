#include "solvact/dynamics/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "solvact/errors.hpp"

namespace solvact::dynamics {

// ---------------------------------------------------------------------------
// Multiplier audit

double interior_fixed_point(const IntervalMap& f, std::size_t grid) {
    auto g = [&](double x) { return f(x) - x; };
    std::vector<double> xs = interior_grid(0.0, 1.0, grid);
    // Exact zeros only count when they sit between opposite signs: flat germs
    // near the endpoints round f(x) - x to 0 without a fixed point there.
    int last_sign = 0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double v = g(xs[i]);
        int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s == 0) continue;
        if (last_sign != 0 && s != last_sign) {
            if (i > last_nonzero + 1) return xs[last_nonzero + 1];
            double lo = xs[last_nonzero], hi = xs[i];
            bool lo_neg = last_sign < 0;
            while (hi - lo > 1e-14) {
                double mid = 0.5 * (lo + hi);
                double gm = g(mid);
                if (gm == 0) return mid;
                if ((gm < 0) == lo_neg) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        last_sign = s;
        last_nonzero = i;
    }
    throw NoInteriorFixedPoint("f(x) - x has no sign change on (0,1) for " + f.provenance());
}

MultiplierAudit multiplier_audit(const Action& action, const GroupElement& g,
                                 const affine::AffineRepresentation& rep, const Tolerances& tol) {
    if (g.k == 0) {
        throw NoInteriorFixedPoint("elements of the translation subgroup have no isolated fixed point");
    }
    IntervalMap f = action.element(g);
    MultiplierAudit out;
    out.g = g;
    out.fixed_point = interior_fixed_point(f, tol.grid);
    out.measured = fd_derivative([&](double x) { return f(x); }, out.fixed_point, tol.fd);
    out.expected = pow(rep.lambda, g.k).to_double();
    out.error = std::abs(out.measured - out.expected);
    out.tolerance = tol.derivative_tol;
    out.pass = out.error <= out.tolerance;
    return out;
}

// ---------------------------------------------------------------------------
// Composition estimate

namespace {

double delta_all_positive(std::size_t k, double eta) {
    if (k <= 1) return 1.0;
    double half = eta / 2;
    return std::min(delta_all_positive(k - 1, half), half / (double(k) - 1 + half));
}

}  // namespace

double calibrate_delta(std::size_t k, double eta, bool mixed_signs) {
    if (k == 0) throw InputError("composition of zero maps");
    if (!(eta > 0)) throw InputError("eta must be positive");
    if (!mixed_signs) return std::min(delta_all_positive(k, eta), 0.5);
    double inner = delta_all_positive(k, eta / 2);
    // δ/(1-δ) <= inner  <=>  δ <= inner / (1 + inner)
    double d = std::min(inner / (1 + inner), eta / (2 * (double(k) + eta)));
    return std::min(d, 0.5);
}

double near_identity_radius(const IntervalMap& f, std::size_t grid) {
    double r = 0;
    const double margin = 1e-3;
    for (double x : interior_grid(margin, 1 - margin, grid)) {
        r = std::max(r, std::abs(f.derivative(x) - 1));
    }
    return r;
}

CompositionResult composition_estimate_test(const std::vector<IntervalMap>& maps,
                                            const std::vector<int>& signs, double x, double eta,
                                            double delta, std::size_t grid) {
    if (maps.empty() || maps.size() != signs.size()) {
        throw InputError("maps and signs must be nonempty and of equal length");
    }
    for (const auto& f : maps) {
        double r = near_identity_radius(f, grid);
        if (!(r < delta)) {
            throw PreconditionError("map " + f.provenance() + " is not in U_delta: sup|Df-1| = " +
                                    std::to_string(r));
        }
    }
    CompositionResult out;
    double y = x;
    double linear = 0;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (signs[i] != 1 && signs[i] != -1) throw InputError("signs must be +1 or -1");
        y = signs[i] > 0 ? maps[i](y) : maps[i].inverse(y);
        double disp = maps[i].displacement(x);
        linear += signs[i] * disp;
        out.max_displacement = std::max(out.max_displacement, std::abs(disp));
    }
    out.residual = maps.size() == 1 && signs[0] > 0 ? 0.0 : std::abs((y - x) - linear);
    out.bound = eta * out.max_displacement;
    out.pass = out.residual <= out.bound;
    return out;
}

IntervalMap sine_perturbation(const std::vector<double>& a, double eps) {
    auto f = [a, eps](double x) {
        double s = 0;
        for (std::size_t j = 0; j < a.size(); ++j) {
            double w = double(j + 1) * std::numbers::pi;
            s += a[j] * std::sin(w * x) / w;
        }
        return x + eps * s;
    };
    auto df = [a, eps](double x) {
        double s = 0;
        for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * std::cos(double(j + 1) * std::numbers::pi * x);
        return 1 + eps * s;
    };
    auto disp = [f](double x) { return f(x) - x; };
    IntervalMap m(f, Domain::unit_interval, "sine");
    m.with_derivative(df).with_displacement(disp);
    return m;
}

HarnessStats composition_harness(std::size_t trials, std::uint64_t seed, double eta,
                                 std::size_t max_maps) {
    HarnessStats st;
    st.eta = eta;
    st.max_maps = max_maps;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> kdist(1, max_maps);
    std::uniform_int_distribution<std::size_t> modes(1, 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (std::size_t t = 0; t < trials; ++t) {
        std::size_t k = kdist(rng);
        double delta = calibrate_delta(k, eta, true);
        std::vector<IntervalMap> maps;
        std::vector<int> signs;
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<double> a(modes(rng));
            double l1 = 0;
            for (auto& c : a) {
                c = coef(rng);
                l1 += std::abs(c);
            }
            if (l1 == 0) a[0] = l1 = 1;
            for (auto& c : a) c /= l1;
            double eps = delta * (0.05 + 0.94 * unit(rng));
            maps.push_back(sine_perturbation(a, eps));
            signs.push_back(unit(rng) < 0.5 ? -1 : 1);
        }
        double x = 0.005 + 0.99 * unit(rng);
        auto r = composition_estimate_test(maps, signs, x, eta, delta);
        ++st.trials;
        if (!r.pass) ++st.violations;
        if (r.bound > 0) st.worst_ratio = std::max(st.worst_ratio, r.residual / r.bound);
    }
    return st;
}

IntervalMap logistic_flow(double s) {
    double es = std::exp(s);
    IntervalMap m([es](double x) { return x * es / (1 - x + x * es); }, Domain::unit_interval,
                  "logistic-flow");
    m.with_derivative([es](double x) {
        double den = 1 - x + x * es;
        return es / (den * den);
    });
    m.with_inverse([es](double y) { return y / (es - es * y + y); });
    m.with_displacement([es](double x) { return x * (1 - x) * (es - 1) / (1 - x + x * es); });
    return m;
}

FlowRootResult flow_root_test(std::size_t q, std::size_t samples, double eta) {
    if (q == 0) throw InputError("root order must be positive");
    FlowRootResult out;
    out.q = q;
    out.samples = samples;
    out.delta = calibrate_delta(q, eta, false);
    // sup|Dξ^s - 1| = e^|s| - 1 < δ
    double s = 0.9 * std::log1p(out.delta);
    out.time = s * double(q);
    IntervalMap root = logistic_flow(s);
    IntervalMap full = logistic_flow(out.time);
    if (!(near_identity_radius(root) < out.delta)) throw std::logic_error("flow root outside U_delta");
    for (double x : interior_grid(0.0, 1.0, samples)) {
        double y = x;
        for (std::size_t i = 0; i < q; ++i) y = root(y);
        double lhs = std::abs((full(x) - x) - double(q) * root.displacement(x));
        double rhs = eta * std::abs(root.displacement(x));
        // The q-fold composition must agree with the closed-form time-t map.
        if (std::abs(y - full(x)) > 1e-13) ++out.violations;
        if (lhs > rhs) ++out.violations;
        if (rhs > 0) out.worst_ratio = std::max(out.worst_ratio, lhs / rhs);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Displacement tracking

namespace {

double sup_norm(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::vector<double> to_doubles(const RationalMatrix& m) {
    std::vector<double> out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j).to_double());
    }
    return out;
}

}  // namespace

double misalignment(const std::vector<double>& u, const std::vector<double>& v) {
    double uv = 0, uu = 0, vv = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        uv += u[i] * v[i];
        uu += u[i] * u[i];
        vv += v[i] * v[i];
    }
    return 1 - std::abs(uv) / std::sqrt(uu * vv);
}

DisplacementTrack displacement_track(const Action& action, double x0, long steps,
                                     const TrackOptions& opts) {
    const std::size_t d = action.dim();
    std::vector<IntervalMap> b;
    for (std::size_t i = 0; i < d; ++i) b.push_back(action.b(i));
    IntervalMap step = opts.toward_zero ? action.a_inv() : action.a();

    DisplacementTrack tr;
    tr.cone_eps = opts.cone_eps;
    tr.kappa = opts.kappa;
    if (opts.endpoint_derivative) {
        tr.endpoint_derivative = *opts.endpoint_derivative;
    } else {
        if (action.domain != Domain::unit_interval) {
            throw PreconditionError("endpoint derivative must be supplied off the unit interval");
        }
        const double h = std::ldexp(1.0, -30);
        tr.endpoint_derivative = opts.toward_zero ? step(h) / h : (1 - step(1 - h)) / h;
    }

    // M = A^T toward 0, A^{-T} toward 1.
    RationalMatrix at = action.ctx.A().transpose();
    std::vector<double> m = to_doubles(opts.toward_zero ? at : at.inverse());

    std::optional<spectral::SpectralSplit> split;
    try {
        split = spectral::splitting(action.ctx.A());
    } catch (const UnsupportedStructure&) {
    }

    double x = x0;
    for (long k = 0; k <= steps; ++k) {
        DisplacementVector dv;
        dv.k = k;
        dv.x = x;
        for (std::size_t i = 0; i < d; ++i) dv.delta.push_back(b[i].displacement(x));
        dv.sup_norm = sup_norm(dv.delta);
        dv.norm_star = split ? split->norm_star(dv.delta) : spectral::norm(dv.delta);
        if (k == 0 && dv.sup_norm == 0) {
            throw DegenerateDisplacement("all generators of H fix the starting point");
        }
        std::vector<double> dir = dv.delta;
        double n2 = spectral::norm(dir);
        for (auto& c : dir) c = n2 > 0 ? c / n2 : 0.0;
        tr.directions.push_back(std::move(dir));

        bool cone = false;
        if (split && n2 > 0) {
            auto ps = split->project_stable(dv.delta);
            auto pu = split->project_unstable(dv.delta);
            // The expanding part of M is E^u toward 0 and E^s toward 1.
            const auto& grow = opts.toward_zero ? pu : ps;
            const auto& shrink = opts.toward_zero ? ps : pu;
            bool has_grow = opts.toward_zero ? !split->unstable.empty() : !split->stable.empty();
            cone = has_grow && spectral::norm(shrink) <= opts.cone_eps * spectral::norm(grow);
        }
        tr.in_cone.push_back(cone);
        tr.points.push_back(std::move(dv));
        if (k < steps) x = step(x);
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = 0; k < tr.points.size(); ++k) {
        if (k + 1 == tr.points.size() || tr.points[k].sup_norm == 0) {
            tr.residuals.push_back(nan);
            continue;
        }
        const auto& cur = tr.points[k].delta;
        const auto& nxt = tr.points[k + 1].delta;
        double r = 0;
        for (std::size_t i = 0; i < d; ++i) {
            double pred = 0;
            for (std::size_t j = 0; j < d; ++j) pred += m[i * d + j] * cur[j];
            r = std::max(r, std::abs(nxt[i] - tr.endpoint_derivative * pred));
        }
        tr.residuals.push_back(r / tr.points[k].sup_norm);
    }

    for (std::size_t k = tr.in_cone.size(); k-- > 0;) {
        if (!tr.in_cone[k]) break;
        tr.cone_entry = static_cast<long>(k);
    }
    tr.stays_in_cone = tr.cone_entry.has_value();
    if (tr.cone_entry) {
        double g = std::numeric_limits<double>::infinity();
        for (std::size_t k = static_cast<std::size_t>(*tr.cone_entry); k + 1 < tr.points.size(); ++k) {
            g = std::min(g, tr.points[k + 1].norm_star / tr.points[k].norm_star);
        }
        tr.min_growth_in_cone = g;
        tr.grows_by_kappa = std::isfinite(g) && g >= opts.kappa;
    }
    return tr;
}

std::string DisplacementTrack::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    std::size_t d = points.empty() ? 0 : points.front().delta.size();
    os << "k,x";
    for (std::size_t i = 0; i < d; ++i) os << ",delta_" << (i + 1);
    os << ",norm_star,residual\n";
    for (std::size_t k = 0; k < points.size(); ++k) {
        const auto& p = points[k];
        os << p.k << ',' << p.x;
        for (double v : p.delta) os << ',' << v;
        os << ',' << p.norm_star << ',';
        if (std::isfinite(residuals[k])) os << residuals[k];
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Conjugacy extraction

double Coordinate::raw(double x) const {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) return std::numeric_limits<double>::quiet_NaN();
    return values[static_cast<std::size_t>(it - xs.begin()) - 1];
}

void Coordinate::pin(double x1, double y1, double x2, double y2) {
    double f1 = raw(x1), f2 = raw(x2);
    if (!(f1 != f2)) throw GeometryError("pinning points share a coordinate value");
    scale = (y2 - y1) / (f2 - f1);
    shift = y1 - scale * f1;
}

std::optional<Plateau> Coordinate::widest_gap() const {
    if (plateaus.empty()) return std::nullopt;
    return *std::max_element(plateaus.begin(), plateaus.end(),
                             [](const Plateau& a, const Plateau& b) { return a.width() < b.width(); });
}

namespace {

struct Sample {
    RationalVector v;
    double tau;
    double x;
};

}  // namespace

Coordinate conjugacy_extract(const Action& action, const affine::AffineRepresentation& rep,
                             const ConjugacyOptions& opts) {
    if (!affine::faithfulness_certificate(rep).faithful) {
        throw UnsupportedStructure("translation image of the representation is not dense");
    }
    const std::size_t d = action.dim();
    const RationalMatrix& a = action.ctx.A();
    // Refinement step inside H: v1 + B (v2 - v1) with <t, B u> = λ^{∓1} <t, u>.
    RationalMatrix bstep = rep.lambda_approx > 1 ? a.inverse() : a;

    auto tau_of = [&](const RationalVector& v) {
        std::vector<double> dv;
        for (const auto& c : v) dv.push_back(c.to_double());
        return rep.pairing_double(dv);
    };
    std::vector<Sample> samples;
    auto add = [&](RationalVector v) {
        double tau = tau_of(v);
        double x = action.translation(v)(opts.base_point);
        samples.push_back({std::move(v), tau, x});
    };

    // Seeds: A^{-j} w for integer w, while the denominators of A^{-j} stay <= max_height.
    std::size_t per_axis = static_cast<std::size_t>(
        std::floor(std::pow(double(opts.max_samples) / 4, 1.0 / double(d))));
    long w_max = std::max<long>(1, std::min<long>(opts.max_height, long(per_axis / 2)));
    RationalMatrix ainv = a.inverse();
    RationalMatrix p = RationalMatrix::identity(d);
    for (int j = 0; j < 64; ++j) {
        exact::BigInt den = 1;
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) den = std::max(den, p(r, c).denominator());
        }
        if (den > opts.max_height) break;
        std::vector<long> w(d, -w_max);
        while (true) {
            RationalVector wv(d);
            for (std::size_t i = 0; i < d; ++i) wv[i] = exact::Rational(w[i]);
            RationalVector v = p * wv;
            if (std::abs(tau_of(v)) <= opts.range) add(std::move(v));
            std::size_t i = 0;
            while (i < d && w[i] == w_max) w[i++] = -w_max;
            if (i == d) break;
            ++w[i];
        }
        if (d > 1 || samples.size() > opts.max_samples / 2) break;
        p = p * ainv;
        if (p == RationalMatrix::identity(d)) break;
    }
    if (samples.empty()) throw GeometryError("no translation samples within range");

    auto by_tau = [](const Sample& u, const Sample& v) { return u.tau < v.tau; };
    std::sort(samples.begin(), samples.end(), by_tau);
    double span = samples.back().x - samples.front().x;
    if (!(span > 0)) throw GeometryError("translation samples do not spread the base point");

    for (int round = 0; round < 64 && samples.size() < opts.max_samples; ++round) {
        std::vector<Sample> fresh;
        for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
            const auto& s1 = samples[i];
            const auto& s2 = samples[i + 1];
            double dt = s2.tau - s1.tau;
            double dx = s2.x - s1.x;
            bool coarse = dx > opts.target_gap * span || dt > opts.tau_gap;
            if (!coarse || dt <= 1e-12 * std::max(1.0, std::abs(s1.tau))) continue;
            RationalVector diff(d);
            for (std::size_t c = 0; c < d; ++c) diff[c] = s2.v[c] - s1.v[c];
            RationalVector step = bstep * diff;
            RationalVector v(d);
            for (std::size_t c = 0; c < d; ++c) v[c] = s1.v[c] + step[c];
            double tau = tau_of(v);
            double x = action.translation(v)(opts.base_point);
            fresh.push_back({std::move(v), tau, x});
            if (samples.size() + fresh.size() >= opts.max_samples) break;
        }
        if (fresh.empty()) break;
        for (auto& s : fresh) samples.push_back(std::move(s));
        std::sort(samples.begin(), samples.end(), by_tau);
    }

    Coordinate out;
    out.samples = samples.size();
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        if (samples[i + 1].x < samples[i].x - 1e-12) out.monotone = false;
    }
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : samples) pts.emplace_back(s.x, s.tau);
    std::sort(pts.begin(), pts.end());
    double run = -std::numeric_limits<double>::infinity();
    for (const auto& [x, tau] : pts) {
        run = std::max(run, tau);
        out.xs.push_back(x);
        out.values.push_back(run);
    }
    out.span = out.xs.back() - out.xs.front();
    for (std::size_t i = 0; i + 1 < out.xs.size(); ++i) {
        if (out.xs[i + 1] - out.xs[i] > opts.plateau_min * out.span) {
            out.plateaus.push_back({out.xs[i], out.xs[i + 1], out.values[i]});
        }
    }
    return out;
}

}  // namespace solvact::dynamics
