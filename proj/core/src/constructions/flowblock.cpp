#include "solvact/constructions/flowblock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "solvact/constructions/bump_flow.hpp"
#include "solvact/errors.hpp"
#include "solvact/spectral/spectral.hpp"

namespace solvact::constructions {

std::string to_string(FlowParameter::Kind k) {
    switch (k) {
        case FlowParameter::Kind::central: return "central";
        case FlowParameter::Kind::unstable: return "unstable";
        case FlowParameter::Kind::vector: return "vector";
    }
    return "?";
}

namespace {

constexpr double kHuge = 1e250;

std::vector<std::vector<double>> to_double(const RationalMatrix& m) {
    std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).to_double();
    return out;
}

std::vector<double> mat_apply(const std::vector<std::vector<double>>& m, const std::vector<double>& v) {
    std::vector<double> out(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

double sup(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::vector<double> to_double(const RationalVector& v) {
    std::vector<double> out;
    for (const auto& x : v) out.push_back(x.to_double());
    return out;
}

}  // namespace

class FlowBlock {
public:
    RationalMatrix a;
    BlockSpec spec;
    FlowParameter::Kind kind = FlowParameter::Kind::central;
    std::vector<double> s;
    std::size_t d = 0;
    long depth = 0;
    double w0 = 0;                // width of I_0
    std::vector<double> orbit;    // (A^T)^k s at (k + depth) * d

    double sigma(long k) const { return 1 / (1 + std::pow(spec.ratio, static_cast<double>(-k))); }

    long block_index(double x) const {
        double lr = std::log(spec.ratio);
        double est = (std::log(x) - std::log1p(-x)) / lr;
        long j = static_cast<long>(std::floor(std::clamp(est, -1e6, 1e6)));
        while (x < sigma(j)) --j;
        while (x >= sigma(j + 1)) ++j;
        return j;
    }

    double f_power(long m, double x) const {
        double rm = std::pow(spec.ratio, static_cast<double>(m));
        return rm * x / (1 + (rm - 1) * x);
    }

    double f_power_derivative(long m, double x) const {
        double rm = std::pow(spec.ratio, static_cast<double>(m));
        double q = 1 + (rm - 1) * x;
        return rm / (q * q);
    }

    // f^m(y + dy) - f^m(y)
    double f_power_diff(long m, double y, double dy) const {
        double rm = std::pow(spec.ratio, static_cast<double>(m));
        return rm * dy / ((1 + (rm - 1) * (y + dy)) * (1 + (rm - 1) * y));
    }

    double multiplier(long k, const std::vector<double>& t) const {
        if (k < -depth || k > depth) return 0;
        const double* v = &orbit[static_cast<std::size_t>(k + depth) * d];
        double c = 0;
        for (std::size_t i = 0; i < d; ++i)
            if (t[i] != 0) c += v[i] * t[i];
        if (std::isnan(c)) return 0;
        return std::clamp(c, -kHuge, kHuge);
    }

    struct Local {
        long k = 0;
        double y = 0;
        double u = 0;
        double c = 0;
    };

    bool locate(const std::vector<double>& t, double x, Local& out) const {
        if (!(x > 0) || !(x < 1)) return false;
        long j = block_index(x);
        if (j < -depth || j > depth) return false;
        out.k = -j;
        out.c = multiplier(out.k, t);
        if (out.c == 0) return false;
        out.y = f_power(out.k, x);
        out.u = std::clamp((out.y - 0.5) / w0, 0.0, 1.0);
        return true;
    }

    double g_disp(const std::vector<double>& t, double x) const {
        Local l;
        if (!locate(t, x, l)) return 0;
        double du = bump_flow_displacement(l.c, l.u);
        return f_power_diff(-l.k, l.y, du * w0);
    }

    double g_derivative(const std::vector<double>& t, double x) const {
        Local l;
        if (!locate(t, x, l)) return 1;
        double du = bump_flow_displacement(l.c, l.u);
        double fu = bump_field(l.u);
        double dxi = fu == 0 ? 1.0 : bump_field(l.u + du) / fu;
        return f_power_derivative(-l.k, l.y + du * w0) * dxi * f_power_derivative(l.k, x);
    }
};

const BlockSpec& FlowBlockAction::spec() const { return data->spec; }
const std::vector<double>& FlowBlockAction::s() const { return data->s; }
FlowParameter::Kind FlowBlockAction::kind() const { return data->kind; }
double FlowBlockAction::sigma(long k) const { return data->sigma(k); }
long FlowBlockAction::block_index(double x) const { return data->block_index(x); }
double FlowBlockAction::f_power(long m, double x) const { return data->f_power(m, x); }
double FlowBlockAction::multiplier(long k, const std::vector<double>& t) const {
    return data->multiplier(k, t);
}

IntervalMap FlowBlockAction::g(const std::vector<double>& t) const {
    auto fb = data;
    if (t.size() != fb->d) throw DimensionError("flow-block translation has the wrong length");
    std::vector<double> neg(t);
    for (double& x : neg) x = -x;
    IntervalMap m([fb, t](double x) { return x + fb->g_disp(t, x); }, dynamics::Domain::unit_interval,
                  "flowblock:g");
    m.with_displacement([fb, t](double x) { return fb->g_disp(t, x); });
    m.with_derivative([fb, t](double x) { return fb->g_derivative(t, x); });
    m.with_inverse([fb, neg](double y) { return y + fb->g_disp(neg, y); });
    return m;
}

IntervalMap FlowBlockAction::f() const {
    auto fb = data;
    IntervalMap m([fb](double x) { return fb->f_power(1, x); }, dynamics::Domain::unit_interval,
                  "flowblock:f");
    m.with_derivative([fb](double x) { return fb->f_power_derivative(1, x); });
    m.with_inverse([fb](double y) { return fb->f_power(-1, y); });
    return m;
}

std::string MultiplierProfile::to_csv() const {
    std::string out = "k,c_k\n";
    char buf[64];
    for (std::size_t i = 0; i < k.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%ld,%.17g\n", k[i], c[i]);
        out += buf;
    }
    return out;
}

MultiplierProfile multiplier_profile(const FlowBlockAction& fb, const RationalVector& t,
                                     long radius) {
    MultiplierProfile p;
    std::vector<double> td = to_double(t);
    for (long k = -radius; k <= radius; ++k) {
        p.k.push_back(k);
        p.c.push_back(fb.multiplier(k, td));
    }
    double c0 = std::abs(fb.multiplier(0, td));
    double hi = 0, lo = std::numeric_limits<double>::infinity();
    for (double c : p.c) {
        hi = std::max(hi, std::abs(c));
        lo = std::min(lo, std::abs(c));
    }
    const double inf = std::numeric_limits<double>::infinity();
    p.sup_ratio = c0 == 0 ? inf : hi / c0;
    p.inf_ratio = c0 == 0 ? inf : lo / c0;
    return p;
}

FlowBlockAction flowblock_build(const RationalMatrix& a, const FlowParameter& param,
                                const RationalVector& t0, const BlockSpec& spec) {
    if (!(spec.ratio > 1) || !std::isfinite(spec.ratio))
        throw GeometryError("block ratio must exceed 1; otherwise the blocks have zero length");
    if (spec.depth < 0 || spec.profile_radius < 0)
        throw InputError("block depth and profile radius must be nonnegative");
    group::GroupContext ctx(a);
    const std::size_t d = ctx.dim();
    if (t0.size() != d) throw DimensionError("t0 must have the dimension of A");

    auto fb = std::make_shared<FlowBlock>();
    fb->a = a;
    fb->spec = spec;
    fb->kind = param.kind;
    fb->d = d;
    fb->depth = std::min<long>(spec.depth, static_cast<long>(std::floor(1000 * std::log(2.0) /
                                                                        std::log(spec.ratio))));
    fb->w0 = fb->sigma(1) - fb->sigma(0);
    if (!(fb->w0 > 0)) throw GeometryError("block I_0 has zero length");
    const long D = fb->depth;
    fb->orbit.assign(static_cast<std::size_t>(2 * D + 1) * d, 0.0);
    auto put = [&](long k, const std::vector<double>& v) {
        std::copy(v.begin(), v.end(), fb->orbit.begin() + static_cast<long>((k + D) * static_cast<long>(d)));
    };

    const auto at = to_double(a.transpose());
    const auto at_inv = to_double(a.transpose().inverse());
    auto iterate_numeric = [&](std::vector<double> s0) {
        put(0, s0);
        std::vector<double> v = s0;
        for (long k = 1; k <= D; ++k) {
            auto next = mat_apply(at, v);
            if (sup(next) < kHuge) v = next;
            put(k, v);
        }
        v = s0;
        for (long k = 1; k <= D; ++k) {
            auto next = mat_apply(at_inv, v);
            if (sup(next) < kHuge) v = next;
            put(-k, v);
        }
    };

    switch (param.kind) {
        case FlowParameter::Kind::central: {
            spectral::ExactCentral ec = spectral::exact_central_star(a);
            spectral::Basis b = ec.to_double();
            if (param.coefficients.size() != 2)
                throw InputError("central flow parameter takes two coefficients");
            const long double al = param.coefficients[0], be = param.coefficients[1];
            if (b.size() == 1) {
                // A^T u = ±u
                const double sgn = ec.y.value > 0 ? 1.0 : -1.0;
                std::vector<double> s0(d);
                for (std::size_t i = 0; i < d; ++i) s0[i] = static_cast<double>(al) * b[0][i];
                for (long k = -D; k <= D; ++k) {
                    std::vector<double> v(s0);
                    if (k % 2 != 0 && sgn < 0)
                        for (double& x : v) x = -x;
                    put(k, v);
                }
                fb->s = s0;
            } else {
                // A^T (α u + β w) = -β u + (α + y β) w, w = A^T u
                const long double y = ec.field->embedding_ld();
                auto vec = [&](long double p, long double q) {
                    std::vector<double> v(d);
                    for (std::size_t i = 0; i < d; ++i)
                        v[i] = static_cast<double>(p * b[0][i] + q * b[1][i]);
                    return v;
                };
                fb->s = vec(al, be);
                put(0, fb->s);
                long double p = al, q = be;
                for (long k = 1; k <= D; ++k) {
                    long double np = -q, nq = p + y * q;
                    p = np;
                    q = nq;
                    put(k, vec(p, q));
                }
                p = al;
                q = be;
                for (long k = 1; k <= D; ++k) {
                    long double np = y * p + q, nq = -p;
                    p = np;
                    q = nq;
                    put(-k, vec(p, q));
                }
            }
            break;
        }
        case FlowParameter::Kind::unstable: {
            spectral::SpectralSplit split = spectral::splitting(a);
            if (split.unstable.empty()) throw UnsupportedStructure("A^T has no unstable direction");
            if (std::abs(split.leading_eigenvalue.imag()) > 1e-12) {
                fb->s = split.leading_direction;
                iterate_numeric(fb->s);
            } else {
                const double mu = split.leading_eigenvalue.real();
                fb->s = split.leading_direction;
                for (long k = -D; k <= D; ++k) {
                    double scale = std::pow(mu, static_cast<double>(k));
                    std::vector<double> v(fb->s);
                    for (double& x : v) x = std::clamp(x * scale, -kHuge, kHuge);
                    put(k, v);
                }
            }
            break;
        }
        case FlowParameter::Kind::vector: {
            if (param.coefficients.size() != d)
                throw DimensionError("flow parameter s must have the dimension of A");
            fb->s = param.coefficients;
            iterate_numeric(fb->s);
            break;
        }
    }

    FlowBlockAction out{fb, Action{ctx, dynamics::Domain::unit_interval,
                                   "flowblock:" + to_string(param.kind), {}},
                        t0, {}};
    out.action.element = [fb](const group::GroupElement& g) {
        std::vector<double> v = to_double(g.v);
        std::vector<double> neg(v);
        for (double& x : neg) x = -x;
        const long m = g.k;
        IntervalMap map([fb, v, m](double x) { return fb->f_power(m, x + fb->g_disp(v, x)); },
                        dynamics::Domain::unit_interval, "flowblock:" + group::to_string(g));
        map.with_inverse([fb, neg, m](double y) {
            double x = fb->f_power(-m, y);
            return x + fb->g_disp(neg, x);
        });
        map.with_derivative([fb, v, m](double x) {
            return fb->f_power_derivative(m, x + fb->g_disp(v, x)) * fb->g_derivative(v, x);
        });
        if (m == 0) map.with_displacement([fb, v](double x) { return fb->g_disp(v, x); });
        return map;
    };
    out.profile = multiplier_profile(out, t0, spec.profile_radius);
    return out;
}

std::vector<double> flowblock_samples(const FlowBlockAction& fb, std::size_t grid, long blocks,
                                      std::size_t per_block) {
    std::vector<double> pts = dynamics::interior_grid(0, 1, grid);
    const double w0 = fb.data->w0;
    for (long k = -blocks; k <= blocks; ++k)
        for (double u : dynamics::interior_grid(0, 1, per_block))
            pts.push_back(fb.f_power(k, 0.5 + u * w0));
    std::sort(pts.begin(), pts.end());
    return pts;
}

FaithfulnessVerdict faithfulness_probe(const FlowBlockAction& fb, const RationalVector& t0,
                                       long radius, double threshold) {
    FaithfulnessVerdict v;
    v.irreducible = spectral::classify(fb.data->a).irreducible_over_Q;
    if (exact::is_zero(t0)) {
        v.applicable = false;
        v.note = "t0 = 0: g is the identity";
        return v;
    }
    const std::vector<double> td = to_double(t0);
    const double w0 = fb.data->w0;
    for (long step = 0; step <= 2 * radius; ++step) {
        long k = step % 2 == 0 ? step / 2 : -(step + 1) / 2;
        double c = fb.multiplier(k, td);
        if (std::abs(c) <= threshold) continue;
        for (double u : dynamics::interior_grid(0, 1, 64)) {
            double x = fb.f_power(-k, 0.5 + u * w0);
            double dx = fb.data->g_disp(td, x);
            if (std::abs(dx) > std::abs(v.displacement)) {
                v.k = k;
                v.multiplier = c;
                v.x = x;
                v.displacement = dx;
            }
        }
        if (std::abs(v.displacement) > threshold) {
            v.moved = true;
            v.note = "g_t0 moves a point of I_" + std::to_string(-k);
            return v;
        }
    }
    bool s_nonzero = sup(fb.s()) > 0;
    v.inconsistent = v.irreducible && s_nonzero;
    v.note = v.inconsistent ? "all sampled c_k vanish although A is irreducible and s != 0"
                            : "c_k vanishes on the scanned range";
    return v;
}

}  // namespace solvact::constructions
