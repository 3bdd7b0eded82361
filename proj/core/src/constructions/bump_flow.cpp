#include "solvact/constructions/bump_flow.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>

namespace solvact::constructions {

double bump_field(double u) {
    if (u <= 0 || u >= 1) return 0;
    double v = u * (1 - u);
    return v * v;
}

double bump_time(double u) { return -1 / u + 1 / (1 - u) + 2 * (std::log(u) - std::log1p(-u)); }

namespace {

// τ(u + δ) - τ(u) without cancellation.
double time_increment(double u, double d) {
    double w = 1 - u;
    return d / (u * (u + d)) + d / (w * (w - d)) + 2 * (std::log1p(d / u) - std::log1p(-d / w));
}

}  // namespace

double bump_flow_displacement(double t, double u) {
    if (t == 0 || !(u > 0) || !(u < 1)) return 0;
    const double sign = t > 0 ? 1 : -1;
    const double target = std::abs(t);
    const double room = t > 0 ? 1 - u : u;
    auto g = [&](double m) { return sign * time_increment(u, sign * m) - target; };

    double lo = 0;
    double hi = std::min(2 * target * bump_field(u), 0.5 * room);
    if (!(hi > 0)) hi = 0.5 * room;
    while (g(hi) < 0) {
        double next = hi < 0.5 * room ? 2 * hi : hi + 0.5 * (room - hi);
        if (next >= room || next == hi) return sign * room;
        lo = hi;
        hi = std::min(next, room);
    }
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(g, lo, hi, boost::math::tools::eps_tolerance<double>(52),
                                               iters);
    return sign * 0.5 * (r.first + r.second);
}

double bump_flow(double t, double u) { return u + bump_flow_displacement(t, u); }

double bump_flow_derivative(double t, double u) {
    double x = bump_field(u);
    if (x == 0) return 1;
    return bump_field(bump_flow(t, u)) / x;
}

}  // namespace solvact::constructions
