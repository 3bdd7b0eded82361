#include "solvact/dynamics/chart.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <limits>

#include "solvact/errors.hpp"

namespace solvact::dynamics {

namespace {

constexpr double kE = 2.718281828459045235360287;
// Below this distance to an endpoint the mt_flat chart coordinate exceeds
// e^20 and the log form is used.
constexpr double kTail = 1.0 / 42.0;
constexpr double kTailLog = 20.0;

double logistic(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

/// Distance from forward(|u|) to 1, for |u| >= 1, without cancellation.
double mt_gap(double au) {
    double s = std::hypot(au, kE);
    double ls = std::log(s);
    double h = ls / (1 + ls);
    double w = (kE / au) * (kE / au);
    double q = std::sqrt(1 + w);
    return 0.5 * (1 / (1 + ls) + h * w / ((1 + q) * q));
}

/// Point at signed log-coordinate: u = sign * e^L.
double mt_from_log(int sign, double L) {
    if (L < kTailLog) return sign * std::exp(L);  // caller re-enters forward()
    double gap = 1.0 / (2.0 * (1.0 + L));
    return sign > 0 ? 1.0 - gap : gap;
}

}  // namespace

std::string Chart::name() const { return kind_ == ChartKind::logistic ? "logistic" : "mt-flat"; }

Chart chart_from_name(const std::string& name) {
    if (name == "logistic") return Chart(ChartKind::logistic);
    if (name == "mt-flat" || name == "mt_flat") return Chart(ChartKind::mt_flat);
    throw InputError("unknown chart '" + name + "'");
}

double Chart::forward(double u) const {
    if (kind_ == ChartKind::logistic) return logistic(u);
    if (std::isinf(u)) return u > 0 ? 1.0 : 0.0;
    double au = std::abs(u);
    if (au < 1) {
        double s = std::hypot(u, kE);
        double ls = std::log(s);
        return 0.5 + 0.5 * (u / s) * ls / (1 + ls);
    }
    double gap = mt_gap(au);
    return u > 0 ? 1.0 - gap : gap;
}

double Chart::inverse(double x) const {
    if (x <= 0) return -std::numeric_limits<double>::infinity();
    if (x >= 1) return std::numeric_limits<double>::infinity();
    if (kind_ == ChartKind::logistic) return std::log(x) - std::log1p(-x);
    double d = std::min(x, 1 - x);
    int sign = x < 0.5 ? -1 : 1;
    if (d < kTail) return sign * std::exp(1.0 / (2.0 * d) - 1.0);
    auto g = [&](double u) { return forward(u) - x; };
    double lo = -std::exp(kTailLog + 0.5), hi = std::exp(kTailLog + 0.5);
    std::uintmax_t iters = 300;
    auto r = boost::math::tools::toms748_solve(g, lo, hi, boost::math::tools::eps_tolerance<double>(53),
                                               iters);
    return 0.5 * (r.first + r.second);
}

double Chart::derivative(double u) const {
    if (kind_ == ChartKind::logistic) {
        double x = logistic(u);
        return x * (1 - x);
    }
    double s = std::hypot(u, kE);
    double ls = std::log(s);
    double s3 = s * s * s;
    return 0.5 * ((ls / (1 + ls)) * kE * kE / s3 + u * u / (s3 * (1 + ls) * (1 + ls)));
}

double Chart::conjugate_affine(double slope, double offset, double x) const {
    if (x <= 0) return 0.0;
    if (x >= 1) return 1.0;
    if (kind_ == ChartKind::logistic) return logistic(slope * inverse(x) + offset);
    double d = std::min(x, 1 - x);
    if (d >= kTail) return forward(slope * inverse(x) + offset);
    int sign = x < 0.5 ? -1 : 1;
    double L = 1.0 / (2.0 * d) - 1.0;
    // slope * u + offset = sign * e^L * (slope + sign * offset * e^-L)
    double m = slope + sign * offset * std::exp(-L);
    if (m <= 0) {
        if (L > 700) throw GeometryError("affine image leaves the representable chart range");
        return forward(slope * sign * std::exp(L) + offset);
    }
    double L2 = L + std::log(m);
    if (L2 < kTailLog) return forward(mt_from_log(sign, L2));
    return mt_from_log(sign, L2);
}

}  // namespace solvact::dynamics
