#include "solvact/dynamics/interval_map.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "solvact/errors.hpp"

namespace solvact::dynamics {

std::string to_string(Domain d) {
    switch (d) {
        case Domain::unit_interval: return "unit-interval";
        case Domain::line: return "line";
        case Domain::circle_lift: return "circle-lift";
    }
    return "unknown";
}

double fd_derivative(const Fn& f, double x, const FdSchedule& schedule) {
    if (schedule.steps.empty()) throw InputError("empty finite-difference schedule");
    std::vector<double> t;
    for (double h : schedule.steps) t.push_back((f(x + h) - f(x - h)) / (2 * h));
    // Error expansion in h^2, h^4, ...; steps halve, so the factors are 4^j.
    double factor = 4;
    for (std::size_t level = 1; level < t.size(); ++level) {
        for (std::size_t i = t.size() - 1; i >= level; --i) {
            t[i] = (factor * t[i] - t[i - 1]) / (factor - 1);
        }
        factor *= 4;
    }
    return t.back();
}

IntervalMap::IntervalMap(Fn f, Domain domain, std::string provenance)
    : f_(std::move(f)), domain_(domain), provenance_(std::move(provenance)) {}

IntervalMap& IntervalMap::with_derivative(Fn df) {
    df_ = std::move(df);
    return *this;
}

IntervalMap& IntervalMap::with_inverse(Fn inv) {
    inv_ = std::move(inv);
    return *this;
}

IntervalMap& IntervalMap::with_displacement(Fn disp) {
    disp_ = std::move(disp);
    return *this;
}

double IntervalMap::displacement(double x) const { return disp_ ? disp_(x) : f_(x) - x; }

double IntervalMap::derivative(double x) const { return df_ ? df_(x) : fd_derivative(f_, x); }

double IntervalMap::inverse(double y) const {
    if (inv_) return inv_(y);
    double lo, hi;
    if (domain_ == Domain::unit_interval) {
        if (y <= 0) return 0;
        if (y >= 1) return 1;
        lo = 0;
        hi = 1;
    } else {
        double step = 1;
        lo = y - step;
        hi = y + step;
        while (f_(lo) > y) {
            step *= 2;
            lo = y - step;
            if (step > 1e300) throw GeometryError("inverse bracket diverged");
        }
        step = 1;
        while (f_(hi) < y) {
            step *= 2;
            hi = y + step;
            if (step > 1e300) throw GeometryError("inverse bracket diverged");
        }
    }
    auto g = [&](double x) { return f_(x) - y; };
    double glo = g(lo), ghi = g(hi);
    if (glo == 0) return lo;
    if (ghi == 0) return hi;
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi,
                                               boost::math::tools::eps_tolerance<double>(53), iters);
    return 0.5 * (r.first + r.second);
}

IntervalMap IntervalMap::inverse_map() const {
    IntervalMap self = *this;
    IntervalMap out([self](double y) { return self.inverse(y); }, domain_,
                    provenance_ + "^-1");
    out.inv_ = f_;
    if (df_) {
        out.df_ = [self](double y) { return 1.0 / self.derivative(self.inverse(y)); };
    }
    if (disp_) {
        // f^-1(y) - y = -(f(x) - x) at x = f^-1(y)
        out.disp_ = [self](double y) { return -self.displacement(self.inverse(y)); };
    }
    return out;
}

IntervalMap compose(const IntervalMap& f, const IntervalMap& g) {
    IntervalMap out([f, g](double x) { return f(g(x)); }, f.domain(),
                    f.provenance() + "*" + g.provenance());
    if (f.has_derivative() && g.has_derivative()) {
        out.with_derivative([f, g](double x) { return f.derivative(g(x)) * g.derivative(x); });
    }
    if (f.has_inverse() && g.has_inverse()) {
        out.with_inverse([f, g](double y) { return g.inverse(f.inverse(y)); });
    }
    out.with_displacement([f, g](double x) {
        double y = g(x);
        return g.displacement(x) + f.displacement(y);
    });
    return out;
}

IntervalMap identity_map(Domain d) {
    IntervalMap id([](double x) { return x; }, d, "id");
    id.with_derivative([](double) { return 1.0; });
    id.with_inverse([](double y) { return y; });
    id.with_displacement([](double) { return 0.0; });
    return id;
}

IntervalMap iterate(const IntervalMap& f, long n) {
    if (n == 0) return identity_map(f.domain());
    IntervalMap base = n < 0 ? f.inverse_map() : f;
    IntervalMap acc = base;
    for (long i = 1; i < std::labs(n); ++i) acc = compose(base, acc);
    return acc;
}

std::vector<double> interior_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * double(i + 1) / double(n + 1);
    return g;
}

MapCheck check_map(const IntervalMap& f, std::size_t grid, double lo, double hi) {
    MapCheck c;
    if (f.domain() == Domain::unit_interval) {
        lo = 0;
        hi = 1;
    } else if (f.domain() == Domain::circle_lift) {
        lo = 0;
        hi = 1;
    }
    std::vector<double> xs(grid);
    for (std::size_t i = 0; i < grid; ++i) xs[i] = lo + (hi - lo) * double(i) / double(grid - 1);
    double prev = f(xs[0]);
    for (std::size_t i = 1; i < grid; ++i) {
        double cur = f(xs[i]);
        if (!(cur > prev)) c.monotone = false;
        prev = cur;
    }
    if (f.domain() == Domain::unit_interval) {
        c.endpoint_error = std::max(std::abs(f(0.0)), std::abs(f(1.0) - 1.0));
    }
    if (f.domain() == Domain::circle_lift) {
        for (double x : xs) c.lift_error = std::max(c.lift_error, std::abs(f(x + 1) - f(x) - 1));
    }
    return c;
}

}  // namespace solvact::dynamics
