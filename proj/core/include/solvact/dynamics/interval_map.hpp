#pragma once

#include <functional>
#include <string>
#include <vector>

namespace solvact::dynamics {

using Fn = std::function<double(double)>;

enum class Domain { unit_interval, line, circle_lift };

std::string to_string(Domain d);

/// Central-difference steps for Richardson extrapolation.
struct FdSchedule {
    std::vector<double> steps{1e-4, 5e-5, 2.5e-5};
};

/// Derivative of f at x: central differences at each step of the schedule,
/// combined by Richardson extrapolation (each step halves the previous one).
double fd_derivative(const Fn& f, double x, const FdSchedule& schedule = {});

/// Increasing homeomorphism of [0,1], of R, or lift of a circle map, given by
/// evaluators. Derivative, inverse and displacement evaluators are optional;
/// without them the derivative comes from finite differences, the inverse
/// from bracketed root finding and the displacement from f(x) - x.
class IntervalMap {
public:
    IntervalMap() = default;
    IntervalMap(Fn f, Domain domain, std::string provenance);

    IntervalMap& with_derivative(Fn df);
    IntervalMap& with_inverse(Fn inv);
    /// Accurate evaluator of f(x) - x, useful when the displacement is far
    /// smaller than x.
    IntervalMap& with_displacement(Fn disp);

    double operator()(double x) const { return f_(x); }
    double displacement(double x) const;
    double derivative(double x) const;
    double inverse(double y) const;
    bool has_derivative() const { return static_cast<bool>(df_); }
    bool has_inverse() const { return static_cast<bool>(inv_); }

    Domain domain() const { return domain_; }
    const std::string& provenance() const { return provenance_; }

    /// The inverse as a map; f and its inverse swap roles.
    IntervalMap inverse_map() const;

private:
    Fn f_;
    Fn df_;
    Fn inv_;
    Fn disp_;
    Domain domain_ = Domain::unit_interval;
    std::string provenance_;
};

/// f ∘ g. Derivatives and inverses compose when both sides provide them.
IntervalMap compose(const IntervalMap& f, const IntervalMap& g);
IntervalMap identity_map(Domain d);
/// f^n for any integer n.
IntervalMap iterate(const IntervalMap& f, long n);

struct MapCheck {
    bool monotone = true;
    double endpoint_error = 0;  ///< max |f(0)|, |f(1) - 1| (unit interval only)
    double lift_error = 0;      ///< max |f(x+1) - f(x) - 1| (circle lifts only)
    bool ok() const { return monotone && endpoint_error <= 1e-12 && lift_error <= 1e-10; }
};

/// Grid checks of the type invariants: strict monotonicity on `grid` points,
/// endpoint fixing for [0,1] maps, the lift identity for circle lifts. Line
/// maps are sampled on [lo, hi].
MapCheck check_map(const IntervalMap& f, std::size_t grid = 1000, double lo = -4.0,
                   double hi = 4.0);

/// n points evenly spaced strictly inside (lo, hi).
std::vector<double> interior_grid(double lo, double hi, std::size_t n);

}  // namespace solvact::dynamics
