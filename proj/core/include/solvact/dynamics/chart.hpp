#pragma once

#include <string>

namespace solvact::dynamics {

enum class ChartKind { logistic, mt_flat };

/// Increasing diffeomorphism R -> (0,1).
///
/// logistic: x = 1 / (1 + e^-u).
/// mt_flat:  x = 1/2 + (1/2) (u/s) ln s / (1 + ln s), s = sqrt(u^2 + e^2).
///   Near the endpoints the distance to {0,1} is about 1 / (2 (1 + ln|u|)),
///   so |u| ~ exp(1 / (2 dist)). Conjugates of affine maps then have germs
///   tangent to the identity at 0 and 1.
class Chart {
public:
    explicit Chart(ChartKind kind) : kind_(kind) {}

    ChartKind kind() const { return kind_; }
    std::string name() const;

    double forward(double u) const;
    /// -inf / +inf at the endpoints. In the mt_flat tails u overflows once the
    /// distance to an endpoint drops below about 7e-4.
    double inverse(double x) const;
    double derivative(double u) const;

    /// forward(slope * inverse(x) + offset) for slope > 0. In the mt_flat tails
    /// the chart coordinate overflows binary64 long before x reaches the
    /// endpoint, so there the map is evaluated on L = ln|u|.
    double conjugate_affine(double slope, double offset, double x) const;

private:
    ChartKind kind_;
};

Chart chart_from_name(const std::string& name);

}  // namespace solvact::dynamics
