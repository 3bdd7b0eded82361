#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "solvact/dynamics/action.hpp"

namespace solvact::constructions {

using dynamics::Action;
using dynamics::IntervalMap;
using exact::RationalMatrix;

struct RotationEstimate {
    double rho = 0;        ///< (F^N(x) - x) / N
    double error_bar = 0;  ///< 2 / N
    std::size_t iterates = 0;
};

/// Throws PreconditionError when the map is not a circle lift, i.e. F(x+1) = F(x) + 1
/// fails by more than 1e-10 on a grid.
RotationEstimate rotation_number_estimate(const IntervalMap& lift, std::size_t iterates,
                                          double x0 = 0);

struct PeriodicScan {
    bool found = false;
    long period = 0;
    long shift = 0;
    double x = 0;
    /// min |F^p(x) - x - m| over the grid, periods and the two integers m nearest to F^p(x) - x
    double min_margin = 0;
};

/// Looks for roots of F^p(x) - x - m, p <= max_period, through sign changes
/// and exact zeros along a grid of [0,1).
PeriodicScan periodic_point_scan(const IntervalMap& lift, long max_period, std::size_t grid = 200);

struct DenjoyOptions {
    double rotation = 0.6180339887498949;  ///< (sqrt 5 - 1) / 2
    /// Total length of the wandering gaps, Σ_n ℓ_n with ℓ_n = c / (n^2 + 1).
    double gap_budget = 0.5;
    /// Gaps J_n with |n| <= table_radius are explicit; shorter ones are spread
    /// uniformly over the minimal set.
    long table_radius = 100000;
    /// Flow times of φ_I are <s, .>; default: E^c_* when A has one, otherwise
    /// s_i = sqrt(p_i) for the first d primes.
    std::optional<std::vector<double>> s;
};

class DenjoyData;

/// a acts by a Denjoy homeomorphism g with gaps J_n = g^n(J_0), b^h by
/// g^n ∘ φ_I(A^{-n} h) ∘ g^{-n} on J_n and the identity on the minimal set.
struct CircleAction {
    std::shared_ptr<const DenjoyData> data;
    Action action;  ///< circle lifts
    double rotation = 0;
    double gap_budget = 0;
    std::vector<double> s;
    std::string s_choice;

    struct Gap {
        long n = 0;
        double start = 0;
        double length = 0;
    };
    /// Explicit gap J_n, |n| <= table_radius.
    Gap gap(long n) const;
    /// Points strictly inside gaps J_n, |n| <= gaps.
    std::vector<double> gap_samples(long gaps = 20, std::size_t per_gap = 8) const;
    /// Largest |F(x+1) - F(x) - 1| over generators and a grid.
    double lift_defect(std::size_t grid = 200) const;
};

/// Throws GeometryError when the gap budget is not in (0,1) and
/// PreconditionError when the rotation target is (close to) rational.
CircleAction denjoy_circle_build(const RationalMatrix& a, const DenjoyOptions& opts = {});

}  // namespace solvact::constructions
