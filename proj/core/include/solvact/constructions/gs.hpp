#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "solvact/dynamics/action.hpp"

namespace solvact::constructions {

using dynamics::Action;
using dynamics::IntervalMap;
using exact::BigInt;
using exact::Rational;

/// Hermite knot of the base map on [0,1].
struct SplineKnot {
    double x = 0;
    double y = 0;
    double slope = 0;
};

/// Recipe for the base map f of the Ghys–Sergiescu construction.
struct GSSpec {
    enum class Kind { linear, two_fixed, spline };
    Kind kind = Kind::two_fixed;
    std::vector<SplineKnot> knots;  ///< spline only

    static GSSpec linear() { return {Kind::linear, {}}; }
    static GSSpec two_fixed() { return {Kind::two_fixed, {}}; }
    static GSSpec spline(std::vector<SplineKnot> k) { return {Kind::spline, std::move(k)}; }
};

/// f on the line with f(x+1) = f(x) + n and f(0) = 0: a monotone cubic
/// Hermite spline on [0,1] extended by the first identity.
class GSBase {
public:
    GSBase(long n, const GSSpec& spec);

    long n() const { return n_; }
    const std::vector<SplineKnot>& knots() const { return knots_; }
    bool is_linear() const { return linear_; }

    double operator()(double x) const;
    double inverse(double y) const;
    double derivative(double x) const;
    /// f^k for any integer k.
    double power(long k, double x) const;

    IntervalMap map() const;
    /// Roots of f(x) - x in [0,1).
    const std::vector<double>& fixed_points() const { return fixed_; }
    /// max |f(x+1) - f(x) - n| on a grid of [-4,4].
    double lift_defect(std::size_t grid = 1000) const;

private:
    double spline(double r) const;
    double spline_derivative(double r) const;
    double spline_inverse(double y) const;

    long n_ = 2;
    bool linear_ = false;
    std::vector<SplineKnot> knots_;
    std::vector<double> fixed_;
};

/// θ(p/n^q) = f^{-q} T_p f^q and θ(a^k b^v) = f^k ∘ θ(v) for BS(1,n) = Z ⋉_n Z[1/n].
struct GSAction {
    std::shared_ptr<const GSBase> base;
    Action action;

    long n() const { return base->n(); }
    /// θ(v)(x). Throws UnsupportedStructure when v is not in Z[1/n].
    double theta(const Rational& v, double x) const;
    /// f^{-q}(f^q(x) + p) for the given encoding, reduced or not.
    double theta_encoded(const BigInt& p, long q, double x) const;
};

/// Throws PreconditionError when the recipe breaks f(x+1) = f(x) + n,
/// f(0) = 0, monotonicity or C¹ periodicity (equal end slopes), and when n < 2.
GSAction gs_build(long n, const GSSpec& spec = {});

/// max |θ_{(np, q+1)} - θ_{(p,q)}| over random encodings and the grid.
double gs_well_definedness(const GSAction& gs, std::size_t trials, std::uint64_t seed,
                           const std::vector<double>& grid);

/// max |θ(g1 g2)(x) - θ(g1)(θ(g2)(x))| over random pairs (n^k, p/n^q),
/// |k| <= 3, 0 <= q <= 6, |p| <= 64.
double gs_homomorphism(const GSAction& gs, std::size_t pairs, std::uint64_t seed,
                       const std::vector<double>& grid);

}  // namespace solvact::constructions
