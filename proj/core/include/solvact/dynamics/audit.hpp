#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "solvact/affine/affine.hpp"
#include "solvact/dynamics/action.hpp"
#include "solvact/spectral/spectral.hpp"

namespace solvact::dynamics {

struct Tolerances {
    double eta = 0.5;
    double delta = 0;  ///< 0: calibrate from eta and the number of maps
    FdSchedule fd;
    double derivative_tol = 1e-6;
    std::size_t grid = 1000;
    std::size_t near_identity_grid = 200;
};

// ---------------------------------------------------------------------------
// Multiplier audit

struct MultiplierAudit {
    GroupElement g;
    double fixed_point = 0;
    double measured = 0;
    double expected = 0;  ///< λ^k
    double error = 0;
    double tolerance = 0;
    bool pass = false;
};

/// First sign change of f(x) - x on a grid of (0,1), refined by bisection to
/// width 1e-14. A run of exact zeros between opposite signs resolves to its
/// leftmost grid point.
/// Throws NoInteriorFixedPoint.
double interior_fixed_point(const IntervalMap& f, std::size_t grid = 1000);

MultiplierAudit multiplier_audit(const Action& action, const GroupElement& g,
                                 const affine::AffineRepresentation& rep,
                                 const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Composition estimate

/// δ such that k maps in U_δ satisfy the composition estimate with slack η:
/// δ_1 = 1, δ_k(η) = min(δ_{k-1}(η/2), (η/2) / (k - 1 + η/2)).
/// With mixed signs the inverses lie in U_{δ/(1-δ)} and each contributes an
/// extra δ|f^-1(x) - x|, so additionally δ/(1-δ) <= δ_k(η/2) and
/// δ <= η / (2 (k + η)).
double calibrate_delta(std::size_t k, double eta, bool mixed_signs);

struct CompositionResult {
    double residual = 0;
    double bound = 0;
    double max_displacement = 0;
    bool pass = false;
};

/// sup-grid |Df - 1| over (0,1); exact derivative when available.
double near_identity_radius(const IntervalMap& f, std::size_t grid = 200);

/// |[f_k^{e_k} ∘ ... ∘ f_1^{e_1}(x) - x] - Σ e_i (f_i(x) - x)| against
/// η max_j |f_j(x) - x|. Throws PreconditionError when some map is not in
/// U_delta.
CompositionResult composition_estimate_test(const std::vector<IntervalMap>& maps,
                                            const std::vector<int>& signs, double x, double eta,
                                            double delta, std::size_t grid = 200);

/// x + ε Σ_j a_j sin(jπx)/(jπ) with Σ|a_j| = 1: fixes 0 and 1, |Df - 1| <= ε.
IntervalMap sine_perturbation(const std::vector<double>& a, double eps);

struct HarnessStats {
    std::size_t trials = 0;
    std::size_t violations = 0;
    double worst_ratio = 0;  ///< max residual / bound
    double eta = 0;
    std::size_t max_maps = 0;
};

/// Random trials: k in [1, max_maps], random signs, random sine maps strictly
/// inside U_δ with δ = calibrate_delta(k, eta, true), random x.
HarnessStats composition_harness(std::size_t trials, std::uint64_t seed, double eta = 0.5,
                                 std::size_t max_maps = 6);

/// Logistic flow on [0,1]: ξ^s(x) = x e^s / (1 - x + x e^s); sup|Dξ^s - 1| = e^|s| - 1.
IntervalMap logistic_flow(double s);

struct FlowRootResult {
    std::size_t q = 0;
    std::size_t samples = 0;
    std::size_t violations = 0;
    double worst_ratio = 0;
    double delta = 0;
    double time = 0;  ///< t, with ξ^{t/q} in U_δ
};

/// |(f(x) - x) - q (f^{1/q}(x) - x)| <= η |f^{1/q}(x) - x| for f = ξ^t,
/// f^{1/q} = ξ^{t/q}, with f computed as q-fold composition of the root.
FlowRootResult flow_root_test(std::size_t q, std::size_t samples, double eta = 0.5);

// ---------------------------------------------------------------------------
// Displacement tracking

struct DisplacementVector {
    long k = 0;
    double x = 0;
    std::vector<double> delta;
    double sup_norm = 0;
    double norm_star = 0;
};

struct TrackOptions {
    /// true: x_k = a^{-k} x0 toward 0 and the relation Δ(a^-1 x) ≈ Da^-1(0) A^T Δ(x);
    /// false: x_k = a^k x0 toward 1 and Δ(a x) ≈ Da(1) A^-T Δ(x).
    bool toward_zero = true;
    /// Derivative of the stepping map at the limit endpoint; estimated by a
    /// one-sided difference quotient when absent.
    std::optional<double> endpoint_derivative;
    double cone_eps = 0.2;
    double kappa = 1.05;
};

struct DisplacementTrack {
    std::vector<DisplacementVector> points;
    std::vector<std::vector<double>> directions;  ///< Δ / |Δ|_2
    /// residual[k] = |Δ(x_{k+1}) - D M Δ(x_k)|_sup / |Δ(x_k)|_sup; the last entry is NaN.
    std::vector<double> residuals;
    double endpoint_derivative = 0;
    std::vector<bool> in_cone;
    std::optional<long> cone_entry;  ///< first k after which every point is in the cone
    bool stays_in_cone = false;
    double min_growth_in_cone = 0;  ///< min |Δ(x_{k+1})|_* / |Δ(x_k)|_* inside the cone
    bool grows_by_kappa = false;
    double cone_eps = 0;
    double kappa = 0;

    /// k, x, delta_1..delta_d, norm_star, residual
    std::string to_csv() const;
};

/// Throws DegenerateDisplacement when Δ(x0) = 0.
DisplacementTrack displacement_track(const Action& action, double x0, long steps,
                                     const TrackOptions& opts = {});

/// 1 - |cos| of the angle between u and v.
double misalignment(const std::vector<double>& u, const std::vector<double>& v);

// ---------------------------------------------------------------------------
// Conjugacy extraction

struct ConjugacyOptions {
    double base_point = 0.5;
    long max_height = 64;    ///< numerators and denominators of the seed exponents
    double range = 8;        ///< seed only |<t,v>| <= range
    double target_gap = 1e-3;  ///< refine until consecutive images are this close in x (normalized)
    double tau_gap = 5e-4;     ///< ... and consecutive coordinate values this close
    std::size_t max_samples = 200000;
    double plateau_min = 1e-3;  ///< normalized width of a reported plateau
};

struct Plateau {
    double lo = 0;
    double hi = 0;
    double value = 0;
    double width() const { return hi - lo; }
};

/// Semiconjugacy coordinate: F(x) = sup{<t,v> : b^v(base) <= x}, over the
/// sampled exponents.
struct Coordinate {
    std::vector<double> xs;      ///< b^v(base), sorted
    std::vector<double> values;  ///< running max of <t,v> in the same order
    std::vector<Plateau> plateaus;  ///< maximal x-intervals free of samples (gaps)
    double span = 0;    ///< x-extent of the samples; normalized widths divide by it
    double scale = 1;   ///< affine normalization F -> scale F + shift
    double shift = 0;
    std::size_t samples = 0;
    bool monotone = true;

    /// Raw coordinate; NaN left of every sample.
    double raw(double x) const;
    double operator()(double x) const { return scale * raw(x) + shift; }
    /// Pin F(x1) = y1, F(x2) = y2.
    void pin(double x1, double y1, double x2, double y2);
    /// Widest plateau, or nullopt.
    std::optional<Plateau> widest_gap() const;
};

/// Throws UnsupportedStructure when the representation is not faithful
/// (translation part not dense).
Coordinate conjugacy_extract(const Action& action, const affine::AffineRepresentation& rep,
                             const ConjugacyOptions& opts = {});

}  // namespace solvact::dynamics
