#pragma once

namespace solvact::constructions {

/// Flow of the vector field X(u) = u^2 (1 - u)^2 on [0,1]. X vanishes to
/// second order at both ends, so every time-t map is tangent to the identity
/// there. The flow is evaluated through the exact time coordinate
///   τ(u) = -1/u + 1/(1-u) + 2 ln(u / (1-u)),   ξ^t(u) = τ^{-1}(τ(u) + t).
double bump_field(double u);
double bump_time(double u);

/// ξ^t(u) - u, accurate relative to its own size. Endpoints and u outside
/// (0,1) are fixed.
double bump_flow_displacement(double t, double u);
double bump_flow(double t, double u);
/// Dξ^t(u) = X(ξ^t(u)) / X(u); 1 at the endpoints.
double bump_flow_derivative(double t, double u);

}  // namespace solvact::constructions
