#pragma once

#include <functional>
#include <string>
#include <vector>

#include "solvact/affine/affine.hpp"
#include "solvact/dynamics/chart.hpp"
#include "solvact/dynamics/interval_map.hpp"
#include "solvact/group/group.hpp"

namespace solvact::dynamics {

using exact::RationalMatrix;
using exact::RationalVector;
using group::GroupContext;
using group::GroupElement;

/// An action of Z ⋉_A Q^d by IntervalMaps: any normal form a^k b^v can be
/// evaluated. Evaluators are pure, so one Action may be shared across threads.
struct Action {
    GroupContext ctx;
    Domain domain = Domain::unit_interval;
    std::string provenance;
    std::function<IntervalMap(const GroupElement&)> element;

    std::size_t dim() const { return ctx.dim(); }
    IntervalMap a() const;
    IntervalMap a_inv() const;
    IntervalMap b(std::size_t i) const;
    IntervalMap translation(const RationalVector& v) const;
};

/// ψ(g) = M_{λ^k} T_{<t,v>} read through a chart: x -> χ(λ^k (χ^{-1}(x) + <t,v>)).
Action chart_conjugate(const affine::AffineRepresentation& rep, const Chart& chart);

/// The affine representation itself, acting on the line.
Action affine_action(const affine::AffineRepresentation& rep);

struct RelationResidual {
    std::string name;
    double residual = 0;  ///< sup over the sample points
};

/// Sup residuals of b_i b_j = b_j b_i and a b_i a^-1 = b^{A e_i} on the given points.
std::vector<RelationResidual> relation_residuals(const Action& action,
                                                 const std::vector<double>& points);
double max_residual(const std::vector<RelationResidual>& r);

}  // namespace solvact::dynamics
