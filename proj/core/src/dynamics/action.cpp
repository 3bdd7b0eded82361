#include "solvact/dynamics/action.hpp"

#include <algorithm>
#include <cmath>

namespace solvact::dynamics {

IntervalMap Action::a() const { return element(group::gen_a(ctx)); }

IntervalMap Action::a_inv() const { return element(group::invert(ctx, group::gen_a(ctx))); }

IntervalMap Action::b(std::size_t i) const { return element(group::gen_b(ctx, i)); }

IntervalMap Action::translation(const RationalVector& v) const {
    return element(group::translation(v));
}

Action chart_conjugate(const affine::AffineRepresentation& rep, const Chart& chart) {
    Action act{rep.ctx, Domain::unit_interval, "chart:" + chart.name(), {}};
    act.element = [rep, chart](const GroupElement& g) {
        affine::AffineMap m = rep.evaluate(g);
        double slope = m.slope.to_double();
        double offset = m.offset.to_double();
        IntervalMap f([chart, slope, offset](double x) { return chart.conjugate_affine(slope, offset, x); },
                      Domain::unit_interval, "chart:" + chart.name() + ":" + group::to_string(g));
        f.with_inverse([chart, slope, offset](double y) {
            return chart.conjugate_affine(1 / slope, -offset / slope, y);
        });
        return f;
    };
    return act;
}

Action affine_action(const affine::AffineRepresentation& rep) {
    Action act{rep.ctx, Domain::line, "affine", {}};
    act.element = [rep](const GroupElement& g) {
        affine::AffineMap m = rep.evaluate(g);
        double slope = m.slope.to_double();
        double offset = m.offset.to_double();
        IntervalMap f([slope, offset](double x) { return slope * x + offset; }, Domain::line,
                      "affine:" + group::to_string(g));
        f.with_derivative([slope](double) { return slope; });
        f.with_inverse([slope, offset](double y) { return (y - offset) / slope; });
        return f;
    };
    return act;
}

std::vector<RelationResidual> relation_residuals(const Action& action,
                                                 const std::vector<double>& points) {
    std::vector<RelationResidual> out;
    const std::size_t d = action.dim();
    std::vector<IntervalMap> b;
    for (std::size_t i = 0; i < d; ++i) b.push_back(action.b(i));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            double r = 0;
            for (double x : points) r = std::max(r, std::abs(b[i](b[j](x)) - b[j](b[i](x))));
            out.push_back({"b" + std::to_string(i + 1) + " b" + std::to_string(j + 1) + " = b" +
                               std::to_string(j + 1) + " b" + std::to_string(i + 1),
                           r});
        }
    }
    IntervalMap a = action.a();
    IntervalMap ainv = action.a_inv();
    for (std::size_t i = 0; i < d; ++i) {
        RationalVector col(d);
        for (std::size_t r = 0; r < d; ++r) col[r] = action.ctx.A()(r, i);
        IntervalMap rhs = action.translation(col);
        double r = 0;
        for (double x : points) r = std::max(r, std::abs(a(b[i](ainv(x))) - rhs(x)));
        out.push_back({"a b" + std::to_string(i + 1) + " a^-1 = b^(A e" + std::to_string(i + 1) + ")",
                       r});
    }
    return out;
}

double max_residual(const std::vector<RelationResidual>& r) {
    double m = 0;
    for (const auto& x : r) m = std::max(m, x.residual);
    return m;
}

}  // namespace solvact::dynamics
