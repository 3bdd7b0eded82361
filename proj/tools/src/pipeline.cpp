#include "pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "solvact/affine/affine.hpp"
#include "solvact/constructions/circle.hpp"
#include "solvact/constructions/flowblock.hpp"
#include "solvact/constructions/gs.hpp"
#include "solvact/constructions/rotation.hpp"
#include "solvact/dynamics/audit.hpp"
#include "solvact/errors.hpp"
#include "solvact/group/group.hpp"
#include "solvact/spectral/spectral.hpp"

namespace solvact::cli {

namespace {

using exact::Polynomial;
using exact::Rational;
using exact::RationalMatrix;
using exact::RationalVector;

std::string error_name(const std::exception& e) {
    if (dynamic_cast<const SingularMatrix*>(&e)) return "SingularMatrix";
    if (dynamic_cast<const NoPositiveRealEigenvalue*>(&e)) return "NoPositiveRealEigenvalue";
    if (dynamic_cast<const DegenerateEigenvalue*>(&e)) return "DegenerateEigenvalue";
    if (dynamic_cast<const UnsupportedStructure*>(&e)) return "UnsupportedStructure";
    if (dynamic_cast<const GeometryError*>(&e)) return "GeometryError";
    if (dynamic_cast<const DegenerateDisplacement*>(&e)) return "DegenerateDisplacement";
    if (dynamic_cast<const NoInteriorFixedPoint*>(&e)) return "NoInteriorFixedPoint";
    if (dynamic_cast<const InfiniteFamily*>(&e)) return "InfiniteFamily";
    if (dynamic_cast<const PreconditionError*>(&e)) return "PreconditionError";
    if (dynamic_cast<const DimensionError*>(&e)) return "DimensionError";
    if (dynamic_cast<const UnsupportedDegree*>(&e)) return "UnsupportedDegree";
    if (dynamic_cast<const InputError*>(&e)) return "InputError";
    return "Error";
}

json finite(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

json poly_json(const Polynomial& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(c.str());
    return a;
}

json algebraic_json(const spectral::RealAlgebraic& x) {
    return {{"minpoly", poly_json(x.minpoly)},
            {"minpoly_text", x.minpoly.str()},
            {"interval", {x.interval.lo.str(), x.interval.hi.str()}},
            {"approx", x.value}};
}

json field_json(const exact::NumberFieldElement& x) {
    if (x.is_rational()) return x.rational_value().str();
    json c = json::array();
    for (const auto& r : x.coords()) c.push_back(r.str());
    return {{"coords", c}, {"approx", x.to_double()}};
}

json affine_json(const affine::AffineMap& m) {
    return {{"slope", field_json(m.slope)}, {"offset", field_json(m.offset)}};
}

json doubles(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(finite(x));
    return a;
}

json rationals(const RationalVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

std::vector<double> to_doubles(const RationalVector& v) {
    std::vector<double> out;
    for (const auto& x : v) out.push_back(x.to_double());
    return out;
}

template <class T>
T param(const json& obj, const char* key, T fallback) {
    if (!obj.is_object() || !obj.contains(key)) return fallback;
    try {
        return obj[key].get<T>();
    } catch (const json::exception&) {
        throw InputError(std::string(key) + ": wrong type");
    }
}

struct Verdicts {
    json list = json::array();

    void add(const std::string& name, json value, const std::string& cmp, json tol, bool pass) {
        list.push_back({{"name", name},
                        {"value", std::move(value)},
                        {"comparison", cmp},
                        {"tolerance", std::move(tol)},
                        {"pass", pass}});
    }
    void below(const std::string& name, double v, double tol) { add(name, finite(v), "<", tol, v < tol); }
    void above(const std::string& name, double v, double tol) { add(name, finite(v), ">", tol, v > tol); }
    void equal(const std::string& name, const json& v, const json& expected) {
        add(name, v, "==", expected, v == expected);
    }
};

struct Context {
    const Scenario& sc;
    std::uint64_t seed;
    std::optional<spectral::SpectralClassification> cls;
    std::optional<affine::AffineRepresentation> rep;
    std::vector<std::pair<std::string, std::string>> files;

    const RationalMatrix& A() const {
        if (!sc.matrix) throw InputError("matrix: required by this stage");
        return *sc.matrix;
    }
    const affine::AffineRepresentation& representation() {
        if (!rep) rep = affine::synthesize(A());
        return *rep;
    }
};

// ---------------------------------------------------------------------------

void stage_classify(Context& ctx, json& res, Verdicts& v) {
    const auto& cls = ctx.cls.emplace(spectral::classify(ctx.A()));
    res["dimension"] = ctx.A().rows();
    res["charpoly"] = poly_json(cls.charpoly);
    res["charpoly_text"] = cls.charpoly.str();
    json factors = json::array();
    for (const auto& f : cls.factors.factors)
        factors.push_back({{"factor", poly_json(f.factor)}, {"multiplicity", f.multiplicity}});
    res["factors"] = factors;
    res["irreducible"] = cls.irreducible_over_Q;
    res["hyperbolic"] = cls.hyperbolic;
    res["unit_circle"] = {{"y_polynomial", poly_json(cls.profile.y_polynomial)},
                          {"roots_in_open_band", cls.profile.roots_in_open_band},
                          {"root_at_one", cls.profile.root_at_one},
                          {"root_at_minus_one", cls.profile.root_at_minus_one},
                          {"unit_roots", cls.profile.unit_roots()}};
    res["has_positive_real_eigenvalue"] = cls.has_positive_real_eigenvalue;
    json pos = json::array();
    for (const auto& x : cls.positive_real_eigenvalues) pos.push_back(algebraic_json(x));
    res["positive_real_eigenvalues"] = pos;
    res["chosen_lambda"] = cls.chosen_lambda ? algebraic_json(*cls.chosen_lambda) : json(nullptr);

    const json& e = ctx.sc.expect;
    if (e.contains("charpoly"))
        v.equal("charpoly", res["charpoly"], rationals(parse_vector(e["charpoly"], "expect.charpoly")));
    if (e.contains("irreducible")) v.equal("irreducible over Q", res["irreducible"], e["irreducible"]);
    if (e.contains("hyperbolic")) v.equal("hyperbolic", res["hyperbolic"], e["hyperbolic"]);
    if (e.contains("unit_band_roots"))
        v.equal("y-polynomial roots in (-2,2)", res["unit_circle"]["roots_in_open_band"], e["unit_band_roots"]);
    if (e.contains("positive_real_eigenvalue"))
        v.equal("positive real eigenvalue", res["has_positive_real_eigenvalue"], e["positive_real_eigenvalue"]);
}

void stage_represent(Context& ctx, json& res, Verdicts& v) {
    const auto& rep = ctx.representation();
    auto cert = affine::faithfulness_certificate(rep);
    res["lambda"] = algebraic_json(rep.lambda_info);
    json t = json::array();
    for (const auto& x : rep.t) t.push_back(field_json(x));
    res["t"] = t;
    res["gauge"] = "first nonzero entry of t is 1";
    json gens = json::object();
    gens["a"] = affine_json(rep.evaluate(group::gen_a(rep.ctx)));
    for (std::size_t i = 0; i < rep.ctx.dim(); ++i)
        gens["b" + std::to_string(i + 1)] = affine_json(rep.evaluate(group::gen_b(rep.ctx, i)));
    res["generators"] = gens;
    res["faithful"] = cert.faithful;
    res["rank"] = cert.rank;
    res["witness"] = cert.witness ? rationals(*cert.witness) : json(nullptr);

    const json& e = ctx.sc.expect;
    if (e.contains("lambda_minpoly"))
        v.equal("lambda minimal polynomial", res["lambda"]["minpoly"],
                rationals(parse_vector(e["lambda_minpoly"], "expect.lambda_minpoly")));
    if (e.contains("faithful")) v.equal("faithful", res["faithful"], e["faithful"]);
    if (e.contains("generators"))
        for (const auto& [name, want] : e["generators"].items())
            v.equal("generator " + name, gens.contains(name) ? gens[name] : json(nullptr), want);
}

// ---------------------------------------------------------------------------

constructions::FlowParameter flow_parameter(const json& s) {
    using constructions::FlowParameter;
    if (s.is_null() || s == "central") return FlowParameter::central();
    if (s == "unstable") return FlowParameter::unstable();
    if (s.is_object() && s.contains("central")) {
        auto c = s["central"].get<std::vector<double>>();
        if (c.size() != 2) throw InputError("construction.s.central: expected two coefficients");
        return FlowParameter::central(c[0], c[1]);
    }
    if (s.is_array()) return FlowParameter::vector(s.get<std::vector<double>>());
    throw InputError("construction.s: expected \"central\", \"unstable\", {\"central\": [a, b]} or a vector");
}

void construct_flowblock(Context& ctx, const json& c, json& res, Verdicts& v) {
    const auto& A = ctx.A();
    const std::size_t d = A.rows();
    RationalVector t0(d, Rational(0));
    t0[0] = 1;
    if (c.contains("t0")) t0 = parse_vector(c["t0"], "construction.t0");
    constructions::BlockSpec spec;
    spec.ratio = param(c, "ratio", spec.ratio);
    spec.profile_radius = param(c, "profile_radius", spec.profile_radius);
    const json expect = c.contains("expect") ? c["expect"] : json::object();

    auto summarize = [&](const constructions::FlowBlockAction& fb, const std::string& tag) {
        json r;
        r["s_kind"] = constructions::to_string(fb.kind());
        r["s"] = doubles(fb.s());
        r["profile"] = {{"radius", spec.profile_radius},
                        {"c0", finite(fb.profile.c[static_cast<std::size_t>(spec.profile_radius)])},
                        {"sup_ratio", finite(fb.profile.sup_ratio)},
                        {"inf_ratio", finite(fb.profile.inf_ratio)}};
        auto rel = dynamics::relation_residuals(fb.action, constructions::flowblock_samples(fb));
        json rr = json::array();
        for (const auto& x : rel) rr.push_back({{"relation", x.name}, {"residual", finite(x.residual)}});
        r["relations"] = rr;
        v.below(tag + "relation residual", dynamics::max_residual(rel), ctx.sc.tol.relation);
        return r;
    };

    auto fb = constructions::flowblock_build(A, flow_parameter(c.contains("s") ? c["s"] : json(nullptr)), t0, spec);
    res["t0"] = rationals(t0);
    res["ratio"] = spec.ratio;
    res["flow"] = summarize(fb, "");
    ctx.files.emplace_back("multipliers.csv", fb.profile.to_csv());
    if (expect.contains("sup_ratio_max"))
        v.below("multiplier sup-ratio", fb.profile.sup_ratio, expect["sup_ratio_max"].get<double>());
    if (expect.contains("sup_ratio_min"))
        v.above("multiplier sup-ratio", fb.profile.sup_ratio, expect["sup_ratio_min"].get<double>());

    if (param(c, "dichotomy", false)) {
        auto un = constructions::flowblock_build(A, constructions::FlowParameter::unstable(), t0, spec);
        res["unstable"] = summarize(un, "unstable ");
        ctx.files.emplace_back("multipliers-unstable.csv", un.profile.to_csv());
        v.above("unstable multiplier sup-ratio", un.profile.sup_ratio,
                param(expect, "unstable_sup_ratio_min", 1e3));
    }

    RationalVector probe_t = c.contains("probe_t0") ? parse_vector(c["probe_t0"], "construction.probe_t0") : t0;
    auto probe = constructions::faithfulness_probe(fb, probe_t);
    res["faithfulness_probe"] = {{"t0", rationals(probe_t)},
                                 {"applicable", probe.applicable},
                                 {"moved", probe.moved},
                                 {"k", probe.k},
                                 {"multiplier", finite(probe.multiplier)},
                                 {"x", finite(probe.x)},
                                 {"displacement", finite(probe.displacement)},
                                 {"irreducible", probe.irreducible},
                                 {"inconsistent", probe.inconsistent},
                                 {"note", probe.note}};
    v.equal("faithfulness probe consistent", !probe.inconsistent, true);
    if (expect.contains("moved")) v.equal("faithfulness probe moved point", probe.moved, expect["moved"]);
}

constructions::GSSpec gs_spec(const json& base) {
    using constructions::GSSpec;
    if (base.is_null() || base == "two-fixed") return GSSpec::two_fixed();
    if (base == "linear") return GSSpec::linear();
    if (base.is_object() && base.contains("knots")) {
        std::vector<constructions::SplineKnot> knots;
        for (const auto& k : base["knots"]) {
            auto t = k.get<std::vector<double>>();
            if (t.size() != 3) throw InputError("construction.base.knots: each knot is [x, y, slope]");
            knots.push_back({t[0], t[1], t[2]});
        }
        return GSSpec::spline(std::move(knots));
    }
    throw InputError("construction.base: expected \"linear\", \"two-fixed\" or {\"knots\": [...]}");
}

void construct_gs(Context& ctx, const json& c, json& res, Verdicts& v) {
    const auto& A = ctx.A();
    if (A.rows() != 1 || !A(0, 0).is_integer())
        throw UnsupportedStructure("the Ghys-Sergiescu construction needs A = [[n]] with an integer n");
    const long n = A(0, 0).numerator().get_si();
    auto gs = constructions::gs_build(n, gs_spec(c.contains("base") ? c["base"] : json(nullptr)));
    const std::size_t grid_n = param<std::size_t>(c, "grid", 10000);
    const auto grid = dynamics::interior_grid(-2, 2, grid_n);
    const auto small = dynamics::interior_grid(-2, 2, std::max<std::size_t>(grid_n / 10, 10));
    const double wd = constructions::gs_well_definedness(gs, param<std::size_t>(c, "trials", 50), ctx.seed, grid);
    const double hom = constructions::gs_homomorphism(gs, param<std::size_t>(c, "pairs", 200), ctx.seed, small);
    const double rel = dynamics::max_residual(dynamics::relation_residuals(gs.action, grid));
    res["n"] = n;
    res["fixed_points"] = doubles(gs.base->fixed_points());
    res["lift_defect"] = finite(gs.base->lift_defect());
    res["well_definedness"] = finite(wd);
    res["homomorphism"] = finite(hom);
    res["relations"] = finite(rel);
    v.below("f(x+1) - f(x) - n", gs.base->lift_defect(), 1e-10);
    v.below("well-definedness residual", wd, 1e-9);
    v.below("homomorphism residual", hom, 1e-9);
    v.below("relation residual", rel, 1e-9);

    affine::AffineRepresentation rep = affine::synthesize(A);
    auto F = dynamics::conjugacy_extract(gs.action, rep);
    auto gap = F.widest_gap();
    double widest = gap ? gap->width() / F.span : 0.0;
    res["conjugacy"] = {{"samples", F.samples},
                        {"monotone", F.monotone},
                        {"plateaus", F.plateaus.size()},
                        {"widest_gap_normalized", finite(widest)},
                        {"widest_gap", gap ? json{finite(gap->lo), finite(gap->hi)} : json(nullptr)}};
    v.equal("coordinate monotone", F.monotone, true);
    const json expect = c.contains("expect") ? c["expect"] : json::object();
    if (expect.contains("fixed_points"))
        v.equal("fixed points in [0,1)", gs.base->fixed_points().size(), expect["fixed_points"]);
    if (param(expect, "plateau", false))
        v.above("widest plateau (normalized)", widest, param(expect, "plateau_min", 1e-3));
    else if (expect.contains("plateau"))
        v.equal("plateaus", F.plateaus.size(), 0);
}

void construct_denjoy(Context& ctx, const json& c, json& res, Verdicts& v) {
    const auto& A = ctx.A();
    constructions::DenjoyOptions opts;
    if (c.contains("rotation") && c["rotation"] != "golden") opts.rotation = param(c, "rotation", opts.rotation);
    opts.gap_budget = param(c, "gap_budget", opts.gap_budget);
    opts.table_radius = param(c, "table_radius", opts.table_radius);
    if (c.contains("s")) opts.s = c["s"].get<std::vector<double>>();
    const std::size_t N = param<std::size_t>(c, "iterates", 100000);
    const long P = param<long>(c, "max_period", 100);

    auto circle = constructions::denjoy_circle_build(A, opts);
    auto rho = constructions::rotation_number_estimate(circle.action.a(), N);
    auto scan = constructions::periodic_point_scan(circle.action.a(), P);
    res["rotation_target"] = circle.rotation;
    res["gap_budget"] = circle.gap_budget;
    res["s"] = doubles(circle.s);
    res["s_choice"] = circle.s_choice;
    res["a"] = {{"rotation_number", finite(rho.rho)}, {"error_bar", rho.error_bar}, {"iterates", N}};
    res["periodic_scan"] = {{"max_period", P},
                            {"found", scan.found},
                            {"period", scan.period},
                            {"min_margin", finite(scan.min_margin)}};
    v.below("a rotation number error", std::abs(rho.rho - circle.rotation), param(c, "rotation_tolerance", 1e-4));
    v.equal("periodic point of a", scan.found, false);
    json bs = json::array();
    for (std::size_t i = 0; i < A.rows(); ++i) {
        auto r = constructions::rotation_number_estimate(circle.action.b(i), N / 10);
        bs.push_back({{"rotation_number", finite(r.rho)}, {"error_bar", r.error_bar}});
        v.below("b" + std::to_string(i + 1) + " rotation number", std::abs(r.rho), r.error_bar);
    }
    res["b"] = bs;
    double rel = dynamics::max_residual(dynamics::relation_residuals(circle.action, circle.gap_samples(20, 8)));
    res["relations_on_gaps"] = finite(rel);
    v.below("relation residual on gap samples", rel, ctx.sc.tol.relation);
    double lift = circle.lift_defect();
    res["lift_defect"] = finite(lift);
    v.below("lift commutes with integer translation", lift, 1e-10);
}

void stage_construct(Context& ctx, json& res, Verdicts& v) {
    const json& c = ctx.sc.construction;
    const std::string kind = c["kind"].get<std::string>();
    res["kind"] = kind;
    if (kind == "flowblock") construct_flowblock(ctx, c, res, v);
    else if (kind == "gs") construct_gs(ctx, c, res, v);
    else construct_denjoy(ctx, c, res, v);
}

// ---------------------------------------------------------------------------

void check(Context& ctx, const json& c, json& out, Verdicts& v) {
    const std::string kind = c["check"].get<std::string>();
    const auto& tol = ctx.sc.tol;
    out["check"] = kind;
    if (kind == "homomorphism") {
        auto n = param<std::size_t>(c, "trials", 500);
        auto r = affine::homomorphism_check(ctx.representation(), n, ctx.seed);
        out["trials"] = r.trials;
        out["violations"] = r.violations;
        v.add("exact homomorphism violations", r.violations, "==", 0, r.exact());
    } else if (kind == "faithfulness") {
        auto cert = affine::faithfulness_certificate(ctx.representation());
        out["faithful"] = cert.faithful;
        out["rank"] = cert.rank;
        v.equal("faithfulness certificate", cert.faithful, param(c, "expect", true));
    } else if (kind == "relations") {
        group::GroupContext gc(ctx.A());
        auto r = group::verify_relations(gc);
        json list = json::array();
        for (const auto& x : r.checks) list.push_back({{"relation", x.name}, {"exact", x.passed}});
        out["relations"] = list;
        v.equal("group relations exact", r.all_passed(), true);
    } else if (kind == "multiplier") {
        const auto& rep = ctx.representation();
        std::vector<std::string> charts = param(c, "charts", std::vector<std::string>{"logistic", "mt-flat"});
        json elems = c.contains("elements") ? c["elements"] : json::array({json{{"k", 1}}});
        dynamics::Tolerances dt;
        dt.derivative_tol = tol.derivative;
        dt.grid = tol.grid;
        json list = json::array();
        for (const auto& e : elems) {
            group::GroupElement g{param<long>(e, "k", 1),
                                  e.contains("v") ? parse_vector(e["v"], "verify.elements.v")
                                                  : RationalVector(rep.ctx.dim(), Rational(0))};
            for (const auto& name : charts) {
                auto act = dynamics::chart_conjugate(rep, dynamics::chart_from_name(name));
                auto audit = dynamics::multiplier_audit(act, g, rep, dt);
                list.push_back({{"element", group::to_string(g)},
                                {"chart", name},
                                {"fixed_point", finite(audit.fixed_point)},
                                {"measured", finite(audit.measured)},
                                {"expected", finite(audit.expected)},
                                {"error", finite(audit.error)}});
                v.below("Dg at fixed point, " + group::to_string(g) + ", " + name, audit.error, audit.tolerance);
            }
        }
        out["audits"] = list;
    } else if (kind == "composition" || kind == "bonatti") {
        auto s = dynamics::composition_harness(param<std::size_t>(c, "trials", 1000), ctx.seed, tol.eta,
                                               param<std::size_t>(c, "max_maps", 6));
        out["trials"] = s.trials;
        out["violations"] = s.violations;
        out["worst_ratio"] = finite(s.worst_ratio);
        out["eta"] = s.eta;
        v.add("composition estimate violations", s.violations, "==", 0, s.violations == 0);
    } else if (kind == "flow-roots") {
        json list = json::array();
        for (auto q : param(c, "q", std::vector<std::size_t>{2, 3, 5})) {
            auto r = dynamics::flow_root_test(q, param<std::size_t>(c, "samples", 100), tol.eta);
            list.push_back({{"q", q},
                            {"samples", r.samples},
                            {"violations", r.violations},
                            {"worst_ratio", finite(r.worst_ratio)},
                            {"delta", r.delta}});
            v.add("flow root q=" + std::to_string(q) + " violations", r.violations, "==", 0, r.violations == 0);
        }
        out["roots"] = list;
    } else if (kind == "rotation-group") {
        auto g = constructions::rotation_vector_group(ctx.A());
        json inv = json::array();
        for (const auto& f : g.invariant_factors) inv.push_back(f.get_str());
        json gens = json::array();
        for (const auto& x : g.generators) gens.push_back(rationals(x));
        out["invariant_factors"] = inv;
        out["order"] = g.order.get_str();
        out["generators"] = gens;
        Rational det = (ctx.A().transpose() - RationalMatrix::identity(ctx.A().rows())).determinant();
        out["abs_det"] = det.abs().str();
        if (c.contains("expect_order")) v.equal("rotation group order", out["order"], c["expect_order"]);
    } else if (kind == "conjugacy") {
        const auto& rep = ctx.representation();
        auto chart = dynamics::chart_from_name(param<std::string>(c, "chart", "logistic"));
        auto F = dynamics::conjugacy_extract(dynamics::chart_conjugate(rep, chart), rep);
        out["chart"] = chart.name();
        out["samples"] = F.samples;
        out["monotone"] = F.monotone;
        out["plateaus"] = F.plateaus.size();
        v.equal("coordinate monotone", F.monotone, true);
        v.equal("plateaus", F.plateaus.size(), 0);
    } else if (kind == "displacement") {
        const auto& rep = ctx.representation();
        auto chart = dynamics::chart_from_name(param<std::string>(c, "chart", "logistic"));
        dynamics::TrackOptions opts;
        opts.toward_zero = param<std::string>(c, "toward", "zero") == "zero";
        auto tr = dynamics::displacement_track(dynamics::chart_conjugate(rep, chart), param(c, "x0", 0.5),
                                               param<long>(c, "steps", 20), opts);
        out["chart"] = chart.name();
        out["endpoint_derivative"] = finite(tr.endpoint_derivative);
        out["stays_in_cone"] = tr.stays_in_cone;
        out["grows_by_kappa"] = tr.grows_by_kappa;
        out["cone_entry"] = tr.cone_entry ? json(*tr.cone_entry) : json(nullptr);
        ctx.files.emplace_back("displacement.csv", tr.to_csv());
        if (c.contains("expect_in_cone")) v.equal("stays in cone", tr.stays_in_cone, c["expect_in_cone"]);
    } else {
        throw InputError("verify: unknown check \"" + kind + "\"");
    }
}

void stage_verify(Context& ctx, json& res, Verdicts& v) {
    json list = json::array();
    for (const auto& c : ctx.sc.checks) {
        json out;
        check(ctx, c, out, v);
        list.push_back(out);
    }
    res["checks"] = list;
}

json tolerance_json(const Tolerances& t) {
    return {{"eta", t.eta}, {"derivative", t.derivative}, {"relation", t.relation}, {"grid", t.grid}};
}

}  // namespace

RunResult run_stages(const Scenario& sc, const std::vector<std::string>& stages, const RunOptions& opts) {
    RunResult out;
    Context ctx{sc, opts.seed.value_or(sc.seed), {}, {}, {}};
    json report;
    report["tool"] = {{"name", "solvact"}, {"version", SOLVACT_VERSION}};
    report["scenario"] = {{"name", sc.name}, {"hash", "fnv1a64:" + sc.hash}};
    report["seed"] = ctx.seed;
    report["tolerances"] = tolerance_json(sc.tol);
    json list = json::array();
    std::size_t total = 0, failed = 0;
    std::string status = "pass";

    const std::vector<std::pair<std::string, std::function<void(Context&, json&, Verdicts&)>>> table{
        {"classify", stage_classify},
        {"represent", stage_represent},
        {"construct", stage_construct},
        {"verify", stage_verify}};
    for (const auto& [name, fn] : table) {
        if (std::find(stages.begin(), stages.end(), name) == stages.end()) continue;
        json st;
        st["stage"] = name;
        json res = json::object();
        Verdicts v;
        std::string stage_status = "ok";
        try {
            fn(ctx, res, v);
        } catch (const PreconditionError& e) {
            stage_status = "precondition-failure";
            st["error"] = {{"type", error_name(e)}, {"message", e.what()}};
        } catch (const Error& e) {
            stage_status = "input-error";
            st["error"] = {{"type", error_name(e)}, {"message", e.what()}};
        } catch (const json::exception& e) {
            stage_status = "input-error";
            st["error"] = {{"type", "InputError"}, {"message", e.what()}};
        }
        for (const auto& x : v.list) {
            ++total;
            if (!x["pass"].get<bool>()) ++failed;
        }
        st["status"] = stage_status;
        st["result"] = res;
        st["verdicts"] = v.list;
        list.push_back(st);
        if (stage_status != "ok") {
            status = stage_status;
            break;
        }
    }
    if (status == "pass" && failed > 0) status = "fail";
    out.exit_code = status == "pass"                   ? kPass
                    : status == "fail"                 ? kVerdictFailure
                    : status == "precondition-failure" ? kPreconditionFailure
                                                       : kInputError;
    report["stages"] = list;
    report["summary"] = {{"verdicts", total}, {"failed", failed}, {"status", status}, {"exit_code", out.exit_code}};
    out.report = report;
    out.files = std::move(ctx.files);
    return out;
}

RunResult run_scenario(const Scenario& sc, const RunOptions& opts) { return run_stages(sc, sc.pipeline, opts); }

RunResult input_error_report(const std::string& origin, const std::string& message) {
    RunResult out;
    out.exit_code = kInputError;
    out.report["tool"] = {{"name", "solvact"}, {"version", SOLVACT_VERSION}};
    out.report["scenario"] = {{"name", origin}, {"hash", nullptr}};
    out.report["stages"] = json::array();
    out.report["error"] = {{"type", "InputError"}, {"message", message}};
    out.report["summary"] = {{"verdicts", 0}, {"failed", 0}, {"status", "input-error"}, {"exit_code", kInputError}};
    return out;
}

std::string verdicts_csv(const std::vector<json>& reports) {
    std::ostringstream os;
    os << "scenario,stage,name,value,comparison,tolerance,pass\n";
    auto cell = [](const json& j) {
        std::string s = j.is_string() ? j.get<std::string>() : j.dump();
        if (s.find_first_of(",\"\n") != std::string::npos) {
            std::string q = "\"";
            for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            return q + "\"";
        }
        return s;
    };
    for (const auto& r : reports) {
        for (const auto& st : r["stages"]) {
            for (const auto& v : st["verdicts"]) {
                os << cell(r["scenario"]["name"]) << ',' << cell(st["stage"]) << ',' << cell(v["name"]) << ','
                   << cell(v["value"]) << ',' << cell(v["comparison"]) << ',' << cell(v["tolerance"]) << ','
                   << (v["pass"].get<bool>() ? "true" : "false") << '\n';
            }
        }
    }
    return os.str();
}

int combine_exit_codes(const std::vector<int>& codes) {
    for (int c : {kInputError, kPreconditionFailure, kVerdictFailure})
        if (std::find(codes.begin(), codes.end(), c) != codes.end()) return c;
    return kPass;
}

}  // namespace solvact::cli
