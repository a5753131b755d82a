// SPDX-License-Identifier: Apache-2.0
#include "qfp/gallery.hpp"

#include <algorithm>
#include <cmath>

#include "qfp/errors.hpp"
#include "qfp/report.hpp"

namespace qfp {

using nlohmann::json;

namespace {

std::pair<Point, Point> scalar_pair(double x, double y) {
    return {scalar_point(x), scalar_point(y)};
}

ComparisonFunction cos_bounding_table() {
    // Piecewise-linear upper envelope for the cosine mean-value factor
    // sin(1) ~ 0.8415 on unit-interval pairs: nodes of t*(1 - t/8) up to
    // t = 4, held constant beyond.
    return table_phi({{0.0, 0.0},
                      {0.5, 0.46875},
                      {1.0, 0.875},
                      {1.5, 1.21875},
                      {2.0, 1.5},
                      {3.0, 1.875},
                      {4.0, 2.0}});
}

GalleryEntry make_halving() {
    GalleryEntry e;
    e.label = "halving";
    e.notes = "t/2 on the line: exact contraction ratio 1/2, fixed point 0 (analytic)";
    e.map = scalar_self_map([](double t) { return t / 2.0; }, "halving", -10.0, 10.0);
    e.space = e.map.space;
    e.pairwise_expectations = {
        {ContractionClass::banach(0.5), Outcome::Satisfied,
         "exact ratio 1/2; equality absorbed by the falsification tolerance"},
        {ContractionClass::banach(0.6), Outcome::Satisfied, "0.5 <= 0.6"},
        {ContractionClass::banach(0.4), Outcome::Falsified, "0.5 > 0.4 on any pair"},
        {ContractionClass::ciric_linear(0.5), Outcome::Satisfied,
         "pair diameter dominates the pair distance"},
    };
    e.witness_pairs = {scalar_pair(0.0, 1.0)};
    e.weak_phi = affine_phi(0.75);
    e.weak_expected = Outcome::Satisfied;
    e.hierarchy_q = 0.5;
    e.starts = {scalar_point(-1.0), scalar_point(1.0)};
    SolveConfig cfg;
    cfg.eps = 1e-6;
    cfg.phi = affine_phi(0.5);
    e.solve_cfg = cfg;
    e.expected_fixed_point = scalar_point(0.0);
    e.fixed_point_tol = 1e-6;
    e.fixed_point_provenance = "geometric halving to 0";
    e.expect_unique = true;
    e.probe_start = scalar_point(1.0);
    e.expect_exceeded = false;
    e.ciric_q = 0.5;
    e.ciric_start = scalar_point(1.0);
    return e;
}

GalleryEntry make_cos() {
    GalleryEntry e;
    e.label = "cos";
    e.notes = "cosine on the line; fixed point 0.7390851332151607 cross-checked "
              "against a bisection oracle";
    e.map = scalar_self_map([](double t) { return std::cos(t); }, "cos", 0.0, 1.0);
    e.space = e.map.space;
    e.pairwise_expectations = {
        {ContractionClass::banach(0.9), Outcome::Satisfied,
         "mean value: |cos x - cos y| <= sin(1)|x - y| ~ 0.8415|x - y| on [0,1]"},
        {ContractionClass::nonlinear_contraction(cos_bounding_table()),
         Outcome::Satisfied,
         "table envelope dominates sin(1)t on (0,1]; verified by a dense grid scan"},
    };
    e.weak_phi = affine_phi(0.9);
    e.weak_expected = Outcome::Satisfied;
    e.hierarchy_q = 0.9;
    e.starts = {scalar_point(-5.0), scalar_point(0.0), scalar_point(3.0)};
    SolveConfig cfg;
    cfg.eps = 1e-9;
    e.solve_cfg = cfg;
    e.expected_fixed_point = scalar_point(0.7390851332151607);
    e.fixed_point_tol = 1e-9;
    e.fixed_point_provenance = "bisection of cos(x) = x on [0,1] to 1e-14";
    e.expect_unique = true;
    e.probe_start = scalar_point(0.0);
    e.expect_exceeded = false;
    e.probe_depth = 256;
    e.ball_plans = {{scalar_point(0.739), 0.1, affine_phi(0.85), 1000, true, true}};
    return e;
}

GalleryEntry make_identity() {
    GalleryEntry e;
    e.label = "identity";
    e.notes = "every point is fixed: negative control for uniqueness";
    e.map = scalar_self_map([](double t) { return t; }, "identity", 0.0, 1.0);
    e.space = e.map.space;
    e.pairwise_expectations = {
        {ContractionClass::banach(0.9), Outcome::Falsified, "d(Tx,Ty) = d(x,y)"},
        {ContractionClass::nonlinear_contraction(affine_phi(0.9)), Outcome::Falsified,
         "d(Tx,Ty) = d(x,y) > 0.9 d(x,y)"},
        {ContractionClass::ciric_linear(0.9), Outcome::Falsified,
         "the pair diameter equals d(x,y) here"},
        {ContractionClass::strong_quasi(affine_phi(0.9)), Outcome::Falsified,
         "same inequality as the linear case"},
    };
    e.witness_pairs = {scalar_pair(0.0, 1.0)};
    e.weak_phi = affine_phi(0.9);
    e.weak_expected = Outcome::Falsified;
    e.hierarchy_q = 0.9;
    e.starts = {scalar_point(0.0), scalar_point(1.0)};
    SolveConfig cfg;
    cfg.eps = 1e-6;
    e.solve_cfg = cfg;
    e.expect_unique = false;
    e.expect_exact_mutual = 1.0;
    e.probe_start = scalar_point(0.5);
    e.probe_depth = 64;
    e.expect_exceeded = false;
    return e;
}

GalleryEntry make_arith_walk() {
    GalleryEntry e;
    e.label = "arith_walk";
    e.notes = "t+1: unbounded orbit by construction; negative control for "
              "boundedness, no solve attempted";
    e.map = scalar_self_map([](double t) { return t + 1.0; }, "arith_walk", -10.0, 10.0);
    e.space = e.map.space;
    e.pairwise_expectations = {
        {ContractionClass::banach(0.9), Outcome::Falsified, "distances are preserved"},
        {ContractionClass::ciric_linear(0.9), Outcome::Falsified,
         "pairs wider than 9 defeat q = 0.9 against diameter |x-y|+1"},
    };
    e.witness_pairs = {scalar_pair(-10.0, 10.0)};
    e.weak_phi = affine_phi(0.5);
    e.weak_expected = Outcome::Inconclusive;
    e.hierarchy_q = 0.9;
    e.probe_start = scalar_point(0.0);
    e.probe_threshold = 1000.0;
    e.expect_exceeded = true;
    e.ball_plans = {
        {scalar_point(0.0), 0.5, affine_phi(0.5), 100, false, false},
        {scalar_point(0.0), 1.0, affine_phi(0.85), 100, false, false},
        {scalar_point(10.0), 2.0, affine_phi(0.5), 100, false, false},
    };
    return e;
}

GalleryEntry make_kannan_like() {
    GalleryEntry e;
    e.label = "kannan_like";
    e.notes = "x/4 below 1, 1/8 at 1: discontinuous at 1; minimal linear "
              "strong-quasi factor 0.25 measured by a 1e-3-pitch grid scan "
              "over [0,1]^2";
    e.map = scalar_self_map([](double x) { return x < 1.0 ? x / 4.0 : 0.125; },
                            "kannan_like", 0.0, 1.0);
    e.space = e.map.space;
    e.pairwise_expectations = {
        {ContractionClass::strong_quasi(affine_phi(0.25)), Outcome::Satisfied,
         "grid oracle: sup ratio d(Tx,Ty)/diam{x,y,Tx,Ty} = 0.25"},
        {ContractionClass::ciric_linear(0.25), Outcome::Satisfied,
         "same inequality as strong quasi with phi(t) = t/4"},
        {ContractionClass::nonlinear_contraction(affine_phi(0.25)), Outcome::Falsified,
         "the jump at 1 defeats any control by d(x,y): pairs (x,1), x > 0.75"},
        {ContractionClass::banach(0.25), Outcome::Falsified,
         "same witness pairs as the nonlinear case"},
    };
    e.witness_pairs = {scalar_pair(0.9, 1.0), scalar_pair(0.999, 1.0),
                       scalar_pair(0.0, 1.0), scalar_pair(0.5, 1.0)};
    e.weak_phi = affine_phi(0.25);
    e.weak_expected = Outcome::Satisfied;
    e.hierarchy_q = 0.25;
    e.starts = {scalar_point(0.3), scalar_point(1.0)};
    SolveConfig cfg;
    cfg.eps = 1e-9;
    e.solve_cfg = cfg;
    e.expected_fixed_point = scalar_point(0.0);
    e.fixed_point_tol = 1e-8;
    e.fixed_point_provenance = "only fixed point of x/4 with the isolated jump";
    e.expect_unique = true;
    e.probe_start = scalar_point(1.0);
    e.expect_exceeded = false;
    return e;
}

GalleryEntry make_harmonic() {
    GalleryEntry e;
    e.label = "harmonic";
    e.notes = "t/(1+t): nonlinear contraction with its own shape as comparison "
              "function; iterates decay harmonically to the fixed point 0";
    e.map = scalar_self_map([](double t) { return t / (1.0 + t); }, "harmonic",
                            0.0, 1.0);
    e.space = e.map.space;
    e.pairwise_expectations = {
        {ContractionClass::nonlinear_contraction(rational_phi()), Outcome::Satisfied,
         "|Tx - Ty| = |x-y| / ((1+x)(1+y)) <= |x-y| / (1+|x-y|)"},
        {ContractionClass::strong_quasi(rational_phi()), Outcome::Satisfied,
         "implied by the nonlinear-contraction bound"},
        {ContractionClass::banach(0.5), Outcome::Falsified,
         "the local ratio tends to 1 near 0"},
        {ContractionClass::ciric_linear(0.5), Outcome::Falsified,
         "pair (0.5, 0): 1/3 > 0.25"},
    };
    e.witness_pairs = {scalar_pair(0.1, 0.2), scalar_pair(0.5, 0.0)};
    e.weak_phi = rational_phi();
    e.weak_expected = Outcome::Satisfied;
    e.hierarchy_q = 0.5;
    e.starts = {scalar_point(0.3), scalar_point(1.0)};
    SolveConfig cfg;
    cfg.eps = 1e-4;
    cfg.phi = rational_phi();
    e.solve_cfg = cfg;
    e.expected_fixed_point = scalar_point(0.0);
    e.fixed_point_tol = 1e-3;
    e.fixed_point_provenance = "fixed point 0 (analytic)";
    e.expect_unique = true;
    e.probe_start = scalar_point(1.0);
    e.expect_exceeded = false;
    return e;
}

GalleryEntry make_picard_exp() {
    GalleryEntry e;
    e.label = "picard_exp";
    e.notes = "integral operator of y' = y, y(0) = 1 on [0, 0.5] with 65 nodes; "
              "the discrete fixed point tracks exp(t) within the trapezoid "
              "error, well under 5e-4";
    IvpProblem problem;
    problem.rhs = [](double, double y) { return y; };
    problem.t0 = 0.0;
    problem.t1 = 0.5;
    problem.y0 = 1.0;
    problem.lipschitz_bound = 1.0;
    problem.grid_nodes = 65;
    PicardOperator op = picard_operator(problem);
    e.map = op.map;
    e.space = op.space;
    e.pair_count = 64;
    e.pairwise_expectations = {
        {ContractionClass::banach(0.5), Outcome::Satisfied,
         "sup bound of the integral: L*(t1-t0) = 0.5"},
    };
    e.hierarchy_q = 0.5;
    e.starts = {op.space->constant(1.0), op.space->constant(0.0)};
    SolveConfig cfg;
    cfg.eps = 1e-8;
    cfg.phi = affine_phi(0.5);
    e.solve_cfg = cfg;
    Vec expected(op.space->nodes());
    const auto ts = op.space->grid();
    for (std::size_t i = 0; i < expected.size(); ++i)
        expected[i] = std::exp(ts[i]);
    e.expected_fixed_point = Point::vector(std::move(expected));
    e.fixed_point_tol = 5e-4;
    e.fixed_point_provenance = "exact solution exp(t) on the grid; trapezoid "
                               "discretization error is O(h^2) ~ 4e-6";
    e.expect_unique = true;
    return e;
}

GalleryEntry make_sierpinski() {
    GalleryEntry e;
    e.label = "sierpinski";
    e.notes = "three half-scale maps onto the unit-triangle corners; ratio 1/2 "
              "in the Hausdorff metric";
    auto space = std::make_shared<HausdorffSpace>(2, 0.0, 1.0, 5);
    IfsSystem sys = sierpinski_system();
    e.map = hutchinson_map(sys, space);
    e.space = space;
    e.pair_count = 128;
    e.pairwise_expectations = {
        {ContractionClass::banach(0.5), Outcome::Satisfied,
         "affine pieces contract by exactly 1/2"},
    };
    e.hierarchy_q = 0.5;
    e.starts = {singleton_set_point({0.0, 0.0}), singleton_set_point({1.0, 0.0})};
    SolveConfig cfg;
    cfg.eps = 0.05;
    e.solve_cfg = cfg;
    e.expect_unique = true;
    e.attractor_plan = AttractorPlan{sys, {0.0, 0.0}, 0.01, 64,
                                     std::make_pair(0.0, 1.0)};
    return e;
}

GalleryEntry make_cantor() {
    GalleryEntry e;
    e.label = "cantor";
    e.notes = "{x/3, x/3 + 2/3}: middle-thirds attractor in [0,1], ratio 1/3";
    auto space = std::make_shared<HausdorffSpace>(1, 0.0, 1.0, 5);
    IfsSystem sys = cantor_system();
    e.map = hutchinson_map(sys, space);
    e.space = space;
    e.pair_count = 128;
    e.pairwise_expectations = {
        {ContractionClass::banach(1.0 / 3.0), Outcome::Satisfied,
         "affine pieces contract by exactly 1/3"},
    };
    e.hierarchy_q = 1.0 / 3.0;
    e.starts = {singleton_set_point({0.5}), singleton_set_point({-2.0})};
    SolveConfig cfg;
    cfg.eps = 0.02;
    e.solve_cfg = cfg;
    e.expect_unique = true;
    e.attractor_plan = AttractorPlan{sys, {0.5}, 1e-3, 64, std::make_pair(0.0, 1.0)};
    return e;
}

void run_classifications(const GalleryEntry& e, const PairSet& pairs,
                         EntryReport& report) {
    for (const auto& expectation : e.pairwise_expectations) {
        ClassificationVerdict v = classify_pairwise(e.map, expectation.cls, pairs);
        json details{{"verdict", to_json(v)},
                     {"expected", to_string(expectation.expected)},
                     {"provenance", expectation.provenance}};
        report.checks.push_back({"classify:" + v.class_name,
                                 v.outcome == expectation.expected,
                                 std::move(details)});
    }
    if (e.weak_phi && e.weak_expected) {
        ClassificationVerdict v =
            classify_weak_quasi(e.map, *e.weak_phi, pairs, e.classify_depth);
        json details{{"verdict", to_json(v)},
                     {"expected", to_string(*e.weak_expected)}};
        report.checks.push_back({"classify:" + v.class_name,
                                 v.outcome == *e.weak_expected, std::move(details)});
    }
}

void run_solves(const GalleryEntry& e, EntryReport& report) {
    if (!e.solve_cfg || e.starts.empty())
        return;
    if (e.starts.size() == 1) {
        SolveResult r = solve(e.map, e.starts.front(), *e.solve_cfg);
        bool ok = r.status == SolveStatus::Converged && r.residual <= e.solve_cfg->eps;
        if (ok && e.expected_fixed_point)
            ok = e.space->distance(r.fixed_point, *e.expected_fixed_point) <=
                 e.fixed_point_tol;
        report.checks.push_back({"solve", ok, to_json(r)});
        return;
    }
    MultiStartReport r = multi_start_uniqueness(e.map, e.starts, *e.solve_cfg);
    bool solves_ok = true;
    for (const auto& oc : r.outcomes) {
        if (!oc.result || oc.result->status != SolveStatus::Converged ||
            oc.result->residual > e.solve_cfg->eps)
            solves_ok = false;
        else if (e.expected_fixed_point &&
                 e.space->distance(oc.result->fixed_point, *e.expected_fixed_point) >
                     e.fixed_point_tol)
            solves_ok = false;
    }
    report.checks.push_back({"solve", solves_ok, to_json(r)});

    bool unique_ok = r.unique_within == e.expect_unique;
    if (e.expect_exact_mutual && r.max_mutual_distance != *e.expect_exact_mutual)
        unique_ok = false;
    json details{{"unique_within", r.unique_within},
                 {"expected_unique", e.expect_unique},
                 {"max_mutual_distance", r.max_mutual_distance}};
    report.checks.push_back({"multi_start_uniqueness", unique_ok, std::move(details)});
}

void run_probe(const GalleryEntry& e, EntryReport& report) {
    if (!e.probe_start)
        return;
    const double threshold = e.probe_threshold
                                 ? *e.probe_threshold
                                 : default_blowup_threshold(e.map, *e.probe_start);
    ProbeVerdict v = boundedness_probe(e.map, *e.probe_start, e.probe_depth, threshold);
    json details{{"verdict", to_json(v)},
                 {"threshold", threshold},
                 {"expected_exceeded", e.expect_exceeded}};
    report.checks.push_back(
        {"boundedness_probe", v.exceeded == e.expect_exceeded, std::move(details)});
}

void run_ciric(const GalleryEntry& e, EntryReport& report) {
    if (!e.ciric_q || !e.ciric_start)
        return;
    CiricBoundReport r = ciric_orbit_bound(e.map, *e.ciric_start, *e.ciric_q,
                                           e.ciric_depth);
    report.checks.push_back({"ciric_orbit_bound", r.holds, to_json(r)});
}

void run_balls(const GalleryEntry& e, EntryReport& report) {
    for (std::size_t i = 0; i < e.ball_plans.size(); ++i) {
        const BallPlan& plan = e.ball_plans[i];
        BallInvarianceReport r =
            ball_invariance_check(e.map, plan.phi, plan.center, plan.radius, plan.steps);
        bool ok = r.hypothesis_holds == plan.expect_hypothesis;
        if (ok && plan.expect_hypothesis)
            ok = r.orbit_inside == plan.expect_inside;
        json details{{"report", to_json(r)},
                     {"expected_hypothesis", plan.expect_hypothesis}};
        report.checks.push_back({"ball_invariance[" + std::to_string(i) + "]", ok,
                                 std::move(details)});
    }
}

void run_attractor(const GalleryEntry& e, EntryReport& report) {
    if (!e.attractor_plan)
        return;
    const AttractorPlan& plan = *e.attractor_plan;
    AttractorResult r = attractor(plan.system, plan.seed, plan.eps, plan.max_depth);
    report.checks.push_back(
        {"attractor_converged", r.converged && r.bound < plan.eps, to_json(r)});

    bool contraction_ok = true;
    for (std::size_t i = 0; i + 1 < r.step_distances.size(); ++i)
        if (r.step_distances[i + 1] > r.q * r.step_distances[i] + 1e-9)
            contraction_ok = false;
    report.checks.push_back({"attractor_contraction", contraction_ok,
                             json{{"step_distances", r.step_distances}, {"q", r.q}}});

    if (plan.expect_box) {
        bool inside = true;
        for (const Vec& p : r.points.elements())
            for (double c : p)
                if (c < plan.expect_box->first - 1e-12 ||
                    c > plan.expect_box->second + 1e-12)
                    inside = false;
        report.checks.push_back({"attractor_box", inside,
                                 json{{"lo", plan.expect_box->first},
                                      {"hi", plan.expect_box->second},
                                      {"points", r.points.size()}}});
    }
}

} // namespace

std::vector<GalleryEntry> list_entries() {
    std::vector<GalleryEntry> entries;
    entries.push_back(make_arith_walk());
    entries.push_back(make_cantor());
    entries.push_back(make_cos());
    entries.push_back(make_halving());
    entries.push_back(make_harmonic());
    entries.push_back(make_identity());
    entries.push_back(make_kannan_like());
    entries.push_back(make_picard_exp());
    entries.push_back(make_sierpinski());
    std::sort(entries.begin(), entries.end(),
              [](const GalleryEntry& a, const GalleryEntry& b) {
                  return a.label < b.label;
              });
    return entries;
}

GalleryEntry find_entry(const std::string& label) {
    for (GalleryEntry& e : list_entries())
        if (e.label == label)
            return std::move(e);
    throw InputError("unknown gallery entry '" + label + "'");
}

EntryReport run_entry(const GalleryEntry& entry, std::uint64_t seed) {
    EntryReport report;
    report.label = entry.label;
    report.seed = seed;

    const PairSet pairs =
        sample_pairs(*entry.space, entry.pair_count, seed, entry.witness_pairs);
    run_classifications(entry, pairs, report);
    run_solves(entry, report);
    run_probe(entry, report);
    run_ciric(entry, report);
    run_balls(entry, report);
    run_attractor(entry, report);

    report.all_met = std::all_of(report.checks.begin(), report.checks.end(),
                                 [](const CheckResult& c) { return c.ok; });
    return report;
}

EntryReport run_entry(const std::string& label, std::uint64_t seed) {
    return run_entry(find_entry(label), seed);
}

json to_json(const EntryReport& report) {
    json checks = json::array();
    for (const CheckResult& c : report.checks)
        checks.push_back(json{{"name", c.name}, {"ok", c.ok}, {"details", c.details}});
    return json{
        {"version", kReportVersion},
        {"label", report.label},
        {"seed", report.seed},
        {"all_met", report.all_met},
        {"checks", std::move(checks)},
    };
}

} // namespace qfp
