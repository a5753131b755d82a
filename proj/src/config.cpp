// SPDX-License-Identifier: Apache-2.0
#include "qfp/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "qfp/errors.hpp"
#include "qfp/picard.hpp"
#include "qfp/report.hpp"
#include "qfp/solver.hpp"

namespace qfp {

using nlohmann::json;

namespace {

void require_object(const json& j, const std::string& ctx) {
    if (!j.is_object())
        throw InputError("config: '" + ctx + "' must be a JSON object");
}

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& ctx) {
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key))
            throw InputError("config: unknown field '" + key + "' in '" + ctx + "'");
}

const json& require_field(const json& j, const std::string& key,
                          const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end())
        throw InputError("config: missing field '" + key + "' in '" + ctx + "'");
    return *it;
}

double number_field(const json& j, const std::string& key, const std::string& ctx) {
    const json& v = require_field(j, key, ctx);
    if (!v.is_number())
        throw InputError("config: field '" + key + "' in '" + ctx +
                         "' must be a number");
    return v.get<double>();
}

double number_or(const json& j, const std::string& key, double fallback,
                 const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end())
        return fallback;
    if (!it->is_number())
        throw InputError("config: field '" + key + "' in '" + ctx +
                         "' must be a number");
    return it->get<double>();
}

std::size_t index_field(const json& j, const std::string& key, const std::string& ctx) {
    const json& v = require_field(j, key, ctx);
    if (!v.is_number_unsigned())
        throw InputError("config: field '" + key + "' in '" + ctx +
                         "' must be a nonnegative integer");
    return v.get<std::size_t>();
}

std::size_t index_or(const json& j, const std::string& key, std::size_t fallback,
                     const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end())
        return fallback;
    if (!it->is_number_unsigned())
        throw InputError("config: field '" + key + "' in '" + ctx +
                         "' must be a nonnegative integer");
    return it->get<std::size_t>();
}

std::string string_field(const json& j, const std::string& key,
                         const std::string& ctx) {
    const json& v = require_field(j, key, ctx);
    if (!v.is_string())
        throw InputError("config: field '" + key + "' in '" + ctx +
                         "' must be a string");
    return v.get<std::string>();
}

std::pair<double, double> sample_box_or(const json& j, double lo, double hi,
                                        const std::string& ctx) {
    auto it = j.find("sample_box");
    if (it == j.end())
        return {lo, hi};
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() ||
        !(*it)[1].is_number())
        throw InputError("config: 'sample_box' in '" + ctx +
                         "' must be [lo, hi] numbers");
    return {(*it)[0].get<double>(), (*it)[1].get<double>()};
}

Vec vec_from_json(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.empty())
        throw InputError("config: '" + ctx + "' must be a non-empty number array");
    Vec out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number())
            throw InputError("config: '" + ctx + "' must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

Point point_from_config(const json& j, const MetricSpace& space,
                        const std::string& ctx) {
    Point p;
    if (j.is_number()) {
        p = scalar_point(j.get<double>());
    } else if (j.is_array()) {
        p = Point::vector(vec_from_json(j, ctx));
    } else if (j.is_object() && j.contains("constant")) {
        reject_unknown(j, {"constant"}, ctx);
        const auto* grid = dynamic_cast<const GridFunctionSpace*>(&space);
        if (grid == nullptr)
            throw InputError("config: '" + ctx +
                             "' uses {\"constant\": v}, which needs a "
                             "grid_function space");
        p = grid->constant(number_field(j, "constant", ctx));
    } else if (j.is_object() && j.contains("set")) {
        reject_unknown(j, {"set"}, ctx);
        const json& arr = require_field(j, "set", ctx);
        if (!arr.is_array() || arr.empty())
            throw InputError("config: '" + ctx + ".set' must be a non-empty array");
        std::vector<Vec> elements;
        for (const auto& e : arr)
            elements.push_back(vec_from_json(e, ctx + ".set"));
        p = Point::point_set(FinitePointSet(std::move(elements)));
    } else {
        throw InputError("config: '" + ctx + "' is not a recognizable point");
    }
    if (!space.contains(p))
        throw InputError("config: point '" + ctx + "' does not belong to space '" +
                         space.label() + "'");
    return p;
}

std::function<double(double)> scalar_fn_from_config(const json& spec,
                                                    const std::string& ctx) {
    require_object(spec, ctx);
    const std::string family = string_field(spec, "family", ctx);
    if (family == "affine") {
        reject_unknown(spec, {"family", "scale", "offset"}, ctx);
        const double s = number_field(spec, "scale", ctx);
        const double c = number_or(spec, "offset", 0.0, ctx);
        return [s, c](double x) { return s * x + c; };
    }
    if (family == "cos") {
        reject_unknown(spec, {"family"}, ctx);
        return [](double x) { return std::cos(x); };
    }
    if (family == "rational") {
        reject_unknown(spec, {"family"}, ctx);
        return [](double x) { return x / (1.0 + x); };
    }
    if (family == "poly") {
        reject_unknown(spec, {"family", "coeffs", "clamp"}, ctx);
        const Vec coeffs = vec_from_json(require_field(spec, "coeffs", ctx), ctx);
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        if (spec.contains("clamp")) {
            const json& cl = spec["clamp"];
            if (!cl.is_array() || cl.size() != 2)
                throw InputError("config: 'clamp' in '" + ctx + "' must be [lo, hi]");
            lo = cl[0].get<double>();
            hi = cl[1].get<double>();
        }
        return [coeffs, lo, hi](double x) {
            double acc = 0.0;
            for (std::size_t k = coeffs.size(); k-- > 0;)
                acc = acc * x + coeffs[k];
            return std::clamp(acc, lo, hi);
        };
    }
    if (family == "table") {
        reject_unknown(spec, {"family", "nodes"}, ctx);
        const json& nodes = require_field(spec, "nodes", ctx);
        if (!nodes.is_array() || nodes.size() < 2)
            throw InputError("config: 'nodes' in '" + ctx +
                             "' must list at least 2 [x, v] pairs");
        std::vector<std::pair<double, double>> pts;
        for (const auto& n : nodes) {
            if (!n.is_array() || n.size() != 2)
                throw InputError("config: each node in '" + ctx + "' must be [x, v]");
            pts.emplace_back(n[0].get<double>(), n[1].get<double>());
        }
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            if (!(pts[i].first < pts[i + 1].first))
                throw InputError("config: nodes in '" + ctx +
                                 "' must be sorted by x strictly");
        return [pts](double x) {
            if (x <= pts.front().first)
                return pts.front().second;
            if (x >= pts.back().first)
                return pts.back().second;
            std::size_t hi = 1;
            while (pts[hi].first < x)
                ++hi;
            const double w = (x - pts[hi - 1].first) /
                             (pts[hi].first - pts[hi - 1].first);
            return pts[hi - 1].second + w * (pts[hi].second - pts[hi - 1].second);
        };
    }
    if (family == "piecewise") {
        reject_unknown(spec, {"family", "pieces"}, ctx);
        const json& pieces = require_field(spec, "pieces", ctx);
        if (!pieces.is_array() || pieces.empty())
            throw InputError("config: 'pieces' in '" + ctx + "' must be non-empty");
        struct Piece {
            double from, to, scale, offset;
        };
        std::vector<Piece> parsed;
        for (const auto& p : pieces) {
            require_object(p, ctx + ".pieces");
            reject_unknown(p, {"from", "to", "scale", "offset"}, ctx + ".pieces");
            parsed.push_back({number_field(p, "from", ctx),
                              number_field(p, "to", ctx),
                              number_field(p, "scale", ctx),
                              number_or(p, "offset", 0.0, ctx)});
        }
        return [parsed, ctx](double x) {
            for (const Piece& p : parsed) {
                const bool point_piece = p.from == p.to && x == p.from;
                if (point_piece || (x >= p.from && x < p.to))
                    return p.scale * x + p.offset;
            }
            throw InputError("config: no piece of '" + ctx + "' covers x=" +
                             std::to_string(x));
        };
    }
    throw InputError("config: unknown map family '" + family + "' in '" + ctx + "'");
}

} // namespace

std::shared_ptr<const MetricSpace> space_from_config(const json& spec) {
    require_object(spec, "space");
    const std::string kind = string_field(spec, "kind", "space");
    if (kind == "euclidean") {
        reject_unknown(spec, {"kind", "dim", "sample_box"}, "space");
        const std::size_t dim = index_field(spec, "dim", "space");
        auto [lo, hi] = sample_box_or(spec, -1.0, 1.0, "space");
        return std::make_shared<EuclideanSpace>(dim, lo, hi);
    }
    if (kind == "grid_function") {
        reject_unknown(spec, {"kind", "a", "b", "nodes", "sample_box"}, "space");
        const double a = number_field(spec, "a", "space");
        const double b = number_field(spec, "b", "space");
        const std::size_t nodes = index_field(spec, "nodes", "space");
        auto [lo, hi] = sample_box_or(spec, -1.0, 1.0, "space");
        return std::make_shared<GridFunctionSpace>(a, b, nodes, lo, hi);
    }
    if (kind == "hausdorff") {
        reject_unknown(spec, {"kind", "ambient_dim", "sample_box", "max_set_size"},
                       "space");
        const std::size_t dim = index_field(spec, "ambient_dim", "space");
        auto [lo, hi] = sample_box_or(spec, -1.0, 1.0, "space");
        const std::size_t max_size = index_or(spec, "max_set_size", 8, "space");
        return std::make_shared<HausdorffSpace>(dim, lo, hi, max_size);
    }
    throw InputError("config: unknown space kind '" + kind + "'");
}

ComparisonFunction phi_from_config(const json& spec) {
    require_object(spec, "phi");
    const std::string family = string_field(spec, "family", "phi");
    if (family == "affine") {
        reject_unknown(spec, {"family", "q"}, "phi");
        return affine_phi(number_field(spec, "q", "phi"));
    }
    if (family == "rational") {
        reject_unknown(spec, {"family"}, "phi");
        return rational_phi();
    }
    if (family == "poly") {
        reject_unknown(spec, {"family"}, "phi");
        return poly_phi();
    }
    if (family == "table") {
        reject_unknown(spec, {"family", "nodes"}, "phi");
        const json& nodes = require_field(spec, "nodes", "phi");
        if (!nodes.is_array())
            throw InputError("config: 'phi.nodes' must be an array of [t, v] pairs");
        std::vector<std::pair<double, double>> pts;
        for (const auto& n : nodes) {
            if (!n.is_array() || n.size() != 2 || !n[0].is_number() ||
                !n[1].is_number())
                throw InputError("config: each 'phi.nodes' entry must be [t, v]");
            pts.emplace_back(n[0].get<double>(), n[1].get<double>());
        }
        return table_phi(std::move(pts));
    }
    throw InputError("config: unknown phi family '" + family + "'");
}

SelfMap map_from_config(const json& spec, std::shared_ptr<const MetricSpace> space) {
    auto fn = scalar_fn_from_config(spec, "map");
    const std::string family = string_field(spec, "family", "map");
    auto apply = [fn](const Point& p) {
        const Vec& x = p.as_vector();
        Vec out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            out[i] = fn(x[i]);
        return Point::vector(std::move(out));
    };
    return {std::move(apply), std::move(space), family};
}

IfsSystem ifs_from_config(const json& spec) {
    require_object(spec, "ifs");
    if (spec.contains("named")) {
        reject_unknown(spec, {"named"}, "ifs");
        const std::string name = string_field(spec, "named", "ifs");
        if (name == "sierpinski")
            return sierpinski_system();
        if (name == "cantor")
            return cantor_system();
        throw InputError("config: unknown named ifs '" + name + "'");
    }
    reject_unknown(spec, {"dim", "maps"}, "ifs");
    const std::size_t dim = index_field(spec, "dim", "ifs");
    const json& maps = require_field(spec, "maps", "ifs");
    if (!maps.is_array() || maps.empty())
        throw InputError("config: 'ifs.maps' must be a non-empty array");
    std::vector<AffineContraction> parsed;
    for (const auto& m : maps) {
        require_object(m, "ifs.maps");
        reject_unknown(m, {"matrix", "scale", "offset", "ratio"}, "ifs.maps");
        AffineContraction c;
        if (m.contains("matrix")) {
            c.matrix = vec_from_json(m["matrix"], "ifs.maps.matrix");
        } else {
            const double s = number_field(m, "scale", "ifs.maps");
            c.matrix.assign(dim * dim, 0.0);
            for (std::size_t k = 0; k < dim; ++k)
                c.matrix[k * dim + k] = s;
        }
        c.offset = vec_from_json(require_field(m, "offset", "ifs.maps"),
                                 "ifs.maps.offset");
        c.ratio = number_field(m, "ratio", "ifs.maps");
        parsed.push_back(std::move(c));
    }
    return IfsSystem(std::move(parsed), dim);
}

namespace {

json wrap_report(const std::string& task, json payload) {
    payload["version"] = kReportVersion;
    payload["task"] = task;
    return payload;
}

TaskResult task_classify(const json& config, std::uint64_t seed) {
    reject_unknown(config,
                   {"task", "space", "map", "class", "q", "phi", "pairs", "depth",
                    "witness_pairs", "seed", "out"},
                   "config");
    auto space = space_from_config(require_field(config, "space", "config"));
    SelfMap map = map_from_config(require_field(config, "map", "config"), space);
    const std::string cls_name = string_field(config, "class", "config");

    std::vector<std::pair<Point, Point>> witnesses;
    if (config.contains("witness_pairs")) {
        const json& wp = config["witness_pairs"];
        if (!wp.is_array())
            throw InputError("config: 'witness_pairs' must be an array of [x, y]");
        for (const auto& pair : wp) {
            if (!pair.is_array() || pair.size() != 2)
                throw InputError("config: each witness pair must be [x, y]");
            witnesses.emplace_back(point_from_config(pair[0], *space, "witness_pairs"),
                                   point_from_config(pair[1], *space, "witness_pairs"));
        }
    }
    const std::size_t count = index_or(config, "pairs", 256, "config");
    const std::size_t depth = index_or(config, "depth", 64, "config");
    const PairSet pairs = sample_pairs(*space, count, seed, witnesses);

    ClassificationVerdict verdict;
    if (cls_name == "WeakQuasi") {
        ComparisonFunction phi =
            phi_from_config(require_field(config, "phi", "config"));
        verdict = classify_weak_quasi(map, phi, pairs, depth);
    } else {
        std::optional<ContractionClass> cls;
        if (cls_name == "Banach")
            cls = ContractionClass::banach(number_field(config, "q", "config"));
        else if (cls_name == "CiricLinear")
            cls = ContractionClass::ciric_linear(number_field(config, "q", "config"));
        else if (cls_name == "NonlinearContraction")
            cls = ContractionClass::nonlinear_contraction(
                phi_from_config(require_field(config, "phi", "config")));
        else if (cls_name == "StrongQuasi")
            cls = ContractionClass::strong_quasi(
                phi_from_config(require_field(config, "phi", "config")));
        else
            throw InputError("config: unknown class '" + cls_name + "'");
        verdict = classify_pairwise(map, *cls, pairs);
    }

    TaskResult out;
    out.report = wrap_report("classify", json{{"verdict", to_json(verdict)}});
    out.exit_code = verdict.outcome == Outcome::Satisfied ? 0 : 2;
    return out;
}

TaskResult task_solve(const json& config, bool want_trace) {
    reject_unknown(config,
                   {"task", "space", "map", "start", "starts", "eps", "max_iter",
                    "phi", "seed", "out"},
                   "config");
    auto space = space_from_config(require_field(config, "space", "config"));
    SelfMap map = map_from_config(require_field(config, "map", "config"), space);

    SolveConfig cfg;
    cfg.eps = number_field(config, "eps", "config");
    cfg.max_iter = index_or(config, "max_iter", cfg.max_iter, "config");
    if (config.contains("phi"))
        cfg.phi = phi_from_config(config["phi"]);
    cfg.record_trace = want_trace;

    TaskResult out;
    if (config.contains("starts")) {
        const json& starts_json = require_field(config, "starts", "config");
        if (!starts_json.is_array() || starts_json.size() < 2)
            throw InputError("config: 'starts' must list at least 2 points");
        std::vector<Point> starts;
        for (const auto& s : starts_json)
            starts.push_back(point_from_config(s, *space, "starts"));
        cfg.record_trace = false; // one trace per report only
        MultiStartReport report = multi_start_uniqueness(map, starts, cfg);
        bool all_converged = true;
        for (const auto& oc : report.outcomes)
            if (!oc.result || oc.result->status != SolveStatus::Converged)
                all_converged = false;
        out.report = wrap_report("solve", json{{"multi_start", to_json(report)}});
        out.exit_code = all_converged && report.unique_within ? 0 : 2;
        return out;
    }

    const Point start =
        point_from_config(require_field(config, "start", "config"), *space, "start");
    SolveResult result = solve(map, start, cfg);
    out.report = wrap_report("solve", json{{"result", to_json(result)}});
    out.exit_code = result.status == SolveStatus::Converged ? 0 : 2;
    if (want_trace)
        out.trace_csv = trace_to_csv(result);
    return out;
}

TaskResult task_probe(const json& config, bool want_trace) {
    reject_unknown(config,
                   {"task", "space", "map", "start", "depth", "threshold", "seed",
                    "out"},
                   "config");
    auto space = space_from_config(require_field(config, "space", "config"));
    SelfMap map = map_from_config(require_field(config, "map", "config"), space);
    const Point start =
        point_from_config(require_field(config, "start", "config"), *space, "start");
    const std::size_t depth = index_or(config, "depth", 4096, "config");
    const double threshold = config.contains("threshold")
                                 ? number_field(config, "threshold", "config")
                                 : default_blowup_threshold(map, start);
    ProbeVerdict verdict = boundedness_probe(map, start, depth, threshold);
    TaskResult out;
    out.report = wrap_report(
        "probe", json{{"verdict", to_json(verdict)}, {"threshold", threshold}});
    out.exit_code = verdict.exceeded ? 2 : 0;
    if (want_trace && !verdict.exceeded)
        out.trace_csv = orbit_to_csv(*space, orbit_prefix(map, start, depth));
    return out;
}

TaskResult task_attractor(const json& config) {
    reject_unknown(config,
                   {"task", "ifs", "seed_point", "eps", "max_depth", "point_budget",
                    "seed", "out"},
                   "config");
    IfsSystem sys = ifs_from_config(require_field(config, "ifs", "config"));
    const Vec seed_point =
        vec_from_json(require_field(config, "seed_point", "config"), "seed_point");
    const double eps = number_field(config, "eps", "config");
    const std::size_t max_depth = index_or(config, "max_depth", 64, "config");
    const std::size_t budget = index_or(config, "point_budget", 200000, "config");
    AttractorResult result = attractor(sys, seed_point, eps, max_depth, budget);
    TaskResult out;
    out.report = wrap_report("attractor", json{{"certificate", to_json(result)}});
    out.exit_code = result.converged ? 0 : 2;
    out.points_csv = point_set_to_csv(result.points);
    return out;
}

TaskResult task_picard(const json& config, bool want_trace) {
    reject_unknown(config, {"task", "ivp", "eps", "max_iter", "phi", "seed", "out"},
                   "config");
    const json& ivp = require_field(config, "ivp", "config");
    require_object(ivp, "ivp");
    reject_unknown(ivp, {"rhs", "t0", "t1", "y0", "lipschitz", "nodes"}, "ivp");

    const json& rhs_spec = require_field(ivp, "rhs", "ivp");
    require_object(rhs_spec, "ivp.rhs");
    const std::string kind = string_field(rhs_spec, "kind", "ivp.rhs");
    std::function<double(double, double)> rhs;
    if (kind == "linear") {
        reject_unknown(rhs_spec, {"kind", "a", "c"}, "ivp.rhs");
        const double a = number_field(rhs_spec, "a", "ivp.rhs");
        const double c = number_or(rhs_spec, "c", 0.0, "ivp.rhs");
        rhs = [a, c](double, double y) { return a * y + c; };
    } else if (kind == "constant") {
        reject_unknown(rhs_spec, {"kind", "c"}, "ivp.rhs");
        const double c = number_field(rhs_spec, "c", "ivp.rhs");
        rhs = [c](double, double) { return c; };
    } else {
        throw InputError("config: unknown rhs kind '" + kind + "'");
    }

    IvpProblem problem;
    problem.rhs = std::move(rhs);
    problem.t0 = number_field(ivp, "t0", "ivp");
    problem.t1 = number_field(ivp, "t1", "ivp");
    problem.y0 = number_field(ivp, "y0", "ivp");
    problem.lipschitz_bound = number_field(ivp, "lipschitz", "ivp");
    problem.grid_nodes = index_field(ivp, "nodes", "ivp");

    PicardOperator op = picard_operator(problem);
    SolveConfig cfg;
    cfg.eps = number_field(config, "eps", "config");
    cfg.max_iter = index_or(config, "max_iter", cfg.max_iter, "config");
    if (config.contains("phi"))
        cfg.phi = phi_from_config(config["phi"]);
    cfg.record_trace = want_trace;

    SolveResult result = solve(op.map, op.initial_guess(), cfg);
    TaskResult out;
    out.report = wrap_report(
        "picard", json{{"result", to_json(result)},
                       {"contraction_factor", op.contraction_factor}});
    out.exit_code = result.status == SolveStatus::Converged ? 0 : 2;
    if (want_trace)
        out.trace_csv = trace_to_csv(result);

    std::ostringstream csv;
    csv.precision(17);
    csv << "t,y\n";
    const auto ts = op.space->grid();
    const Vec& y = result.fixed_point.as_vector();
    for (std::size_t i = 0; i < ts.size(); ++i)
        csv << ts[i] << ',' << y[i] << '\n';
    out.points_csv = csv.str();
    return out;
}

} // namespace

TaskResult run_task(const json& config, std::optional<std::uint64_t> seed_override,
                    bool want_trace) {
    require_object(config, "config");
    const std::string task = string_field(config, "task", "config");
    std::uint64_t seed = 0;
    if (config.contains("seed")) {
        if (!config["seed"].is_number_unsigned())
            throw InputError("config: 'seed' must be a nonnegative integer");
        seed = config["seed"].get<std::uint64_t>();
    }
    if (seed_override)
        seed = *seed_override;

    if (task == "classify")
        return task_classify(config, seed);
    if (task == "solve")
        return task_solve(config, want_trace);
    if (task == "probe")
        return task_probe(config, want_trace);
    if (task == "attractor")
        return task_attractor(config);
    if (task == "picard")
        return task_picard(config, want_trace);
    throw InputError("config: unknown task '" + task + "'");
}

} // namespace qfp
