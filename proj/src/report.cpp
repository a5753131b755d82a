// SPDX-License-Identifier: Apache-2.0
#include "qfp/report.hpp"

namespace qfp {

using nlohmann::json;

json to_json(const Point& p) {
    if (p.is_vector())
        return json(p.as_vector());
    json elements = json::array();
    for (const auto& e : p.as_point_set().elements())
        elements.push_back(e);
    return json{{"set", std::move(elements)}};
}

json to_json(const ClassificationVerdict& v) {
    json out{
        {"class", v.class_name},
        {"outcome", to_string(v.outcome)},
        {"depth_used", v.depth_used},
        {"pairs_tested", v.pairs_tested},
        {"seed", v.seed},
    };
    if (v.witness) {
        out["witness"] = json{{"x", to_json(v.witness->x)},
                              {"y", to_json(v.witness->y)},
                              {"lhs", v.witness->lhs},
                              {"rhs", v.witness->rhs}};
    }
    if (!v.note.empty())
        out["note"] = v.note;
    return out;
}

json to_json(const SolveResult& r) {
    return json{
        {"status", r.status == SolveStatus::Converged ? "Converged" : "NotConverged"},
        {"fixed_point", to_json(r.fixed_point)},
        {"iterations", r.iterations},
        {"residual", r.residual},
        {"horizon_used", r.horizon_used},
    };
}

json to_json(const MultiStartReport& r) {
    json starts = json::array();
    for (const auto& oc : r.outcomes) {
        json entry{{"start_index", oc.start_index}};
        if (oc.result)
            entry["result"] = to_json(*oc.result);
        else
            entry["error"] = oc.error;
        starts.push_back(std::move(entry));
    }
    return json{
        {"starts", std::move(starts)},
        {"max_mutual_distance", r.max_mutual_distance},
        {"unique_within", r.unique_within},
    };
}

json to_json(const ProbeVerdict& v) {
    if (v.exceeded)
        return json{{"verdict", "ThresholdExceeded"},
                    {"step", v.step},
                    {"distance", v.distance}};
    return json{{"verdict", "BoundedSoFar"}, {"diam_trunc", v.diam_trunc}};
}

json to_json(const CiricBoundReport& r) {
    return json{
        {"step_distance", r.step_distance},
        {"bound", r.bound},
        {"observed", r.observed},
        {"holds", r.holds},
    };
}

json to_json(const BallInvarianceReport& r) {
    json out{
        {"hypothesis_holds", r.hypothesis_holds},
        {"step_distance", r.step_distance},
        {"margin", r.margin},
        {"orbit_checked", r.orbit_checked},
    };
    if (r.orbit_checked) {
        out["orbit_inside"] = r.orbit_inside;
        if (!r.orbit_inside)
            out["first_escape"] = r.first_escape;
    }
    return out;
}

json to_json(const SeriesCheck& c) {
    json out{
        {"falsified", c.falsified},
        {"partial_sum", c.partial_sum},
    };
    if (c.falsified) {
        out["violation"] = json{{"n", c.violation_n},
                                {"t", c.violation_t},
                                {"lhs", c.lhs},
                                {"rhs", c.rhs}};
    }
    return out;
}

json to_json(const AttractorResult& r) {
    json out{
        {"converged", r.converged},
        {"depth", r.depth},
        {"q", r.q},
        {"bound", r.bound},
        {"points", r.points.size()},
        {"step_distances", r.step_distances},
    };
    if (r.dedup_used) {
        out["dedup_used"] = true;
        out["dedup_pitch"] = r.dedup_pitch;
    }
    return out;
}

} // namespace qfp
