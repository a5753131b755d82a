// SPDX-License-Identifier: Apache-2.0
#include "qfp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include "qfp/errors.hpp"

namespace qfp {

namespace {

void validate(const SolveConfig& cfg) {
    if (!(cfg.eps > 0.0))
        throw InputError("solve: eps must be positive");
    if (cfg.max_iter < 1)
        throw InputError("solve: max_iter must be at least 1");
}

Point checked_apply(const SelfMap& T, const Point& current, std::size_t step) {
    Point next = T.apply(current);
    if (!next.all_finite())
        throw DivergenceError("solve: iterate of '" + T.label +
                                  "' produced non-finite coordinates at step " +
                                  std::to_string(step),
                              step);
    if (!T.space->contains(next))
        throw InputError("solve: iterate left its space at step " +
                         std::to_string(step));
    return next;
}

} // namespace

SolveResult solve(const SelfMap& T, const Point& start, const SolveConfig& cfg) {
    validate(cfg);
    if (!T.space->contains(start))
        throw InputError("solve: start point does not belong to the space");

    const MetricSpace& space = *T.space;
    const double half_eps = cfg.eps / 2.0;

    SolveResult result;
    std::size_t horizon = 0;
    bool use_horizon_rule = false;

    // Warm-up stage: estimate diam O(x) from a truncated prefix and derive
    // the a-priori iteration count from the decay horizon. The truncation
    // underestimates the true orbit diameter, which is why the residual
    // certificate below stays mandatory.
    std::vector<Point> warmup;
    if (cfg.phi) {
        const std::size_t w = std::min(cfg.warmup_depth, cfg.max_iter);
        OrbitPrefix prefix = orbit_prefix(T, start, w);
        if (auto cert = decay_horizon(*cfg.phi, prefix.diam_trunc, half_eps,
                                      cfg.horizon_cap)) {
            horizon = cert->horizon;
            result.certificate = std::move(cert);
            result.horizon_used = horizon;
            use_horizon_rule = true;
        }
        // Horizon cap exhausted: fall back to the successive-distance rule.
        warmup = std::move(prefix.points);
    }

    std::vector<Point> visited; // full trajectory, kept only when tracing
    double running_diam = 0.0;
    if (cfg.record_trace) {
        visited.reserve(std::min<std::size_t>(cfg.max_iter + 1, 1 << 20));
        visited.push_back(start);
        result.trace.push_back({0, 0.0, 0.0, 0.0});
    }

    Point prev = start;
    Point cur = start;
    double s_prev1 = std::numeric_limits<double>::infinity(); // s_{k-1}
    double s_prev2 = std::numeric_limits<double>::infinity(); // s_{k-2}
    bool candidate = false; // x_{k-1} fired the stopping rule

    Point best_point = start;
    double best_residual = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;

    for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
        prev = std::move(cur);
        cur = k < warmup.size() ? warmup[k] : checked_apply(T, prev, k);
        const double s = space.distance(prev, cur);

        // s is the residual of x_{k-1}: accept it if the rule fired there.
        if (candidate && s <= cfg.eps) {
            result.status = SolveStatus::Converged;
            result.fixed_point = prev;
            result.iterations = k - 1;
            result.residual = s;
            return result;
        }

        if (s < best_residual) {
            best_residual = s;
            best_point = prev;
            best_index = k - 1;
        }

        if (cfg.record_trace) {
            double far = 0.0;
            for (const Point& p : visited)
                far = std::max(far, space.distance(p, cur));
            running_diam = std::max(running_diam, far);
            result.trace.push_back({k, s, space.distance(visited.front(), cur),
                                    running_diam});
            visited.push_back(cur);
        }

        candidate = use_horizon_rule ? (k >= horizon && s < half_eps)
                                     : (s < half_eps && s_prev1 < half_eps &&
                                        s_prev2 < half_eps);
        s_prev2 = s_prev1;
        s_prev1 = s;
    }

    result.status = SolveStatus::NotConverged;
    result.fixed_point = best_point;
    result.iterations = best_index;
    result.residual = best_residual;
    return result;
}

MultiStartReport multi_start_uniqueness(const SelfMap& T, const std::vector<Point>& starts,
                                        const SolveConfig& cfg) {
    validate(cfg);
    if (starts.size() < 2)
        throw InputError("multi_start_uniqueness: needs at least 2 starts");
    for (const Point& s : starts)
        if (!T.space->contains(s))
            throw InputError("multi_start_uniqueness: start does not belong to the space");

    MultiStartReport report;
    report.outcomes.resize(starts.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(starts.size());
         ++idx) {
        const std::size_t i = static_cast<std::size_t>(idx);
        StartOutcome outcome;
        outcome.start_index = i;
        try {
            outcome.result = solve(T, starts[i], cfg);
        } catch (const Error& e) {
            outcome.error = e.what();
        }
        report.outcomes[i] = std::move(outcome);
    }

    std::vector<Point> fixed_points;
    bool all_converged = true;
    for (const auto& oc : report.outcomes) {
        if (oc.result && oc.result->status == SolveStatus::Converged)
            fixed_points.push_back(oc.result->fixed_point);
        else
            all_converged = false;
    }
    report.max_mutual_distance =
        fixed_points.size() >= 2 ? diam(*T.space, fixed_points) : 0.0;
    report.unique_within = all_converged && fixed_points.size() == starts.size() &&
                           report.max_mutual_distance <= 10.0 * cfg.eps;
    return report;
}

BallInvarianceReport ball_invariance_check(const SelfMap& T, const ComparisonFunction& phi,
                                           const Point& p, double r, std::size_t steps) {
    if (!(r > 0.0))
        throw InputError("ball_invariance_check: radius must be positive");
    if (!T.space->contains(p))
        throw InputError("ball_invariance_check: center does not belong to the space");

    const MetricSpace& space = *T.space;
    BallInvarianceReport report;
    const Point tp = checked_apply(T, p, 1);
    report.step_distance = space.distance(p, tp);
    report.margin = r - phi(r);
    report.hypothesis_holds = report.step_distance < report.margin;
    if (!report.hypothesis_holds)
        return report; // orbit containment is undetermined without the hypothesis

    report.orbit_checked = true;
    report.orbit_inside = true;
    Point cur = tp;
    for (std::size_t m = 1; m <= steps; ++m) {
        if (space.distance(p, cur) > r) {
            report.orbit_inside = false;
            report.first_escape = m;
            return report;
        }
        if (m < steps)
            cur = checked_apply(T, cur, m + 1);
    }
    return report;
}

std::string trace_to_csv(const SolveResult& result) {
    std::ostringstream os;
    os.precision(17);
    os << "step,dist_prev,dist_base,diam_trunc\n";
    for (const TraceRow& row : result.trace)
        os << row.step << ',' << row.dist_prev << ',' << row.dist_base << ','
           << row.diam_trunc << '\n';
    return os.str();
}

} // namespace qfp
