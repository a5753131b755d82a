// SPDX-License-Identifier: Apache-2.0
//
// Certified-residual fixed-point iteration. The solver accepts any
// self-map; contraction-class membership is the classify module's job.
// Convergence is never inferred from the stopping rule alone: every
// returned point carries a freshly computed residual d(x*, Tx*).
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qfp/comparison.hpp"
#include "qfp/orbit.hpp"

namespace qfp {

struct SolveConfig {
    double eps = 1e-9;          // target accuracy in the space's metric
    std::size_t max_iter = 100000;
    std::optional<ComparisonFunction> phi; // enables the a-priori horizon rule
    bool record_trace = false;
    std::size_t warmup_depth = 64;     // orbit prefix used to estimate diam O(x)
    std::size_t horizon_cap = 1000000; // cap for the decay-horizon search
};

struct TraceRow {
    std::size_t step = 0;
    double dist_prev = 0.0; // d(x_{k-1}, x_k)
    double dist_base = 0.0; // d(x_0, x_k)
    double diam_trunc = 0.0;
};

enum class SolveStatus { Converged, NotConverged };

struct SolveResult {
    SolveStatus status = SolveStatus::NotConverged;
    Point fixed_point;          // best iterate when not converged
    std::size_t iterations = 0; // orbit index of the returned point
    double residual = 0.0;      // d(fixed_point, T fixed_point), recomputed
    std::vector<TraceRow> trace;
    std::optional<DecayCertificate> certificate; // a-priori horizon evidence
    std::size_t horizon_used = 0;
};

/// Iterates T from start until the stopping rule fires, then certifies by
/// recomputing the residual. With cfg.phi: warm-up orbit diameter D feeds
/// decay_horizon(phi, D, eps/2) and the iteration runs to
/// max(horizon, first step with successive distance < eps/2). Without phi:
/// three consecutive successive distances below eps/2. Either way the
/// candidate is accepted only if its residual is <= eps; otherwise the
/// iteration continues. Exhausting max_iter returns NotConverged with the
/// best iterate seen.
SolveResult solve(const SelfMap& T, const Point& start, const SolveConfig& cfg);

struct StartOutcome {
    std::size_t start_index = 0;
    std::optional<SolveResult> result; // empty when the orbit diverged
    std::string error;                 // divergence diagnostic
};

struct MultiStartReport {
    std::vector<StartOutcome> outcomes;
    double max_mutual_distance = 0.0; // diameter of the converged fixed points
    bool unique_within = false;       // all converged and diameter <= 10*eps
};

/// Solves from every start (concurrently; results ordered by start index)
/// and reports the diameter of the returned fixed points. Individual
/// failures are carried per start without aborting the others.
MultiStartReport multi_start_uniqueness(const SelfMap& T, const std::vector<Point>& starts,
                                        const SolveConfig& cfg);

struct BallInvarianceReport {
    bool hypothesis_holds = false; // d(p, Tp) < r - phi(r)
    double step_distance = 0.0;    // d(p, Tp)
    double margin = 0.0;           // r - phi(r)
    bool orbit_checked = false;    // walk only happens under the hypothesis
    bool orbit_inside = false;     // every walked iterate stayed in B(p, r)
    std::size_t first_escape = 0;  // step of the first escape, if any
};

/// Domain-invariance check: if T perturbs the center of B(p, r) by less
/// than r - phi(r), the whole orbit of p must stay inside the closed ball.
BallInvarianceReport ball_invariance_check(const SelfMap& T, const ComparisonFunction& phi,
                                           const Point& p, double r, std::size_t steps);

/// Writes a solve trace as CSV rows: step,dist_prev,dist_base,diam_trunc.
std::string trace_to_csv(const SolveResult& result);

} // namespace qfp
