// SPDX-License-Identifier: Apache-2.0
//
// Problem-config parsing and task execution. Configs are strict JSON:
// unknown fields are rejected and every diagnostic names the offending
// field. Spaces, maps and comparison functions come from a closed set of
// config-describable families; no user code is loaded at runtime.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "qfp/classify.hpp"
#include "qfp/comparison.hpp"
#include "qfp/ifs.hpp"
#include "qfp/metric.hpp"
#include "qfp/orbit.hpp"

namespace qfp {

/// {"kind": "euclidean", "dim": 2} | {"kind": "grid_function", "a": 0.0,
/// "b": 0.5, "nodes": 65} | {"kind": "hausdorff", "ambient_dim": 2},
/// each with an optional "sample_box": [lo, hi].
std::shared_ptr<const MetricSpace> space_from_config(const nlohmann::json& spec);

/// {"family": "affine", "q": 0.5} | {"family": "rational"} |
/// {"family": "poly"} | {"family": "table", "nodes": [[t, v], ...]}.
ComparisonFunction phi_from_config(const nlohmann::json& spec);

/// Map families (applied nodewise on vector-valued points):
///   {"family": "affine", "scale": s, "offset": c}
///   {"family": "cos"}
///   {"family": "rational"}                      -- x/(1+x)
///   {"family": "poly", "coeffs": [c0, c1, ...], "clamp": [lo, hi]?}
///   {"family": "table", "nodes": [[x, v], ...]} -- piecewise linear
///   {"family": "piecewise", "pieces": [{"from": a, "to": b,
///                                       "scale": s, "offset": c}, ...]}
SelfMap map_from_config(const nlohmann::json& spec,
                        std::shared_ptr<const MetricSpace> space);

/// {"named": "sierpinski" | "cantor"} or
/// {"dim": d, "maps": [{"matrix": [...], "offset": [...], "ratio": r}, ...]}.
IfsSystem ifs_from_config(const nlohmann::json& spec);

struct TaskResult {
    int exit_code = 0; // 0 success, 2 negative mathematical verdict
    nlohmann::json report;
    std::optional<std::string> trace_csv;
    std::optional<std::string> points_csv;
};

/// Executes a config's task ("classify", "solve", "probe", "attractor"
/// or "picard"). InputError propagates for malformed configs (exit-1
/// semantics at the CLI); mathematical negatives come back as exit_code 2
/// with a full report.
TaskResult run_task(const nlohmann::json& config,
                    std::optional<std::uint64_t> seed_override, bool want_trace);

} // namespace qfp
