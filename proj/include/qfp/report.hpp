// SPDX-License-Identifier: Apache-2.0
//
// JSON views of verdicts and results. Reports are the toolkit's stable
// external surface: identical inputs and seeds must produce byte-identical
// dumps, so nothing here may depend on wall time, addresses, or thread
// count. Schema version: reports carry {"version": 1}.
#pragma once

#include <json.hpp>

#include "qfp/classify.hpp"
#include "qfp/ifs.hpp"
#include "qfp/metric.hpp"
#include "qfp/orbit.hpp"
#include "qfp/solver.hpp"

namespace qfp {

inline constexpr int kReportVersion = 1;

nlohmann::json to_json(const Point& p);
nlohmann::json to_json(const ClassificationVerdict& v);
nlohmann::json to_json(const SolveResult& r);
nlohmann::json to_json(const MultiStartReport& r);
nlohmann::json to_json(const ProbeVerdict& v);
nlohmann::json to_json(const CiricBoundReport& r);
nlohmann::json to_json(const BallInvarianceReport& r);
nlohmann::json to_json(const SeriesCheck& c);

/// Certificate only ({depth, q, bound, ...}); the point cloud goes to CSV.
nlohmann::json to_json(const AttractorResult& r);

} // namespace qfp
