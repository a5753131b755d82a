// SPDX-License-Identifier: Apache-2.0
//
// Curated registry of example maps with their expected classification
// verdicts, fixed points and bound checks. Every expectation carries a
// provenance note (analytic reasoning or a brute-force oracle); the
// consolidated per-entry reports double as the regression suite.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfp/classify.hpp"
#include "qfp/ifs.hpp"
#include "qfp/picard.hpp"
#include "qfp/solver.hpp"

namespace qfp {

struct ExpectedClassification {
    ContractionClass cls;
    Outcome expected;
    std::string provenance;
};

struct BallPlan {
    Point center;
    double radius = 0.0;
    ComparisonFunction phi;
    std::size_t steps = 1000;
    bool expect_hypothesis = false;
    bool expect_inside = false;
};

struct AttractorPlan {
    IfsSystem system;
    Vec seed;
    double eps = 0.01;
    std::size_t max_depth = 64;
    /// Points of the returned set must lie in [box_lo, box_hi]^d.
    std::optional<std::pair<double, double>> expect_box;
};

struct GalleryEntry {
    std::string label;
    std::string notes;
    std::shared_ptr<const MetricSpace> space;
    SelfMap map;

    std::size_t pair_count = 256;
    std::size_t classify_depth = 64;
    std::vector<std::pair<Point, Point>> witness_pairs;
    std::vector<ExpectedClassification> pairwise_expectations;

    std::optional<ComparisonFunction> weak_phi;
    std::optional<Outcome> weak_expected;

    /// Matched parameter for the class-hierarchy chain
    /// Banach(q) -> NonlinearContraction(qt) -> CiricLinear(q) -> StrongQuasi(qt).
    double hierarchy_q = 0.5;

    std::vector<Point> starts; // >= 2 runs multi-start uniqueness
    std::optional<SolveConfig> solve_cfg;
    std::optional<Point> expected_fixed_point;
    double fixed_point_tol = 0.0;
    std::string fixed_point_provenance;
    bool expect_unique = false;
    std::optional<double> expect_exact_mutual;

    std::optional<Point> probe_start;
    std::size_t probe_depth = 4096;
    std::optional<double> probe_threshold; // scale-aware default when empty
    bool expect_exceeded = false;

    std::optional<double> ciric_q;
    std::optional<Point> ciric_start;
    std::size_t ciric_depth = 4096;

    std::vector<BallPlan> ball_plans;
    std::optional<AttractorPlan> attractor_plan;
};

struct CheckResult {
    std::string name;
    bool ok = false;
    nlohmann::json details;
};

struct EntryReport {
    std::string label;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    bool all_met = false;
};

/// All bundled entries, ordered by label.
std::vector<GalleryEntry> list_entries();

/// Entry lookup; InputError on unknown labels.
GalleryEntry find_entry(const std::string& label);

/// Runs every planned check of an entry and diffs against expectations.
EntryReport run_entry(const GalleryEntry& entry, std::uint64_t seed);
EntryReport run_entry(const std::string& label, std::uint64_t seed);

nlohmann::json to_json(const EntryReport& report);

} // namespace qfp
