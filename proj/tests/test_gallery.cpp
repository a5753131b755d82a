// SPDX-License-Identifier: Apache-2.0
//
// The gallery's consolidated reports against their expectations ARE the
// regression suite: every bundled entry must meet every recorded check.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "qfp/errors.hpp"
#include "qfp/gallery.hpp"

using namespace qfp;

TEST_CASE("the bundled entries cover the advertised set, ordered by label") {
    const auto entries = list_entries();
    std::vector<std::string> labels;
    for (const auto& e : entries)
        labels.push_back(e.label);
    const std::vector<std::string> expected{
        "arith_walk", "cantor",      "cos",        "halving",   "harmonic",
        "identity",   "kannan_like", "picard_exp", "sierpinski"};
    CHECK(labels == expected);
}

TEST_CASE("every expectation carries a provenance note") {
    for (const auto& e : list_entries()) {
        CHECK_FALSE(e.notes.empty());
        for (const auto& expectation : e.pairwise_expectations)
            CHECK_FALSE(expectation.provenance.empty());
        if (e.expected_fixed_point)
            CHECK_FALSE(e.fixed_point_provenance.empty());
    }
}

TEST_CASE("halving meets all of its expectations") {
    const EntryReport report = run_entry("halving", 0);
    for (const auto& c : report.checks)
        CHECK_MESSAGE(c.ok, c.name);
    CHECK(report.all_met);
}

TEST_CASE("cos converges to the oracle fixed point") {
    const EntryReport report = run_entry("cos", 0);
    CHECK(report.all_met);
    const GalleryEntry entry = find_entry("cos");
    REQUIRE(entry.expected_fixed_point.has_value());
    const double recorded = entry.expected_fixed_point->as_vector()[0];
    CHECK(std::abs(recorded - oracles::bisect_cos_fixed_point()) < 1e-13);
}

TEST_CASE("arith_walk probes past its threshold and never solves") {
    const GalleryEntry entry = find_entry("arith_walk");
    CHECK(entry.starts.empty());
    CHECK(entry.expect_exceeded);
    const EntryReport report = run_entry(entry, 0);
    CHECK(report.all_met);
    bool saw_probe = false;
    for (const auto& c : report.checks) {
        if (c.name == "boundedness_probe") {
            saw_probe = true;
            CHECK(c.details["verdict"]["verdict"] == "ThresholdExceeded");
            CHECK(c.details["verdict"]["step"] == 1000);
        }
        CHECK(c.name.rfind("solve", 0) != 0);
    }
    CHECK(saw_probe);
}

TEST_CASE("kannan_like records the measured minimal factor") {
    const GalleryEntry entry = find_entry("kannan_like");
    CHECK(entry.hierarchy_q == doctest::Approx(oracles::kannan_min_q(1e-3)));
    CHECK(run_entry(entry, 0).all_met);
}

TEST_CASE("every gallery entry meets every expectation") {
    for (const auto& entry : list_entries()) {
        const EntryReport report = run_entry(entry, 0);
        for (const auto& c : report.checks)
            CHECK_MESSAGE(c.ok, entry.label, ": ", c.name);
        CHECK_MESSAGE(report.all_met, entry.label);
    }
}

TEST_CASE("reports are byte-identical across repeated seeded runs") {
    for (const std::string label : {"halving", "identity", "cantor"}) {
        const std::string a = to_json(run_entry(label, 0)).dump();
        const std::string b = to_json(run_entry(label, 0)).dump();
        CHECK(a == b);
    }
}

TEST_CASE("reports change with the sampling seed but stay valid") {
    const EntryReport r1 = run_entry("halving", 1);
    const EntryReport r7 = run_entry("halving", 7);
    CHECK(r1.all_met);
    CHECK(r7.all_met);
    CHECK(r1.seed == 1);
    CHECK(r7.seed == 7);
}

TEST_CASE("unknown labels are input errors") {
    CHECK_THROWS_AS(find_entry("zzz"), InputError);
    CHECK_THROWS_AS(run_entry("zzz", 0), InputError);
}

TEST_CASE("report json carries the schema version and checks") {
    const auto j = to_json(run_entry("identity", 0));
    CHECK(j["version"] == 1);
    CHECK(j["label"] == "identity");
    CHECK(j["all_met"] == true);
    CHECK(j["checks"].is_array());
    CHECK(j["checks"].size() >= 5);
}
