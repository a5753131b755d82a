// SPDX-License-Identifier: Apache-2.0
//
// Three-valued falsification-style classifiers for the contraction
// classes. The four pairwise classes (Banach, nonlinear contraction,
// Ciric linear, strong quasicontraction) are exactly computable per pair
// and never return Inconclusive. The weak quasicontraction class depends
// on orbit suprema, so only its Satisfied verdict is conclusive from a
// truncated diameter; a failed pair is Inconclusive unless the truncation
// has stabilized and a boundedness probe backs it.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfp/comparison.hpp"
#include "qfp/orbit.hpp"

namespace qfp {

enum class Outcome { Satisfied, Falsified, Inconclusive };

const char* to_string(Outcome o);

class ContractionClass {
public:
    enum class Kind { Banach, NonlinearContraction, CiricLinear, StrongQuasi, WeakQuasi };

    static ContractionClass banach(double q);
    static ContractionClass nonlinear_contraction(ComparisonFunction phi);
    static ContractionClass ciric_linear(double q);
    static ContractionClass strong_quasi(ComparisonFunction phi);
    static ContractionClass weak_quasi(ComparisonFunction phi);

    Kind kind() const { return kind_; }
    double q() const { return q_; }
    const ComparisonFunction& phi() const;
    std::string name() const;

private:
    ContractionClass(Kind kind, double q, std::optional<ComparisonFunction> phi);

    Kind kind_;
    double q_ = 0.0;
    std::optional<ComparisonFunction> phi_;
};

struct Witness {
    Point x;
    Point y;
    double lhs = 0.0; // d(Tx, Ty)
    double rhs = 0.0; // the class bound the pair violated (or met)
};

struct ClassificationVerdict {
    std::string class_name;
    Outcome outcome = Outcome::Satisfied;
    std::optional<Witness> witness; // present whenever outcome != Satisfied
    std::size_t depth_used = 0;
    std::size_t pairs_tested = 0;
    std::uint64_t seed = 0;
    std::string note; // stabilization / probe evidence, free text
};

/// A pair collection plus the seed it was drawn with (recorded in reports).
struct PairSet {
    std::vector<std::pair<Point, Point>> pairs;
    std::uint64_t seed = 0;
};

/// Draws `count` random pairs from the space's sampler, preceded by the
/// user-listed witness pairs. Deterministic under a fixed seed.
PairSet sample_pairs(const MetricSpace& space, std::size_t count, std::uint64_t seed,
                     const std::vector<std::pair<Point, Point>>& witness_extra = {});

/// Pairwise classes: each pair's inequality is exactly computable, so the
/// outcome is Satisfied or Falsified, never Inconclusive. A pair falsifies
/// only if lhs - rhs > 1e-10 * (1 + rhs); the reported witness is the
/// lexicographically smallest falsifying pair.
ClassificationVerdict classify_pairwise(const SelfMap& T, const ContractionClass& cls,
                                        const PairSet& pairs);

struct WeakQuasiOptions {
    std::size_t probe_depth = 4096;
    /// The internal probe flags a pair when the orbit wanders this many
    /// times the pair's own scale (1 + d(x,Tx) + d(x,y)) from its base.
    /// Tighter than the standalone probe default on purpose: here an
    /// exceeded probe only downgrades a verdict to Inconclusive.
    double probe_scale = 1000.0;
    /// Truncation counts as stabilized when D(depth) - D(depth/2) < this.
    double stabilization_tol = 1e-12;
};

/// d(Tx,Ty) <= phi(diam of the truncated double orbit) for every pair.
/// All pairs passing is conclusive (the truncation underestimates the true
/// diameter and phi is increasing) unless an orbit fails the boundedness
/// probe, which downgrades to Inconclusive. A failing pair yields
/// Falsified only with stabilized truncation plus a bounded probe.
ClassificationVerdict classify_weak_quasi(const SelfMap& T, const ComparisonFunction& phi,
                                          const PairSet& pairs, std::size_t depth,
                                          const WeakQuasiOptions& opts = {});

/// Checks that T^n is a weak phi^n-quasicontraction on the same pairs.
/// Requires classify_weak_quasi(T, phi, pairs, depth) to be Satisfied
/// (InputError otherwise). A Falsified outcome here can only come from an
/// implementation bug and raises InternalError.
ClassificationVerdict iterated_map_check(const SelfMap& T, const ComparisonFunction& phi,
                                         std::size_t n, const PairSet& pairs,
                                         std::size_t depth,
                                         const WeakQuasiOptions& opts = {});

} // namespace qfp
