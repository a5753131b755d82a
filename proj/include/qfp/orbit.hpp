// SPDX-License-Identifier: Apache-2.0
//
// Orbits of self-maps: finite orbit/double-orbit prefixes with cached
// truncated diameters, boundedness probes, and the closed-form a-priori
// orbit bound for linear quasicontractions. A truncated diameter is a
// lower bound on the true orbit diameter; verdicts built on it are
// one-sided and the API documents which side is conclusive.
#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qfp/metric.hpp"

namespace qfp {

/// A map T: X -> X under study, paired with its metric space.
struct SelfMap {
    std::function<Point(const Point&)> apply;
    std::shared_ptr<const MetricSpace> space;
    std::string label;
};

/// Builds a 1-d Euclidean self-map from a scalar function.
SelfMap scalar_self_map(std::function<double(double)> f, std::string label,
                        double sample_lo = -1.0, double sample_hi = 1.0);

/// n-fold composite of a self-map; n = 0 is the identity on the same space.
SelfMap composite_map(const SelfMap& T, std::size_t n);

struct OrbitPrefix {
    std::size_t depth = 0;      // n
    std::vector<Point> points;  // x, Tx, ..., T^n x  (depth+1 entries)
    double diam_trunc = 0.0;    // diameter of the listed points

    const Point& base() const { return points.front(); }
    const Point& last() const { return points.back(); }
};

/// Walks depth steps from x. Non-finite coordinates raise DivergenceError
/// carrying the offending step; points leaving the space raise InputError.
OrbitPrefix orbit_prefix(const SelfMap& T, const Point& x, std::size_t depth);

struct DoubleOrbitPrefix {
    OrbitPrefix first;
    OrbitPrefix second;
    double diam_trunc = 0.0; // diameter of the union of both prefixes
};

DoubleOrbitPrefix double_orbit_prefix(const SelfMap& T, const Point& x,
                                      const Point& y, std::size_t depth);

/// Diameter of the union at a shallower truncation of an already-computed
/// double orbit (used for stabilization evidence).
double double_orbit_diam_at(const MetricSpace& space, const DoubleOrbitPrefix& dob,
                            std::size_t depth);

struct ProbeVerdict {
    bool exceeded = false;     // true: threshold reached, orbit walk stopped
    std::size_t step = 0;      // first step with d(base, T^k x) >= threshold
    double distance = 0.0;     // that distance
    double diam_trunc = 0.0;   // truncated diameter when bounded so far
};

/// Walks the orbit up to depth steps; reports the first step whose distance
/// from the base reaches blowup_threshold, else the truncated diameter.
/// A bounded verdict is evidence, not proof.
ProbeVerdict boundedness_probe(const SelfMap& T, const Point& x, std::size_t depth,
                               double blowup_threshold);

/// Scale-aware default: 1e6 * (1 + d(x, Tx)).
double default_blowup_threshold(const SelfMap& T, const Point& x);

struct CiricBoundReport {
    double step_distance = 0.0; // d(x, Tx)
    double bound = 0.0;         // d(x, Tx) / (1 - q)
    double observed = 0.0;      // truncated orbit diameter at the given depth
    bool holds = false;         // observed <= bound + 1e-12
};

/// A-priori uniform orbit bound for a linear quasicontraction with factor q,
/// checked against the observed truncated diameter.
CiricBoundReport ciric_orbit_bound(const SelfMap& T, const Point& x, double q,
                                   std::size_t depth);

/// CSV rows (step, coordinates..., dist_base, diam_trunc_so_far) for orbits
/// of vector-valued points; InputError for point-set orbits.
std::string orbit_to_csv(const MetricSpace& space, const OrbitPrefix& orbit);

} // namespace qfp
