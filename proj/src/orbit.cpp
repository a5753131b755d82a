// SPDX-License-Identifier: Apache-2.0
#include "qfp/orbit.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "qfp/errors.hpp"

namespace qfp {

SelfMap scalar_self_map(std::function<double(double)> f, std::string label,
                        double sample_lo, double sample_hi) {
    auto space = std::make_shared<EuclideanSpace>(1, sample_lo, sample_hi);
    auto apply = [f = std::move(f)](const Point& p) {
        return scalar_point(f(p.as_vector()[0]));
    };
    return {std::move(apply), std::move(space), std::move(label)};
}

SelfMap composite_map(const SelfMap& T, std::size_t n) {
    auto apply = [inner = T.apply, n](const Point& p) {
        Point out = p;
        for (std::size_t k = 0; k < n; ++k)
            out = inner(out);
        return out;
    };
    return {std::move(apply), T.space, T.label + "^" + std::to_string(n)};
}

namespace {

Point checked_step(const SelfMap& T, const Point& current, std::size_t step) {
    Point next = T.apply(current);
    if (!next.all_finite())
        throw DivergenceError("orbit of '" + T.label +
                                  "' produced non-finite coordinates at step " +
                                  std::to_string(step),
                              step);
    if (!T.space->contains(next))
        throw InputError("orbit of '" + T.label + "' left its space at step " +
                         std::to_string(step));
    return next;
}

} // namespace

OrbitPrefix orbit_prefix(const SelfMap& T, const Point& x, std::size_t depth) {
    if (!T.space->contains(x))
        throw InputError("orbit_prefix: base point does not belong to the space");
    OrbitPrefix orbit;
    orbit.depth = depth;
    orbit.points.reserve(depth + 1);
    orbit.points.push_back(x);
    for (std::size_t k = 1; k <= depth; ++k)
        orbit.points.push_back(checked_step(T, orbit.points.back(), k));
    orbit.diam_trunc = diam(*T.space, orbit.points);
    return orbit;
}

DoubleOrbitPrefix double_orbit_prefix(const SelfMap& T, const Point& x,
                                      const Point& y, std::size_t depth) {
    DoubleOrbitPrefix dob;
    dob.first = orbit_prefix(T, x, depth);
    dob.second = orbit_prefix(T, y, depth);
    std::vector<Point> all;
    all.reserve(dob.first.points.size() + dob.second.points.size());
    all.insert(all.end(), dob.first.points.begin(), dob.first.points.end());
    all.insert(all.end(), dob.second.points.begin(), dob.second.points.end());
    dob.diam_trunc = diam(*T.space, all);
    return dob;
}

double double_orbit_diam_at(const MetricSpace& space, const DoubleOrbitPrefix& dob,
                            std::size_t depth) {
    const std::size_t take = std::min(depth, dob.first.depth) + 1;
    std::vector<Point> all;
    all.reserve(2 * take);
    all.insert(all.end(), dob.first.points.begin(), dob.first.points.begin() + take);
    all.insert(all.end(), dob.second.points.begin(), dob.second.points.begin() + take);
    return diam(space, all);
}

ProbeVerdict boundedness_probe(const SelfMap& T, const Point& x, std::size_t depth,
                               double blowup_threshold) {
    if (depth < 1)
        throw InputError("boundedness_probe: depth must be at least 1");
    if (!T.space->contains(x))
        throw InputError("boundedness_probe: base point does not belong to the space");
    std::vector<Point> walked;
    walked.reserve(depth + 1);
    walked.push_back(x);
    for (std::size_t k = 1; k <= depth; ++k) {
        walked.push_back(checked_step(T, walked.back(), k));
        const double from_base = T.space->distance(x, walked.back());
        if (from_base >= blowup_threshold)
            return {true, k, from_base, 0.0};
    }
    return {false, 0, 0.0, diam(*T.space, walked)};
}

double default_blowup_threshold(const SelfMap& T, const Point& x) {
    const Point tx = T.apply(x);
    return 1e6 * (1.0 + T.space->distance(x, tx));
}

CiricBoundReport ciric_orbit_bound(const SelfMap& T, const Point& x, double q,
                                   std::size_t depth) {
    if (!(q > 0.0 && q < 1.0))
        throw InputError("ciric_orbit_bound: q must lie in (0,1)");
    CiricBoundReport report;
    const Point tx = checked_step(T, x, 1);
    report.step_distance = T.space->distance(x, tx);
    report.bound = report.step_distance / (1.0 - q);
    report.observed = orbit_prefix(T, x, depth).diam_trunc;
    report.holds = report.observed <= report.bound + 1e-12;
    return report;
}

std::string orbit_to_csv(const MetricSpace& space, const OrbitPrefix& orbit) {
    if (orbit.points.empty() || !orbit.points.front().is_vector())
        throw InputError("orbit_to_csv: only vector-valued orbits are exportable");
    std::ostringstream os;
    os.precision(17);
    const std::size_t dim = orbit.points.front().as_vector().size();
    os << "step";
    for (std::size_t k = 0; k < dim; ++k)
        os << ",x" << k;
    os << ",dist_base,diam_trunc_so_far\n";
    double running = 0.0;
    for (std::size_t i = 0; i < orbit.points.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            running = std::max(running,
                               space.distance(orbit.points[j], orbit.points[i]));
        os << i;
        for (double c : orbit.points[i].as_vector())
            os << ',' << c;
        os << ',' << space.distance(orbit.points.front(), orbit.points[i]) << ','
           << running << '\n';
    }
    return os.str();
}

} // namespace qfp
