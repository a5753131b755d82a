// SPDX-License-Identifier: Apache-2.0
#include "qfp/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qfp/errors.hpp"
#include "qfp/kernels.hpp"

namespace qfp {

Vec AffineContraction::apply(const Vec& x) const {
    const std::size_t d = offset.size();
    Vec out(d);
    for (std::size_t r = 0; r < d; ++r) {
        double acc = offset[r];
        for (std::size_t c = 0; c < d; ++c)
            acc += matrix[r * d + c] * x[c];
        out[r] = acc;
    }
    return out;
}

IfsSystem::IfsSystem(std::vector<AffineContraction> maps, std::size_t dim)
    : maps_(std::move(maps)), dim_(dim), ratio_(0.0) {
    if (maps_.empty())
        throw InputError("IfsSystem: needs at least one map");
    if (dim_ == 0)
        throw InputError("IfsSystem: dimension must be positive");
    for (const auto& m : maps_) {
        if (m.matrix.size() != dim_ * dim_ || m.offset.size() != dim_)
            throw InputError("IfsSystem: map dimensions do not match the system");
        if (!(m.ratio > 0.0 && m.ratio < 1.0))
            throw InputError("IfsSystem: every ratio must lie in (0,1)");
        ratio_ = std::max(ratio_, m.ratio);
    }
}

namespace {

void canonicalize(std::vector<Vec>& pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

FinitePointSet step_impl(const IfsSystem& sys, const FinitePointSet& s, bool parallel) {
    const auto& src = s.elements();
    std::vector<Vec> out;
    auto produce = [&](std::size_t m, std::size_t p) {
        return sys.maps()[m].apply(src[p]);
    };
    if (parallel)
        kernels::apply_product_parallel(sys.maps().size(), src.size(), produce, out);
    else
        kernels::apply_product_serial(sys.maps().size(), src.size(), produce, out);
    canonicalize(out);
    return FinitePointSet(std::move(out));
}

} // namespace

FinitePointSet hutchinson_step(const IfsSystem& sys, const FinitePointSet& s) {
    return step_impl(sys, s, true);
}

FinitePointSet hutchinson_step_serial(const IfsSystem& sys, const FinitePointSet& s) {
    return step_impl(sys, s, false);
}

SelfMap hutchinson_map(const IfsSystem& sys,
                       std::shared_ptr<const HausdorffSpace> space) {
    if (space->ambient_dimension() != sys.dimension())
        throw InputError("hutchinson_map: space dimension does not match the system");
    auto apply = [sys](const Point& p) {
        return Point::point_set(hutchinson_step(sys, p.as_point_set()));
    };
    return {std::move(apply), std::move(space), "hutchinson"};
}

namespace {

std::vector<Vec> snap_to_lattice(const std::vector<Vec>& pts, double pitch) {
    std::vector<Vec> out;
    out.reserve(pts.size());
    for (const Vec& p : pts) {
        Vec q(p.size());
        for (std::size_t k = 0; k < p.size(); ++k)
            q[k] = std::round(p[k] / pitch) * pitch;
        out.push_back(std::move(q));
    }
    canonicalize(out);
    return out;
}

} // namespace

AttractorResult attractor(const IfsSystem& sys, const Vec& seed, double eps,
                          std::size_t max_depth, std::size_t point_budget) {
    if (!(eps > 0.0))
        throw InputError("attractor: eps must be positive");
    if (seed.size() != sys.dimension())
        throw InputError("attractor: seed dimension does not match the system");
    for (double c : seed)
        if (!std::isfinite(c))
            throw InputError("attractor: seed must be finite");

    AttractorResult result;
    result.q = sys.ratio();
    result.dedup_pitch = eps / 10.0;

    FinitePointSet current({seed});
    FinitePointSet next = hutchinson_step(sys, current);
    const double d0 = hausdorff_distance(current, next);
    const double q = result.q;

    // Certified bound for the computed set C_n: the clean geometric term
    // q^n * d0 / (1 - q) plus the propagated lattice perturbation. A snap
    // moves points by at most pitch * sqrt(d) / 2 and the next Hutchinson
    // step contracts the carried discrepancy by q, so
    // extra_{n+1} = q * extra_n + snap_step * [snapped at n+1].
    double power = 1.0; // q^n
    double snap_extra = 0.0;
    const double snap_step =
        result.dedup_pitch * std::sqrt(static_cast<double>(sys.dimension())) / 2.0;

    std::size_t n = 0;
    while (true) {
        result.bound = power * d0 / (1.0 - q) + snap_extra;
        if (result.bound < eps) {
            result.converged = true;
            break;
        }
        if (n == max_depth)
            break; // not converged; carry the best truncation and its bound
        result.step_distances.push_back(hausdorff_distance(current, next));
        current = std::move(next);
        snap_extra *= q;
        if (current.size() > point_budget) {
            current = FinitePointSet(snap_to_lattice(current.elements(),
                                                     result.dedup_pitch));
            result.dedup_used = true;
            snap_extra += snap_step;
        }
        next = hutchinson_step(sys, current);
        power *= q;
        ++n;
    }
    result.depth = n;
    result.points = std::move(current);
    return result;
}

IfsSystem sierpinski_system() {
    const double s = 0.5;
    const double h = 0.5 * std::sqrt(3.0) / 2.0; // half the triangle height
    std::vector<AffineContraction> maps = {
        {{s, 0.0, 0.0, s}, {0.0, 0.0}, 0.5},
        {{s, 0.0, 0.0, s}, {0.5, 0.0}, 0.5},
        {{s, 0.0, 0.0, s}, {0.25, h}, 0.5},
    };
    return IfsSystem(std::move(maps), 2);
}

IfsSystem cantor_system() {
    const double third = 1.0 / 3.0;
    std::vector<AffineContraction> maps = {
        {{third}, {0.0}, third},
        {{third}, {2.0 / 3.0}, third},
    };
    return IfsSystem(std::move(maps), 1);
}

std::string point_set_to_csv(const FinitePointSet& s) {
    std::ostringstream os;
    os.precision(17);
    for (const Vec& p : s.elements()) {
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (k > 0)
                os << ',';
            os << p[k];
        }
        os << '\n';
    }
    return os.str();
}

} // namespace qfp
