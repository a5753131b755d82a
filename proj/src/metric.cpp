// SPDX-License-Identifier: Apache-2.0
#include "qfp/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qfp/errors.hpp"
#include "qfp/kernels.hpp"

namespace qfp {

FinitePointSet::FinitePointSet(std::vector<Vec> elements)
    : elements_(std::move(elements)) {
    if (elements_.empty())
        throw InputError("FinitePointSet: must be non-empty");
    const std::size_t dim = elements_.front().size();
    if (dim == 0)
        throw InputError("FinitePointSet: elements must have positive dimension");
    for (const auto& e : elements_)
        if (e.size() != dim)
            throw InputError("FinitePointSet: elements must share a common dimension");
}

const Vec& Point::as_vector() const {
    if (!is_vector())
        throw InputError("Point: expected a coordinate vector");
    return std::get<Vec>(value_);
}

const FinitePointSet& Point::as_point_set() const {
    if (!is_point_set())
        throw InputError("Point: expected a finite point set");
    return std::get<FinitePointSet>(value_);
}

bool Point::all_finite() const {
    if (is_vector()) {
        for (double v : std::get<Vec>(value_))
            if (!std::isfinite(v))
                return false;
        return true;
    }
    for (const auto& e : std::get<FinitePointSet>(value_).elements())
        for (double v : e)
            if (!std::isfinite(v))
                return false;
    return true;
}

namespace {

int vec_compare(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i])
            return -1;
        if (a[i] > b[i])
            return 1;
    }
    return 0;
}

int point_compare(const Point& a, const Point& b) {
    if (a.is_vector() != b.is_vector())
        return a.is_vector() ? -1 : 1;
    if (a.is_vector())
        return vec_compare(a.as_vector(), b.as_vector());
    const auto& ea = a.as_point_set().elements();
    const auto& eb = b.as_point_set().elements();
    const std::size_t n = std::min(ea.size(), eb.size());
    for (std::size_t i = 0; i < n; ++i)
        if (int c = vec_compare(ea[i], eb[i]); c != 0)
            return c;
    if (ea.size() != eb.size())
        return ea.size() < eb.size() ? -1 : 1;
    return 0;
}

} // namespace

bool point_lex_less(const Point& a, const Point& b) {
    return point_compare(a, b) < 0;
}

bool points_equal(const Point& a, const Point& b, double tol) {
    if (a.is_vector() != b.is_vector())
        return false;
    if (a.is_vector()) {
        const Vec& va = a.as_vector();
        const Vec& vb = b.as_vector();
        if (va.size() != vb.size())
            return false;
        for (std::size_t i = 0; i < va.size(); ++i)
            if (std::abs(va[i] - vb[i]) > tol)
                return false;
        return true;
    }
    const auto& ea = a.as_point_set().elements();
    const auto& eb = b.as_point_set().elements();
    if (ea.size() != eb.size())
        return false;
    for (std::size_t i = 0; i < ea.size(); ++i) {
        if (ea[i].size() != eb[i].size())
            return false;
        for (std::size_t k = 0; k < ea[i].size(); ++k)
            if (std::abs(ea[i][k] - eb[i][k]) > tol)
                return false;
    }
    return true;
}

Point MetricSpace::sample(std::mt19937_64&) const {
    throw UnsupportedError("space '" + label() + "' has no sampler");
}

EuclideanSpace::EuclideanSpace(std::size_t dim, double sample_lo, double sample_hi)
    : MetricSpace("euclidean(" + std::to_string(dim) + ")"), dim_(dim),
      lo_(sample_lo), hi_(sample_hi) {
    if (dim_ == 0)
        throw InputError("EuclideanSpace: dimension must be positive");
    if (!(lo_ < hi_))
        throw InputError("EuclideanSpace: sample box must be non-degenerate");
}

double EuclideanSpace::distance(const Point& x, const Point& y) const {
    if (!contains(x) || !contains(y))
        throw InputError("EuclideanSpace: point does not belong to this space");
    return kernels::euclid(x.as_vector(), y.as_vector());
}

bool EuclideanSpace::contains(const Point& p) const {
    return p.is_vector() && p.as_vector().size() == dim_;
}

Point EuclideanSpace::sample(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> dist(lo_, hi_);
    Vec v(dim_);
    for (auto& c : v)
        c = dist(rng);
    return Point::vector(std::move(v));
}

GridFunctionSpace::GridFunctionSpace(double a, double b, std::size_t nodes,
                                     double sample_lo, double sample_hi)
    : MetricSpace("grid_function"), a_(a), b_(b), nodes_(nodes),
      lo_(sample_lo), hi_(sample_hi) {
    if (!(a_ < b_))
        throw InputError("GridFunctionSpace: requires a < b");
    if (nodes_ < 2)
        throw InputError("GridFunctionSpace: needs at least 2 nodes");
    if (!(lo_ < hi_))
        throw InputError("GridFunctionSpace: sample box must be non-degenerate");
}

double GridFunctionSpace::distance(const Point& x, const Point& y) const {
    if (!contains(x) || !contains(y))
        throw InputError("GridFunctionSpace: point does not belong to this space");
    const Vec& f = x.as_vector();
    const Vec& g = y.as_vector();
    double sup = 0.0;
    for (std::size_t i = 0; i < nodes_; ++i)
        sup = std::max(sup, std::abs(f[i] - g[i]));
    return sup;
}

bool GridFunctionSpace::contains(const Point& p) const {
    return p.is_vector() && p.as_vector().size() == nodes_;
}

Point GridFunctionSpace::sample(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> dist(lo_, hi_);
    Vec v(nodes_);
    for (auto& c : v)
        c = dist(rng);
    return Point::vector(std::move(v));
}

std::vector<double> GridFunctionSpace::grid() const {
    std::vector<double> ts(nodes_);
    const double h = step();
    for (std::size_t i = 0; i < nodes_; ++i)
        ts[i] = a_ + h * static_cast<double>(i);
    ts.back() = b_;
    return ts;
}

Point GridFunctionSpace::constant(double value) const {
    return Point::vector(Vec(nodes_, value));
}

HausdorffSpace::HausdorffSpace(std::size_t ambient_dim, double sample_lo,
                               double sample_hi, std::size_t max_set_size)
    : MetricSpace("hausdorff(" + std::to_string(ambient_dim) + ")"),
      ambient_dim_(ambient_dim), lo_(sample_lo), hi_(sample_hi),
      max_set_size_(max_set_size) {
    if (ambient_dim_ == 0)
        throw InputError("HausdorffSpace: ambient dimension must be positive");
    if (max_set_size_ == 0)
        throw InputError("HausdorffSpace: max sample set size must be positive");
    if (!(lo_ < hi_))
        throw InputError("HausdorffSpace: sample box must be non-degenerate");
}

double HausdorffSpace::distance(const Point& x, const Point& y) const {
    if (!contains(x) || !contains(y))
        throw InputError("HausdorffSpace: point does not belong to this space");
    return hausdorff_distance(x.as_point_set(), y.as_point_set());
}

bool HausdorffSpace::contains(const Point& p) const {
    return p.is_point_set() && p.as_point_set().dimension() == ambient_dim_;
}

Point HausdorffSpace::sample(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::size_t> size_dist(1, max_set_size_);
    std::uniform_real_distribution<double> coord(lo_, hi_);
    std::vector<Vec> elements(size_dist(rng));
    for (auto& e : elements) {
        e.resize(ambient_dim_);
        for (auto& c : e)
            c = coord(rng);
    }
    return Point::point_set(FinitePointSet(std::move(elements)));
}

double hausdorff_distance(const FinitePointSet& a, const FinitePointSet& b) {
    if (a.dimension() != b.dimension())
        throw InputError("hausdorff_distance: ambient dimension mismatch");
    const double ab = kernels::directed_gap(a.elements(), b.elements());
    const double ba = kernels::directed_gap(b.elements(), a.elements());
    return std::max(ab, ba);
}

double diam(const MetricSpace& space, std::span<const Point> points) {
    if (points.empty())
        throw InputError("diam: needs a non-empty collection");
    for (const Point& p : points)
        if (!space.contains(p))
            throw InputError("diam: point does not belong to the space");
    return kernels::max_pairwise(points.size(), [&](std::size_t i, std::size_t j) {
        return space.distance(points[i], points[j]);
    });
}

std::vector<MetricAxiomViolation> check_metric_axioms(const MetricSpace& space,
                                                      std::size_t sample_count,
                                                      std::uint64_t seed) {
    if (!space.has_sampler())
        throw UnsupportedError("check_metric_axioms: space '" + space.label() +
                               "' has no sampler");
    constexpr double kTol = 1e-12;
    std::mt19937_64 rng(seed);
    std::vector<MetricAxiomViolation> out;
    auto report = [&](MetricAxiomViolation::Axiom axiom, std::size_t idx,
                      double lhs, double rhs, const char* what) {
        std::ostringstream msg;
        msg << what << " violated on triple " << idx << " (lhs=" << lhs
            << ", rhs=" << rhs << ")";
        out.push_back({axiom, idx, lhs, rhs, msg.str()});
    };
    for (std::size_t i = 0; i < sample_count; ++i) {
        const Point x = space.sample(rng);
        const Point y = space.sample(rng);
        const Point z = space.sample(rng);
        const double dxx = space.distance(x, x);
        const double dxy = space.distance(x, y);
        const double dyx = space.distance(y, x);
        const double dyz = space.distance(y, z);
        const double dxz = space.distance(x, z);
        if (std::abs(dxx) > kTol)
            report(MetricAxiomViolation::Axiom::Identity, i, dxx, 0.0, "d(x,x)=0");
        if (dxy < 0.0)
            report(MetricAxiomViolation::Axiom::Nonnegativity, i, dxy, 0.0,
                   "d(x,y)>=0");
        if (std::abs(dxy - dyx) > kTol)
            report(MetricAxiomViolation::Axiom::Symmetry, i, dxy, dyx, "symmetry");
        if (dxz > dxy + dyz + kTol)
            report(MetricAxiomViolation::Axiom::Triangle, i, dxz, dxy + dyz,
                   "triangle inequality");
    }
    return out;
}

} // namespace qfp
