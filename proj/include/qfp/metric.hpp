// SPDX-License-Identifier: Apache-2.0
//
// Metric spaces and points. Three concrete spaces are provided: Euclidean
// R^d, the sup metric on grid-sampled functions, and the Hausdorff metric
// on non-empty finite point sets. Sampled metric-axiom verification lives
// here too, so deliberately broken "distances" can be exposed in tests.
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace qfp {

using Vec = std::vector<double>;

/// Non-empty finite collection of real vectors of common dimension.
/// Carrier of the Hausdorff-metric space.
class FinitePointSet {
public:
    explicit FinitePointSet(std::vector<Vec> elements);
    FinitePointSet(std::initializer_list<Vec> elements)
        : FinitePointSet(std::vector<Vec>(elements)) {}

    const std::vector<Vec>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    std::size_t dimension() const { return elements_.front().size(); }

private:
    std::vector<Vec> elements_;
};

/// Opaque value interpreted by its owning space: a coordinate vector
/// (Euclidean), a table of grid values (grid functions), or a finite
/// point set (Hausdorff).
class Point {
public:
    Point() : value_(Vec{}) {}

    static Point vector(Vec v) { return Point(std::move(v)); }
    static Point point_set(FinitePointSet s) { return Point(std::move(s)); }

    bool is_vector() const { return std::holds_alternative<Vec>(value_); }
    bool is_point_set() const { return std::holds_alternative<FinitePointSet>(value_); }

    const Vec& as_vector() const;
    const FinitePointSet& as_point_set() const;

    bool all_finite() const;

private:
    explicit Point(Vec v) : value_(std::move(v)) {}
    explicit Point(FinitePointSet s) : value_(std::move(s)) {}

    std::variant<Vec, FinitePointSet> value_;
};

/// Convenience for 1-d Euclidean points.
inline Point scalar_point(double x) { return Point::vector({x}); }

/// Convenience: the singleton set {v} as a Hausdorff-space point.
inline Point singleton_set_point(Vec v) {
    return Point::point_set(FinitePointSet(std::vector<Vec>{std::move(v)}));
}

/// Total order on points used to pick deterministic witnesses.
bool point_lex_less(const Point& a, const Point& b);

/// Coordinate-wise equality at the representation tolerance (1e-12).
bool points_equal(const Point& a, const Point& b, double tol = 1e-12);

class MetricSpace {
public:
    virtual ~MetricSpace() = default;

    /// d(x, y). Space/dimension mismatches raise InputError.
    virtual double distance(const Point& x, const Point& y) const = 0;

    /// Shape check: does this point belong to the space's representation?
    virtual bool contains(const Point& p) const = 0;

    virtual bool has_sampler() const { return false; }

    /// Draws a random point for testing; UnsupportedError when no sampler.
    virtual Point sample(std::mt19937_64& rng) const;

    const std::string& label() const { return label_; }

protected:
    explicit MetricSpace(std::string label) : label_(std::move(label)) {}

private:
    std::string label_;
};

class EuclideanSpace final : public MetricSpace {
public:
    explicit EuclideanSpace(std::size_t dim, double sample_lo = -1.0,
                            double sample_hi = 1.0);

    double distance(const Point& x, const Point& y) const override;
    bool contains(const Point& p) const override;
    bool has_sampler() const override { return true; }
    Point sample(std::mt19937_64& rng) const override;

    std::size_t dimension() const { return dim_; }

private:
    std::size_t dim_;
    double lo_, hi_;
};

/// Functions represented by their values on a fixed uniform grid over
/// [a, b]; the sup metric is computed exactly on that grid.
class GridFunctionSpace final : public MetricSpace {
public:
    GridFunctionSpace(double a, double b, std::size_t nodes,
                      double sample_lo = -1.0, double sample_hi = 1.0);

    double distance(const Point& x, const Point& y) const override;
    bool contains(const Point& p) const override;
    bool has_sampler() const override { return true; }
    Point sample(std::mt19937_64& rng) const override;

    double a() const { return a_; }
    double b() const { return b_; }
    std::size_t nodes() const { return nodes_; }
    double step() const { return (b_ - a_) / static_cast<double>(nodes_ - 1); }
    std::vector<double> grid() const;

    /// The constant function with the given value, as a Point.
    Point constant(double value) const;

private:
    double a_, b_;
    std::size_t nodes_;
    double lo_, hi_;
};

/// Non-empty finite subsets of R^d under the Hausdorff metric.
class HausdorffSpace final : public MetricSpace {
public:
    explicit HausdorffSpace(std::size_t ambient_dim, double sample_lo = -1.0,
                            double sample_hi = 1.0, std::size_t max_set_size = 8);

    double distance(const Point& x, const Point& y) const override;
    bool contains(const Point& p) const override;
    bool has_sampler() const override { return true; }
    Point sample(std::mt19937_64& rng) const override;

    std::size_t ambient_dimension() const { return ambient_dim_; }

private:
    std::size_t ambient_dim_;
    double lo_, hi_;
    std::size_t max_set_size_;
};

/// Hausdorff distance between finite sets: the larger of the two directed
/// gaps max_a min_b |a-b|. Dimension mismatch raises InputError.
double hausdorff_distance(const FinitePointSet& a, const FinitePointSet& b);

/// Maximum pairwise distance of a non-empty collection; 0 for singletons.
/// Exhaustive O(n^2) scan (parallelized for large collections).
double diam(const MetricSpace& space, std::span<const Point> points);

struct MetricAxiomViolation {
    enum class Axiom { Identity, Nonnegativity, Symmetry, Triangle };
    Axiom axiom;
    std::size_t triple_index;
    double lhs;
    double rhs;
    std::string message;
};

/// Tests identity, nonnegativity, symmetry and the triangle inequality on
/// sample_count random triples. Deterministic under a fixed seed.
std::vector<MetricAxiomViolation> check_metric_axioms(const MetricSpace& space,
                                                      std::size_t sample_count,
                                                      std::uint64_t seed);

} // namespace qfp
