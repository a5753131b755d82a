// SPDX-License-Identifier: Apache-2.0
#include "qfp/comparison.hpp"

#include <cmath>
#include <sstream>

#include "qfp/errors.hpp"

namespace qfp {

namespace {

constexpr double kZeroSlack = 1e-12;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void validate_grid(const std::vector<double>& grid) {
    if (grid.size() < 2)
        throw InputError("check_axioms: grid needs at least 2 points");
    if (grid.front() != 0.0)
        throw InputError("check_axioms: grid must contain 0 as its first point");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw InputError("check_axioms: grid must be sorted strictly ascending");
    for (double t : grid)
        if (!std::isfinite(t) || t < 0.0)
            throw InputError("check_axioms: grid points must be finite and nonnegative");
}

} // namespace

ComparisonFunction affine_phi(double q) {
    if (!(q > 0.0 && q < 1.0))
        throw InputError("affine_phi: q must lie in (0,1)");
    std::ostringstream label;
    label << "affine(q=" << q << ")";
    return {[q](double t) { return q * t; }, label.str()};
}

ComparisonFunction rational_phi() {
    return {[](double t) { return t / (1.0 + t); }, "rational"};
}

ComparisonFunction poly_phi() {
    return {[](double t) { return t <= 0.25 ? t - 2.0 * t * t : 0.125; }, "poly"};
}

ComparisonFunction table_phi(std::vector<std::pair<double, double>> nodes) {
    if (nodes.size() < 2)
        throw InputError("table_phi: need at least 2 nodes");
    if (nodes.front().first != 0.0)
        throw InputError("table_phi: first node must sit at t = 0");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!std::isfinite(nodes[i].first) || !std::isfinite(nodes[i].second) ||
            nodes[i].second < 0.0)
            throw InputError("table_phi: nodes must be finite with nonnegative values");
        if (i + 1 < nodes.size() && !(nodes[i].first < nodes[i + 1].first))
            throw InputError("table_phi: node abscissae must be strictly increasing");
    }
    auto eval = [nodes = std::move(nodes)](double t) {
        if (t <= nodes.front().first)
            return nodes.front().second;
        if (t >= nodes.back().first)
            return nodes.back().second;
        std::size_t hi = 1;
        while (nodes[hi].first < t)
            ++hi;
        const auto& [t0, v0] = nodes[hi - 1];
        const auto& [t1, v1] = nodes[hi];
        const double w = (t - t0) / (t1 - t0);
        return v0 + w * (v1 - v0);
    };
    return {std::move(eval), "table"};
}

std::vector<ComparisonFunction> builtin_comparison_functions() {
    return {
        affine_phi(0.5),
        rational_phi(),
        poly_phi(),
        table_phi({{0.0, 0.0}, {1.0, 0.4}, {2.0, 0.9}, {5.0, 2.4}, {10.0, 4.9}}),
    };
}

std::vector<AxiomViolation> check_axioms(const ComparisonFunction& phi,
                                         const std::vector<double>& grid) {
    validate_grid(grid);

    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        values[i] = phi(grid[i]);

    std::vector<AxiomViolation> out;
    if (std::abs(values[0]) > kZeroSlack) {
        out.push_back({AxiomViolation::Kind::ZeroAtZero, 0.0, 0.0, values[0], 0.0,
                       "phi(0) = " + fmt(values[0]) + " differs from 0"});
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(values[i] < grid[i])) {
            out.push_back({AxiomViolation::Kind::BelowIdentity, grid[i], 0.0,
                           values[i], 0.0,
                           "phi(t)<t fails at t=" + fmt(grid[i]) +
                               " (phi = " + fmt(values[i]) + ")"});
        }
    }
    // Consecutive pairs suffice on a sorted grid.
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (values[i] > values[i + 1]) {
            out.push_back({AxiomViolation::Kind::Monotone, grid[i], grid[i + 1],
                           values[i], values[i + 1],
                           "monotonicity fails between t=" + fmt(grid[i]) +
                               " and t=" + fmt(grid[i + 1])});
        }
    }
    return out;
}

double iterate_n(const ComparisonFunction& phi, double t, std::size_t n) {
    if (!std::isfinite(t))
        throw NumericError("iterate_n: start value is not finite");
    double v = t;
    for (std::size_t k = 0; k < n; ++k) {
        v = phi(v);
        if (!std::isfinite(v))
            throw NumericError("iterate_n: phi produced a non-finite value at step " +
                               std::to_string(k + 1));
    }
    return v;
}

std::optional<DecayCertificate> decay_horizon(const ComparisonFunction& phi,
                                              double start, double eps,
                                              std::size_t cap) {
    if (!(eps > 0.0))
        throw InputError("decay_horizon: eps must be positive");
    if (cap < 1)
        throw InputError("decay_horizon: cap must be at least 1");
    if (!std::isfinite(start) || start < 0.0)
        throw InputError("decay_horizon: start must be finite and nonnegative");

    DecayCertificate cert;
    cert.start_value = start;
    cert.trace.reserve(64);
    cert.trace.push_back(start);

    double v = start;
    std::size_t n = 0;
    while (!(v < eps)) {
        if (n == cap)
            return std::nullopt;
        v = phi(v);
        ++n;
        if (!std::isfinite(v))
            throw NumericError("decay_horizon: phi produced a non-finite value");
        cert.trace.push_back(v);
    }
    cert.horizon = n;
    cert.terminal_value = v;
    return cert;
}

SeriesCheck series_condition(const ComparisonFunction& phi,
                             const std::vector<double>& coefficients,
                             const std::vector<double>& grid,
                             std::size_t depth) {
    if (depth > coefficients.size())
        throw InputError("series_condition: depth exceeds coefficient count");
    for (double c : coefficients)
        if (!(c > 0.0))
            throw InputError("series_condition: coefficients must be positive");
    for (double t : grid)
        if (!(t > 0.0))
            throw InputError("series_condition: grid points must be positive");

    SeriesCheck result;
    for (std::size_t i = 0; i < depth; ++i)
        result.partial_sum += coefficients[i];

    // One running iterate per grid point; n scans outer so the first
    // violation is the smallest n.
    std::vector<double> iterates(grid.begin(), grid.end());
    for (std::size_t n = 1; n <= depth; ++n) {
        const double c = coefficients[n - 1];
        for (std::size_t i = 0; i < grid.size(); ++i) {
            iterates[i] = phi(iterates[i]);
            if (!std::isfinite(iterates[i]))
                throw NumericError("series_condition: phi produced a non-finite value");
            const double bound = c * grid[i];
            if (iterates[i] > bound) {
                result.falsified = true;
                result.violation_n = n;
                result.violation_t = grid[i];
                result.lhs = iterates[i];
                result.rhs = bound;
                return result;
            }
        }
    }
    return result;
}

} // namespace qfp
