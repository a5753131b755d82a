// SPDX-License-Identifier: Apache-2.0
//
// Comparison functions: increasing maps phi on the nonnegative reals with
// phi(0) = 0 and phi(t) < t for t > 0. They control every contraction
// class in the toolkit. This module verifies the axioms on sampled grids,
// computes iterate-decay horizons, and checks series-domination bounds.
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qfp {

struct ComparisonFunction {
    std::function<double(double)> eval;
    std::string label;

    double operator()(double t) const { return eval(t); }
};

// Built-in families. Upper semicontinuity is not decidable from samples;
// for these families it holds analytically (they are continuous), and
// check_axioms deliberately tests only phi(0)=0, phi(t)<t and monotonicity.

/// phi(t) = q*t with 0 < q < 1.
ComparisonFunction affine_phi(double q);

/// phi(t) = t/(1+t). Harmonic iterate decay: phi^n(t) = t/(1+n*t).
ComparisonFunction rational_phi();

/// phi(t) = t - 2t^2 on [0, 1/4], constant 1/8 beyond. Quadratic near the
/// origin, so iterates decay like 1/(2n).
ComparisonFunction poly_phi();

/// Piecewise-linear interpolation of sorted (t, value) nodes. The first
/// node must sit at t = 0; beyond the last node the value is held constant.
/// Linear interpolation preserves monotonicity of the node values, so the
/// axioms can be screened on the nodes themselves.
ComparisonFunction table_phi(std::vector<std::pair<double, double>> nodes);

/// Default instance of each built-in family, keyed by family name.
/// Used by the axiom/decay regression suites.
std::vector<ComparisonFunction> builtin_comparison_functions();

struct AxiomViolation {
    enum class Kind { ZeroAtZero, BelowIdentity, Monotone };
    Kind kind;
    double t1 = 0.0;     // witnessing grid point
    double t2 = 0.0;     // second point for monotonicity violations
    double value1 = 0.0; // phi(t1)
    double value2 = 0.0; // phi(t2) where applicable
    std::string message;
};

/// Screens the comparison-function axioms on a sorted grid that contains 0.
/// Strict inequalities are checked with zero slack; phi(0)=0 with absolute
/// slack 1e-12. An empty result means "not falsified on this grid".
std::vector<AxiomViolation> check_axioms(const ComparisonFunction& phi,
                                         const std::vector<double>& grid);

/// n-fold composition phi^n(t); n = 0 returns t. Non-finite intermediate
/// values raise NumericError.
double iterate_n(const ComparisonFunction& phi, double t, std::size_t n);

struct DecayCertificate {
    double start_value = 0.0;
    std::size_t horizon = 0;      // smallest n with phi^n(start) < eps
    double terminal_value = 0.0;  // phi^horizon(start), equals trace.back()
    std::vector<double> trace;    // trace[k] = phi^k(start)
};

/// Smallest n <= cap with phi^n(start) < eps, with the full iterate trace.
/// Returns nullopt when the cap is reached first (the function decays too
/// slowly for the requested eps at this cap).
std::optional<DecayCertificate> decay_horizon(const ComparisonFunction& phi,
                                              double start, double eps,
                                              std::size_t cap = 1000000);

struct SeriesCheck {
    bool falsified = false;
    std::size_t violation_n = 0; // first n with phi^n(t) > c_n * t
    double violation_t = 0.0;
    double lhs = 0.0;            // phi^n(t) at the violation
    double rhs = 0.0;            // c_n * t at the violation
    double partial_sum = 0.0;    // sum of the first `depth` coefficients
};

/// Checks phi^n(t) <= c_n * t for n = 1..depth and every grid t, scanning
/// n outer / t inner and reporting the first violation. The partial sum of
/// the coefficients is reported as convergence evidence only; no
/// convergence proof is attempted.
SeriesCheck series_condition(const ComparisonFunction& phi,
                             const std::vector<double>& coefficients,
                             const std::vector<double>& grid,
                             std::size_t depth);

} // namespace qfp
