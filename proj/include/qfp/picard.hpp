// SPDX-License-Identifier: Apache-2.0
//
// Picard iteration for scalar initial-value problems on the grid-function
// sup metric: T(y)(t) = y0 + integral of rhs(s, y(s)) from t0 to t,
// evaluated with the composite trapezoid rule. When L*(t1-t0) < 1 the
// operator contracts with that factor in the sup norm.
#pragma once

#include <cstddef>
#include <functional>
#include <memory>

#include "qfp/orbit.hpp"

namespace qfp {

struct IvpProblem {
    std::function<double(double, double)> rhs; // (t, y) -> y'
    double t0 = 0.0;
    double t1 = 1.0;
    double y0 = 0.0;
    double lipschitz_bound = 0.0; // L, in y, over the strip of interest
    std::size_t grid_nodes = 65;
};

struct PicardOperator {
    SelfMap map;
    std::shared_ptr<const GridFunctionSpace> space;

    /// Constant-y0 grid function, the canonical starting iterate.
    Point initial_guess() const { return space->constant(map_y0); }

    double map_y0 = 0.0;
    double contraction_factor = 0.0; // L * (t1 - t0)
};

/// Validates the problem (t0 < t1, L > 0, L*(t1-t0) < 1, nodes >= 2) and
/// builds the integral operator on its grid space. A non-finite rhs value
/// on the grid raises NumericError at application time.
PicardOperator picard_operator(const IvpProblem& problem);

} // namespace qfp
