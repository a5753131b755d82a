// SPDX-License-Identifier: Apache-2.0
#include "qfp/picard.hpp"

#include <cmath>
#include <utility>

#include "qfp/errors.hpp"

namespace qfp {

PicardOperator picard_operator(const IvpProblem& problem) {
    if (!(problem.t0 < problem.t1))
        throw InputError("picard_operator: requires t0 < t1");
    if (!(problem.lipschitz_bound > 0.0))
        throw InputError("picard_operator: Lipschitz bound must be positive");
    if (problem.grid_nodes < 2)
        throw InputError("picard_operator: needs at least 2 grid nodes");
    const double factor = problem.lipschitz_bound * (problem.t1 - problem.t0);
    if (!(factor < 1.0))
        throw InputError("picard_operator: L*(t1-t0) must be < 1 for contraction "
                         "in the sup metric");

    auto space = std::make_shared<GridFunctionSpace>(problem.t0, problem.t1,
                                                     problem.grid_nodes);
    const std::vector<double> ts = space->grid();
    const double h = space->step();
    const double y0 = problem.y0;
    auto rhs = problem.rhs;

    auto apply = [ts, h, y0, rhs](const Point& p) {
        const Vec& y = p.as_vector();
        Vec f(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            f[i] = rhs(ts[i], y[i]);
            if (!std::isfinite(f[i]))
                throw NumericError("picard operator: rhs is non-finite at t=" +
                                   std::to_string(ts[i]));
        }
        Vec out(y.size());
        out[0] = y0;
        for (std::size_t i = 1; i < y.size(); ++i)
            out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
        return Point::vector(std::move(out));
    };

    PicardOperator op;
    op.map = {std::move(apply), space, "picard"};
    op.space = space;
    op.map_y0 = y0;
    op.contraction_factor = factor;
    return op;
}

} // namespace qfp
