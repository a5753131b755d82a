// SPDX-License-Identifier: Apache-2.0
#include "qfp/kernels.hpp"

#include <limits>

namespace qfp::kernels {

double directed_gap_serial(const std::vector<std::vector<double>>& from,
                           const std::vector<std::vector<double>>& to) {
    double worst = 0.0;
    for (const auto& a : from) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& b : to)
            nearest = std::min(nearest, euclid(a, b));
        worst = std::max(worst, nearest);
    }
    return worst;
}

double directed_gap_parallel(const std::vector<std::vector<double>>& from,
                             const std::vector<std::vector<double>>& to) {
#ifdef _OPENMP
    double worst = 0.0;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(from.size());
#pragma omp parallel for reduction(max : worst) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& b : to)
            nearest = std::min(nearest, euclid(from[static_cast<std::size_t>(i)], b));
        worst = std::max(worst, nearest);
    }
    return worst;
#else
    return directed_gap_serial(from, to);
#endif
}

double directed_gap(const std::vector<std::vector<double>>& from,
                    const std::vector<std::vector<double>>& to) {
    if (from.size() * to.size() < kParallelCutoff * kParallelCutoff / 8)
        return directed_gap_serial(from, to);
    return directed_gap_parallel(from, to);
}

} // namespace qfp::kernels
