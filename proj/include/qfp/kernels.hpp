// SPDX-License-Identifier: Apache-2.0
//
// Data-parallel inner kernels. Every kernel has a serial reference
// implementation and an OpenMP variant; both must return bit-identical
// results (all reductions are max/min, which are exact and
// order-independent). The dispatching entry points pick the parallel
// variant for large inputs. tools/qfp_bench.cpp compares the two.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace qfp::kernels {

/// Inputs below this count are not worth a parallel region.
inline constexpr std::size_t kParallelCutoff = 192;

/// Euclidean distance between two coordinate vectors of equal length.
inline double euclid(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

/// Max of dist(i, j) over all pairs i < j of n items; 0 for n < 2.
/// dist must be pure and must not throw.
template <typename Dist>
double max_pairwise_serial(std::size_t n, Dist&& dist) {
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            best = std::max(best, dist(i, j));
    return best;
}

template <typename Dist>
double max_pairwise_parallel(std::size_t n, Dist&& dist) {
#ifdef _OPENMP
    double best = 0.0;
    const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for reduction(max : best) schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < sn - 1; ++i)
        for (std::ptrdiff_t j = i + 1; j < sn; ++j)
            best = std::max(best, dist(static_cast<std::size_t>(i),
                                       static_cast<std::size_t>(j)));
    return best;
#else
    return max_pairwise_serial(n, dist);
#endif
}

template <typename Dist>
double max_pairwise(std::size_t n, Dist&& dist) {
    if (n < kParallelCutoff)
        return max_pairwise_serial(n, dist);
    return max_pairwise_parallel(n, dist);
}

/// Directed Hausdorff gap: max over a in A of min over b in B of |a - b|.
double directed_gap_serial(const std::vector<std::vector<double>>& from,
                           const std::vector<std::vector<double>>& to);
double directed_gap_parallel(const std::vector<std::vector<double>>& from,
                             const std::vector<std::vector<double>>& to);
double directed_gap(const std::vector<std::vector<double>>& from,
                    const std::vector<std::vector<double>>& to);

/// Applies all maps to all points: out[m * points + p] = f(m, p).
/// Flat indexing keeps the output layout independent of thread count.
template <typename Apply>
void apply_product_parallel(std::size_t maps, std::size_t points, Apply&& f,
                            std::vector<std::vector<double>>& out) {
    out.resize(maps * points);
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(maps * points);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
        const std::size_t m = static_cast<std::size_t>(idx) / points;
        const std::size_t p = static_cast<std::size_t>(idx) % points;
        out[static_cast<std::size_t>(idx)] = f(m, p);
    }
}

template <typename Apply>
void apply_product_serial(std::size_t maps, std::size_t points, Apply&& f,
                          std::vector<std::vector<double>>& out) {
    out.resize(maps * points);
    for (std::size_t m = 0; m < maps; ++m)
        for (std::size_t p = 0; p < points; ++p)
            out[m * points + p] = f(m, p);
}

} // namespace qfp::kernels
