// SPDX-License-Identifier: Apache-2.0
//
// Benchmarks the serial reference kernels against their OpenMP variants:
// pairwise diameter scan, directed Hausdorff gap, Hutchinson step and the
// pair classification batch. Results must agree bit-for-bit; timings show
// what the parallel inner loops buy on this machine.
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qfp/classify.hpp"
#include "qfp/ifs.hpp"
#include "qfp/kernels.hpp"
#include "qfp/metric.hpp"

using namespace qfp;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<Vec> random_cloud(std::size_t n, std::size_t dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<Vec> pts(n, Vec(dim));
    for (auto& p : pts)
        for (auto& c : p)
            c = dist(rng);
    return pts;
}

void bench_pairwise(std::size_t n) {
    std::mt19937_64 rng(7);
    const auto pts = random_cloud(n, 2, rng);
    auto dist = [&](std::size_t i, std::size_t j) {
        return kernels::euclid(pts[i], pts[j]);
    };
    auto t0 = Clock::now();
    const double serial = kernels::max_pairwise_serial(n, dist);
    const double t_serial = ms_since(t0);
    t0 = Clock::now();
    const double parallel = kernels::max_pairwise_parallel(n, dist);
    const double t_parallel = ms_since(t0);
    std::printf("pairwise diameter  n=%-6zu  serial %8.2f ms  omp %8.2f ms  "
                "speedup %4.2fx  %s\n",
                n, t_serial, t_parallel, t_serial / t_parallel,
                serial == parallel ? "bitwise equal" : "MISMATCH");
}

void bench_hausdorff(std::size_t n) {
    std::mt19937_64 rng(11);
    const auto a = random_cloud(n, 2, rng);
    const auto b = random_cloud(n, 2, rng);
    auto t0 = Clock::now();
    const double serial = kernels::directed_gap_serial(a, b);
    const double t_serial = ms_since(t0);
    t0 = Clock::now();
    const double parallel = kernels::directed_gap_parallel(a, b);
    const double t_parallel = ms_since(t0);
    std::printf("directed gap       n=%-6zu  serial %8.2f ms  omp %8.2f ms  "
                "speedup %4.2fx  %s\n",
                n, t_serial, t_parallel, t_serial / t_parallel,
                serial == parallel ? "bitwise equal" : "MISMATCH");
}

void bench_hutchinson(std::size_t depth) {
    const IfsSystem sys = sierpinski_system();
    FinitePointSet serial_set({{0.0, 0.0}});
    auto t0 = Clock::now();
    for (std::size_t k = 0; k < depth; ++k)
        serial_set = hutchinson_step_serial(sys, serial_set);
    const double t_serial = ms_since(t0);

    FinitePointSet parallel_set({{0.0, 0.0}});
    t0 = Clock::now();
    for (std::size_t k = 0; k < depth; ++k)
        parallel_set = hutchinson_step(sys, parallel_set);
    const double t_parallel = ms_since(t0);

    const bool equal = serial_set.elements() == parallel_set.elements();
    std::printf("hutchinson steps   d=%-6zu  serial %8.2f ms  omp %8.2f ms  "
                "speedup %4.2fx  %s (%zu points)\n",
                depth, t_serial, t_parallel, t_serial / t_parallel,
                equal ? "bitwise equal" : "MISMATCH", parallel_set.size());
}

void bench_classify(std::size_t pair_count) {
    SelfMap map = scalar_self_map([](double t) { return t / 2.0; }, "halving",
                                  -10.0, 10.0);
    const PairSet pairs = sample_pairs(*map.space, pair_count, 0);
    const ContractionClass cls = ContractionClass::banach(0.6);
    auto t0 = Clock::now();
    const auto verdict = classify_pairwise(map, cls, pairs);
    const double t = ms_since(t0);
    std::printf("classify batch     p=%-6zu  %8.2f ms (%s)\n", pair_count, t,
                to_string(verdict.outcome));
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel variants fall back to serial\n");
#endif
    bench_pairwise(2000);
    bench_pairwise(4000);
    bench_hausdorff(1500);
    bench_hausdorff(3000);
    bench_hutchinson(9);
    bench_classify(4096);
    return 0;
}
