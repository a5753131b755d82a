// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Each criterion prints exactly one PASS/FAIL line; the
// process exits with the number of failed criteria. All tolerances are
// pinned here, next to the checks that use them.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qfp/classify.hpp"
#include "qfp/comparison.hpp"
#include "qfp/errors.hpp"
#include "qfp/gallery.hpp"
#include "qfp/ifs.hpp"
#include "qfp/picard.hpp"
#include "qfp/report.hpp"
#include "qfp/solver.hpp"

using namespace qfp;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

// --- Iterate decay of every built-in comparison family ---------------------

bool comparison_iterate_decay(std::string& detail) {
    const auto families = builtin_comparison_functions();
    if (families.size() != 4) {
        detail = "expected 4 built-in families";
        return false;
    }
    std::size_t checked = 0;
    for (const auto& phi : families) {
        for (int k = 1; k <= 50; ++k) {
            const double t = 0.2 * k; // 50-point grid of (0, 10]
            const auto cert = decay_horizon(phi, t, 1e-6, 1000000);
            if (!cert) {
                detail = phi.label + " failed to decay below 1e-6 within 1e6 "
                                     "iterations from t=" +
                         std::to_string(t);
                return false;
            }
            for (std::size_t i = 0; i + 1 < cert->trace.size(); ++i) {
                if (cert->trace[i + 1] > cert->trace[i]) {
                    detail = phi.label + " trace increased at step " +
                             std::to_string(i + 1);
                    return false;
                }
            }
            ++checked;
        }
    }

    const auto rational_cert = decay_horizon(rational_phi(), 1.0, 1e-2, 1000000);
    if (!rational_cert || rational_cert->horizon != 100) {
        detail = "t/(1+t) horizon at t=1, eps=1e-2 is not 100";
        return false;
    }
    for (std::size_t n = 0; n < rational_cert->trace.size(); n += 10) {
        if (std::abs(rational_cert->trace[n] - oracles::rational_iterate(1.0, n)) >
            1e-12) {
            detail = "t/(1+t) trace diverged from the closed form t/(1+nt)";
            return false;
        }
    }
    std::ostringstream os;
    os << checked << " family/grid decays, rational horizon exactly 100";
    detail = os.str();
    return true;
}

// --- Composite maps stay weak quasicontractions -----------------------------

bool composite_maps_stay_weak(std::string& detail) {
    for (const std::string label : {"halving", "harmonic"}) {
        const GalleryEntry entry = find_entry(label);
        const PairSet pairs = sample_pairs(*entry.space, 256, 0);
        for (std::size_t n : {2u, 3u, 5u}) {
            ClassificationVerdict verdict;
            try {
                verdict = iterated_map_check(entry.map, *entry.weak_phi, n, pairs, 64);
            } catch (const Error& e) {
                detail = label + " n=" + std::to_string(n) + ": " + e.what();
                return false;
            }
            if (verdict.outcome != Outcome::Satisfied) {
                detail = label + " n=" + std::to_string(n) + " returned " +
                         to_string(verdict.outcome);
                return false;
            }
        }
    }
    detail = "halving and harmonic satisfied at n in {2,3,5}, 256 pairs, depth 64";
    return true;
}

// --- Cosine fixed point from scattered starts --------------------------------

bool cos_fixed_point(std::string& detail) {
    const double oracle = oracles::bisect_cos_fixed_point();
    constexpr double kPinned = 0.7390851332151607;

    SelfMap map = scalar_self_map([](double t) { return std::cos(t); }, "cos");
    SolveConfig cfg;
    cfg.eps = 1e-9;
    const std::vector<Point> starts{scalar_point(-5.0), scalar_point(0.0),
                                    scalar_point(3.0)};

    const auto t0 = std::chrono::steady_clock::now();
    const MultiStartReport report = multi_start_uniqueness(map, starts, cfg);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    for (const auto& oc : report.outcomes) {
        if (!oc.result || oc.result->status != SolveStatus::Converged) {
            detail = "a start failed to converge";
            return false;
        }
        const double fp = oc.result->fixed_point.as_vector()[0];
        if (std::abs(fp - kPinned) >= 1e-9 || std::abs(fp - oracle) >= 1e-9) {
            detail = "fixed point misses the dottie oracle";
            return false;
        }
        if (oc.result->residual >= 1e-9) {
            detail = "residual certificate above 1e-9";
            return false;
        }
    }
    if (report.max_mutual_distance >= 1e-8) {
        detail = "fixed points from different starts spread above 1e-8";
        return false;
    }
    if (seconds >= 1.0) {
        detail = "multi-start took " + std::to_string(seconds) + " s";
        return false;
    }
    std::ostringstream os;
    os.precision(3);
    os << "3 starts to |x - 0.7390851332151607| < 1e-9 in " << seconds << " s";
    detail = os.str();
    return true;
}

// --- Uniqueness negative control -------------------------------------------

bool identity_uniqueness_control(std::string& detail) {
    SelfMap id = scalar_self_map([](double t) { return t; }, "identity");
    SolveConfig cfg;
    cfg.eps = 1e-6;
    const MultiStartReport report =
        multi_start_uniqueness(id, {scalar_point(0.0), scalar_point(1.0)}, cfg);
    if (report.unique_within) {
        detail = "identity reported unique fixed points";
        return false;
    }
    if (report.max_mutual_distance != 1.0) {
        detail = "max mutual distance is not exactly 1";
        return false;
    }
    detail = "unique_within=false, max_mutual_distance=1 exactly";
    return true;
}

// --- A-priori uniform orbit bound for linear quasicontractions ---------------

bool apriori_orbit_bound(std::string& detail) {
    SelfMap map = scalar_self_map([](double t) { return t / 2.0; }, "halving");
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int rep = 0; rep < 20; ++rep) {
        const Point x = scalar_point(dist(rng));
        const CiricBoundReport r = ciric_orbit_bound(map, x, 0.5, 4096);
        if (r.observed > r.bound + 1e-12) {
            detail = "orbit diameter exceeded d(x,Tx)/(1-q) + 1e-12";
            return false;
        }
    }
    detail = "20 random starts in [-10,10], depth 4096, bound holds with 1e-12 slack";
    return true;
}

// --- Ball invariance under small center motion --------------------------------

bool ball_invariance(std::string& detail) {
    SelfMap cos_map = scalar_self_map([](double t) { return std::cos(t); }, "cos");
    const BallInvarianceReport good = ball_invariance_check(
        cos_map, affine_phi(0.85), scalar_point(0.739), 0.1, 1000);
    if (!good.hypothesis_holds || !good.orbit_inside) {
        detail = "cos at (0.739, 0.1, 0.85t) should hold and stay inside";
        return false;
    }

    SelfMap walk = scalar_self_map([](double t) { return t + 1.0; }, "arith_walk");
    const std::vector<ComparisonFunction> phis{affine_phi(0.5), affine_phi(0.85),
                                               rational_phi()};
    std::size_t tuples = 0;
    for (double p : {0.0, 10.0}) {
        for (double r : {0.5, 1.0}) {
            for (const auto& phi : phis) {
                const BallInvarianceReport bad =
                    ball_invariance_check(walk, phi, scalar_point(p), r, 100);
                if (bad.hypothesis_holds) {
                    detail = "arith_walk hypothesis unexpectedly held";
                    return false;
                }
                ++tuples;
            }
        }
    }
    std::ostringstream os;
    os << "cos holds through 1000 steps; arith_walk fails all " << tuples
       << " tested (p, r, phi) tuples";
    detail = os.str();
    return true;
}

// --- Series domination of comparison iterates ---------------------------------

bool series_domination(std::string& detail) {
    std::vector<double> coeffs(40);
    double c = 1.0;
    for (auto& v : coeffs)
        v = (c *= 0.5);
    const SeriesCheck ok =
        series_condition(affine_phi(0.5), coeffs, {0.5, 1.0, 2.0, 5.0}, 40);
    if (ok.falsified) {
        detail = "t/2 against 2^-n should not be falsified";
        return false;
    }

    const SeriesCheck bad = series_condition(rational_phi(), coeffs, {1.0}, 3);
    if (!bad.falsified || bad.violation_n != 2 || bad.violation_t != 1.0) {
        detail = "t/(1+t) against 2^-n should fail first at n=2, t=1";
        return false;
    }
    if (std::abs(bad.lhs - 1.0 / 3.0) > 1e-15 || bad.rhs != 0.25) {
        detail = "violation sides should be 1/3 and 1/4";
        return false;
    }
    detail = "depth-40 domination holds for t/2; t/(1+t) falsified at n=2 "
             "(lhs=1/3, rhs=1/4)";
    return true;
}

// --- Class-hierarchy monotonicity -------------------------------------------

bool class_hierarchy(std::string& detail) {
    std::size_t chains = 0;
    for (const GalleryEntry& entry : list_entries()) {
        const double q = entry.hierarchy_q;
        const PairSet pairs =
            sample_pairs(*entry.space, 256, 0, entry.witness_pairs);
        const Outcome chain[] = {
            classify_pairwise(entry.map, ContractionClass::banach(q), pairs).outcome,
            classify_pairwise(entry.map,
                              ContractionClass::nonlinear_contraction(affine_phi(q)),
                              pairs)
                .outcome,
            classify_pairwise(entry.map, ContractionClass::ciric_linear(q), pairs)
                .outcome,
            classify_pairwise(entry.map, ContractionClass::strong_quasi(affine_phi(q)),
                              pairs)
                .outcome,
        };
        for (int i = 0; i < 3; ++i) {
            if (chain[i] == Outcome::Satisfied && chain[i + 1] == Outcome::Falsified) {
                detail = entry.label + ": a stronger class satisfied while a weaker "
                                       "one falsified";
                return false;
            }
        }
        // Satisfied strong quasicontractions with bounded probes must not
        // falsify the weak class under the same comparison function.
        if (chain[3] == Outcome::Satisfied && entry.weak_phi) {
            const Outcome weak =
                classify_weak_quasi(entry.map, affine_phi(q), pairs, 64).outcome;
            if (weak == Outcome::Falsified) {
                detail = entry.label + ": strong satisfied but weak falsified";
                return false;
            }
        }
        ++chains;
    }
    std::ostringstream os;
    os << chains << " entries, matched-parameter chains stay monotone";
    detail = os.str();
    return true;
}

// --- Kannan-style discontinuity ---------------------------------------------

bool kannan_discontinuity(std::string& detail) {
    const double q_star = oracles::kannan_min_q(1e-3);
    if (std::abs(q_star - 0.25) > 1e-12) {
        detail = "grid oracle moved: measured q = " + std::to_string(q_star);
        return false;
    }
    const GalleryEntry entry = find_entry("kannan_like");
    const PairSet pairs = sample_pairs(*entry.space, 256, 0, entry.witness_pairs);

    const auto strong = classify_pairwise(
        entry.map, ContractionClass::strong_quasi(affine_phi(q_star)), pairs);
    if (strong.outcome != Outcome::Satisfied) {
        detail = "strong quasi at the measured q not satisfied";
        return false;
    }
    const auto nonlinear = classify_pairwise(
        entry.map, ContractionClass::nonlinear_contraction(affine_phi(q_star)), pairs);
    if (nonlinear.outcome != Outcome::Falsified || !nonlinear.witness) {
        detail = "nonlinear contraction at the measured q not falsified";
        return false;
    }
    const double wx = nonlinear.witness->x.as_vector()[0];
    const double wy = nonlinear.witness->y.as_vector()[0];
    if (std::max(wx, wy) != 1.0 || std::min(wx, wy) >= 1.0) {
        detail = "falsification witness does not straddle x=1";
        return false;
    }
    std::ostringstream os;
    os << "measured q=0.25; strong quasi satisfied, nonlinear falsified at (x,y)=("
       << wx << "," << wy << ")";
    detail = os.str();
    return true;
}

// --- Picard application ------------------------------------------------------

bool picard_application(std::string& detail) {
    IvpProblem problem;
    problem.rhs = [](double, double y) { return y; };
    problem.t0 = 0.0;
    problem.t1 = 0.5;
    problem.y0 = 1.0;
    problem.lipschitz_bound = 1.0;
    problem.grid_nodes = 65;
    const PicardOperator op = picard_operator(problem);

    SolveConfig cfg;
    cfg.eps = 1e-8;
    const SolveResult r = solve(op.map, op.initial_guess(), cfg);
    if (r.status != SolveStatus::Converged) {
        detail = "picard iteration did not converge";
        return false;
    }
    const auto ts = op.space->grid();
    const Vec& y = r.fixed_point.as_vector();
    double sup_err = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i)
        sup_err = std::max(sup_err, std::abs(y[i] - std::exp(ts[i])));
    if (sup_err >= 5e-4) {
        detail = "sup error against exp(t) is " + std::to_string(sup_err);
        return false;
    }

    const PairSet pairs = sample_pairs(*op.space, 64, 0);
    const auto verdict =
        classify_pairwise(op.map, ContractionClass::banach(0.5), pairs);
    if (verdict.outcome != Outcome::Satisfied) {
        detail = "Banach(0.5) classification failed on grid-function pairs";
        return false;
    }
    std::ostringstream os;
    os.precision(3);
    os << "sup|y - exp| = " << sup_err << " < 5e-4; Banach(0.5) satisfied on 64 pairs";
    detail = os.str();
    return true;
}

// --- Hutchinson application --------------------------------------------------

bool hutchinson_application(std::string& detail) {
    const IfsSystem sierpinski = sierpinski_system();
    const AttractorResult tri = attractor(sierpinski, {0.0, 0.0}, 0.01, 64);
    if (!tri.converged || tri.bound >= 0.01) {
        detail = "sierpinski attractor did not certify at eps=0.01";
        return false;
    }
    // Closed-form horizon from the measured first step.
    const FinitePointSet s0({{0.0, 0.0}});
    const double d0 = hausdorff_distance(s0, hutchinson_step(sierpinski, s0));
    std::size_t expected = 0;
    for (double b = d0 / (1.0 - 0.5); b >= 0.01; b *= 0.5)
        ++expected;
    if (tri.depth + 1 < expected || tri.depth > expected + 1) {
        detail = "sierpinski depth " + std::to_string(tri.depth) +
                 " differs from the closed-form horizon " + std::to_string(expected) +
                 " by more than 1";
        return false;
    }
    for (std::size_t i = 0; i + 1 < tri.step_distances.size(); ++i) {
        if (tri.step_distances[i + 1] > 0.5 * tri.step_distances[i] + 1e-9) {
            detail = "empirical contraction h(n+1) <= h(n)/2 + 1e-9 failed";
            return false;
        }
    }

    const AttractorResult cantor = attractor(cantor_system(), {0.5}, 1e-3, 64);
    if (!cantor.converged) {
        detail = "cantor attractor did not converge";
        return false;
    }
    for (const Vec& p : cantor.points.elements()) {
        if (oracles::dist_to_cantor(p[0]) > 1e-3) {
            detail = "a cantor point sits farther than 1e-3 from the set";
            return false;
        }
    }
    std::ostringstream os;
    os << "sierpinski depth " << tri.depth << " (closed form " << expected
       << "), contraction ratio held; " << cantor.points.size()
       << " cantor points within 1e-3 of the set";
    detail = os.str();
    return true;
}

// --- Determinism ---------------------------------------------------------------

bool determinism(std::string& detail) {
    for (const GalleryEntry& entry : list_entries()) {
        const std::string first = to_json(run_entry(entry, 0)).dump();
        const std::string second = to_json(run_entry(entry, 0)).dump();
        if (first != second) {
            detail = entry.label + " report differs between identical runs";
            return false;
        }
    }
    detail = "all gallery reports byte-identical across repeated seed-0 runs";
    return true;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"comparison_iterate_decay", comparison_iterate_decay},
        {"composite_maps_stay_weak", composite_maps_stay_weak},
        {"cos_fixed_point", cos_fixed_point},
        {"identity_uniqueness_control", identity_uniqueness_control},
        {"apriori_orbit_bound", apriori_orbit_bound},
        {"ball_invariance", ball_invariance},
        {"series_domination", series_domination},
        {"class_hierarchy", class_hierarchy},
        {"kannan_discontinuity", kannan_discontinuity},
        {"picard_application", picard_application},
        {"hutchinson_application", hutchinson_application},
        {"determinism", determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %-28s %s\n", ok ? "PASS" : "FAIL", criterion.name.c_str(),
                    detail.c_str());
        if (!ok)
            ++failures;
    }
    if (failures > 0)
        std::printf("%d criterion(s) failed\n", failures);
    else
        std::printf("all %zu acceptance criteria passed\n", criteria.size());
    return failures;
}
