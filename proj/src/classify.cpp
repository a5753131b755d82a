// SPDX-License-Identifier: Apache-2.0
#include "qfp/classify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "qfp/errors.hpp"

namespace qfp {

namespace {

constexpr double kFalsifyTol = 1e-10;

bool falsifies(double lhs, double rhs) {
    return lhs - rhs > kFalsifyTol * (1.0 + rhs);
}

/// Grid used to screen phi parameters at class construction.
std::vector<double> default_axiom_grid() {
    std::vector<double> grid(101);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = 0.1 * static_cast<double>(i);
    grid[0] = 0.0;
    return grid;
}

void require_valid_phi(const ComparisonFunction& phi) {
    const auto violations = check_axioms(phi, default_axiom_grid());
    if (!violations.empty())
        throw InputError("ContractionClass: phi fails its axioms: " +
                         violations.front().message);
}

bool witness_less(const Witness& a, const Witness& b) {
    if (point_lex_less(a.x, b.x))
        return true;
    if (point_lex_less(b.x, a.x))
        return false;
    return point_lex_less(a.y, b.y);
}

struct PairOutcome {
    bool falsified = false;
    bool inconclusive = false;
    Witness witness;
    std::string note;
};

/// Order-independent aggregation: Falsified beats Inconclusive beats
/// Satisfied; ties resolved by the lexicographically smallest witness.
ClassificationVerdict aggregate(const std::vector<PairOutcome>& outcomes) {
    ClassificationVerdict verdict;
    const PairOutcome* chosen = nullptr;
    bool any_falsified = false;
    for (const auto& oc : outcomes)
        if (oc.falsified)
            any_falsified = true;
    const bool pick_falsified = any_falsified;
    for (const auto& oc : outcomes) {
        const bool eligible = pick_falsified ? oc.falsified : oc.inconclusive;
        if (!eligible)
            continue;
        if (chosen == nullptr || witness_less(oc.witness, chosen->witness))
            chosen = &oc;
    }
    if (chosen != nullptr) {
        verdict.outcome = pick_falsified ? Outcome::Falsified : Outcome::Inconclusive;
        verdict.witness = chosen->witness;
        verdict.note = chosen->note;
    }
    return verdict;
}

void rethrow_first(std::vector<std::exception_ptr>& errors) {
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace

const char* to_string(Outcome o) {
    switch (o) {
    case Outcome::Satisfied:
        return "Satisfied";
    case Outcome::Falsified:
        return "Falsified";
    case Outcome::Inconclusive:
        return "Inconclusive";
    }
    return "?";
}

ContractionClass::ContractionClass(Kind kind, double q,
                                   std::optional<ComparisonFunction> phi)
    : kind_(kind), q_(q), phi_(std::move(phi)) {}

ContractionClass ContractionClass::banach(double q) {
    if (!(q > 0.0 && q < 1.0))
        throw InputError("Banach class: q must lie in (0,1)");
    return {Kind::Banach, q, std::nullopt};
}

ContractionClass ContractionClass::nonlinear_contraction(ComparisonFunction phi) {
    require_valid_phi(phi);
    return {Kind::NonlinearContraction, 0.0, std::move(phi)};
}

ContractionClass ContractionClass::ciric_linear(double q) {
    if (!(q > 0.0 && q < 1.0))
        throw InputError("Ciric class: q must lie in (0,1)");
    return {Kind::CiricLinear, q, std::nullopt};
}

ContractionClass ContractionClass::strong_quasi(ComparisonFunction phi) {
    require_valid_phi(phi);
    return {Kind::StrongQuasi, 0.0, std::move(phi)};
}

ContractionClass ContractionClass::weak_quasi(ComparisonFunction phi) {
    require_valid_phi(phi);
    return {Kind::WeakQuasi, 0.0, std::move(phi)};
}

const ComparisonFunction& ContractionClass::phi() const {
    if (!phi_)
        throw InputError("ContractionClass: this class has no comparison function");
    return *phi_;
}

std::string ContractionClass::name() const {
    std::ostringstream os;
    switch (kind_) {
    case Kind::Banach:
        os << "Banach(q=" << q_ << ")";
        break;
    case Kind::NonlinearContraction:
        os << "NonlinearContraction(phi=" << phi_->label << ")";
        break;
    case Kind::CiricLinear:
        os << "CiricLinear(q=" << q_ << ")";
        break;
    case Kind::StrongQuasi:
        os << "StrongQuasi(phi=" << phi_->label << ")";
        break;
    case Kind::WeakQuasi:
        os << "WeakQuasi(phi=" << phi_->label << ")";
        break;
    }
    return os.str();
}

PairSet sample_pairs(const MetricSpace& space, std::size_t count, std::uint64_t seed,
                     const std::vector<std::pair<Point, Point>>& witness_extra) {
    PairSet out;
    out.seed = seed;
    out.pairs.reserve(witness_extra.size() + count);
    for (const auto& [x, y] : witness_extra) {
        if (!space.contains(x) || !space.contains(y))
            throw InputError("sample_pairs: witness pair does not belong to the space");
        out.pairs.emplace_back(x, y);
    }
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        Point x = space.sample(rng);
        Point y = space.sample(rng);
        out.pairs.emplace_back(std::move(x), std::move(y));
    }
    return out;
}

ClassificationVerdict classify_pairwise(const SelfMap& T, const ContractionClass& cls,
                                        const PairSet& pairs) {
    if (cls.kind() == ContractionClass::Kind::WeakQuasi)
        throw InputError("classify_pairwise: use classify_weak_quasi for the weak class");
    if (pairs.pairs.empty())
        throw InputError("classify_pairwise: needs at least one pair");

    const MetricSpace& space = *T.space;
    const std::size_t n = pairs.pairs.size();
    std::vector<PairOutcome> outcomes(n);
    std::vector<std::exception_ptr> errors(n);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(n); ++idx) {
        const std::size_t i = static_cast<std::size_t>(idx);
        try {
            const auto& [x, y] = pairs.pairs[i];
            const Point tx = T.apply(x);
            const Point ty = T.apply(y);
            const double lhs = space.distance(tx, ty);
            double rhs = 0.0;
            switch (cls.kind()) {
            case ContractionClass::Kind::Banach:
                rhs = cls.q() * space.distance(x, y);
                break;
            case ContractionClass::Kind::NonlinearContraction:
                rhs = cls.phi()(space.distance(x, y));
                break;
            case ContractionClass::Kind::CiricLinear:
            case ContractionClass::Kind::StrongQuasi: {
                const std::vector<Point> quad{x, y, tx, ty};
                const double d4 = diam(space, quad);
                rhs = cls.kind() == ContractionClass::Kind::CiricLinear
                          ? cls.q() * d4
                          : cls.phi()(d4);
                break;
            }
            case ContractionClass::Kind::WeakQuasi:
                break; // rejected above
            }
            if (falsifies(lhs, rhs))
                outcomes[i] = {true, false, {x, y, lhs, rhs}, ""};
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    rethrow_first(errors);

    ClassificationVerdict verdict = aggregate(outcomes);
    verdict.class_name = cls.name();
    verdict.depth_used = 1; // the pair inequality only sees {x, y, Tx, Ty}
    verdict.pairs_tested = n;
    verdict.seed = pairs.seed;
    return verdict;
}

namespace {

/// Extends an already-computed orbit prefix to probe_depth steps, flagging
/// the first point (old or new) whose distance from the base reaches the
/// threshold.
bool orbit_growth_flagged(const SelfMap& T, const OrbitPrefix& prefix,
                          std::size_t probe_depth, double threshold) {
    const MetricSpace& space = *T.space;
    const Point& base = prefix.base();
    for (std::size_t k = 1; k < prefix.points.size(); ++k)
        if (space.distance(base, prefix.points[k]) >= threshold)
            return true;
    Point current = prefix.last();
    for (std::size_t k = prefix.depth + 1; k <= probe_depth; ++k) {
        Point next = T.apply(current);
        if (!next.all_finite())
            throw DivergenceError("probe orbit of '" + T.label +
                                      "' produced non-finite coordinates at step " +
                                      std::to_string(k),
                                  k);
        if (space.distance(base, next) >= threshold)
            return true;
        current = std::move(next);
    }
    return false;
}

} // namespace

ClassificationVerdict classify_weak_quasi(const SelfMap& T, const ComparisonFunction& phi,
                                          const PairSet& pairs, std::size_t depth,
                                          const WeakQuasiOptions& opts) {
    if (depth < 1)
        throw InputError("classify_weak_quasi: depth must be at least 1");
    if (pairs.pairs.empty())
        throw InputError("classify_weak_quasi: needs at least one pair");

    const MetricSpace& space = *T.space;
    const std::size_t n = pairs.pairs.size();
    std::vector<PairOutcome> outcomes(n);
    std::vector<std::exception_ptr> errors(n);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
    for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(n); ++idx) {
        const std::size_t i = static_cast<std::size_t>(idx);
        try {
            const auto& [x, y] = pairs.pairs[i];
            const DoubleOrbitPrefix dob = double_orbit_prefix(T, x, y, depth);
            const Point& tx = dob.first.points[1];
            const Point& ty = dob.second.points[1];
            const double lhs = space.distance(tx, ty);
            const double rhs = phi(dob.diam_trunc);
            const double pair_scale =
                1.0 + space.distance(x, tx) + space.distance(x, y);
            const double threshold = opts.probe_scale * pair_scale;

            const bool grew = orbit_growth_flagged(T, dob.first, opts.probe_depth,
                                                   threshold) ||
                              orbit_growth_flagged(T, dob.second, opts.probe_depth,
                                                   threshold);
            if (!falsifies(lhs, rhs)) {
                // Inequality passed; it counts toward Satisfied only if the
                // orbits show no sign of unboundedness.
                if (grew) {
                    outcomes[i] = {false, true, {x, y, lhs, rhs},
                                   "orbit growth exceeded probe threshold; the "
                                   "bounded-orbits hypothesis is unverifiable here"};
                }
            } else {
                const double d_half = double_orbit_diam_at(space, dob, depth / 2);
                const bool stabilized =
                    dob.diam_trunc - d_half < opts.stabilization_tol;
                if (stabilized && !grew) {
                    std::ostringstream note;
                    note << "falsified at tolerance: truncation stabilized (D(" << depth
                         << ")=" << dob.diam_trunc << ", D(" << depth / 2
                         << ")=" << d_half << ") and probe stayed bounded";
                    outcomes[i] = {true, false, {x, y, lhs, rhs}, note.str()};
                } else {
                    outcomes[i] = {false, true, {x, y, lhs, rhs},
                                   "pair fails at this truncation but the double-orbit "
                                   "diameter has not stabilized"};
                }
            }
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    rethrow_first(errors);

    ClassificationVerdict verdict = aggregate(outcomes);
    verdict.class_name = "WeakQuasi(phi=" + phi.label + ")";
    verdict.depth_used = depth;
    verdict.pairs_tested = n;
    verdict.seed = pairs.seed;
    return verdict;
}

ClassificationVerdict iterated_map_check(const SelfMap& T, const ComparisonFunction& phi,
                                         std::size_t n, const PairSet& pairs,
                                         std::size_t depth,
                                         const WeakQuasiOptions& opts) {
    const ClassificationVerdict base = classify_weak_quasi(T, phi, pairs, depth, opts);
    if (base.outcome != Outcome::Satisfied)
        throw InputError("iterated_map_check: precondition failed, base map is not "
                         "classified Satisfied (got " +
                         std::string(to_string(base.outcome)) + ")");
    if (n == 1)
        return base;

    const SelfMap tn = composite_map(T, n);
    ComparisonFunction phi_n{
        [phi, n](double t) { return iterate_n(phi, t, n); },
        phi.label + "^" + std::to_string(n)};
    ClassificationVerdict verdict = classify_weak_quasi(tn, phi_n, pairs, depth, opts);
    if (verdict.outcome == Outcome::Falsified)
        throw InternalError("iterated_map_check: T^n falsified against phi^n; this "
                            "contradicts a proven property and indicates a bug");
    return verdict;
}

} // namespace qfp
