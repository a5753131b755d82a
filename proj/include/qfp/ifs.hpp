// SPDX-License-Identifier: Apache-2.0
//
// Iterated function systems: the Hutchinson operator S -> union of w_i(S)
// over affine contractions w_i, acting on finite point sets under the
// Hausdorff metric, where it is a Banach contraction with factor
// max(ratio_i). Its fixed point is the attractor; the a-priori geometric
// bound certifies the Hausdorff distance of a truncation to it.
#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "qfp/metric.hpp"
#include "qfp/orbit.hpp"

namespace qfp {

/// x -> A x + b with an explicitly supplied contraction ratio (estimating
/// Lipschitz constants is out of scope; the ratio feeds the certificate).
struct AffineContraction {
    std::vector<double> matrix; // row-major d x d
    Vec offset;                 // length d
    double ratio = 0.0;         // operator norm bound, in (0,1)

    Vec apply(const Vec& x) const;
};

class IfsSystem {
public:
    IfsSystem(std::vector<AffineContraction> maps, std::size_t dim);

    const std::vector<AffineContraction>& maps() const { return maps_; }
    std::size_t dimension() const { return dim_; }
    double ratio() const { return ratio_; } // max over the maps

private:
    std::vector<AffineContraction> maps_;
    std::size_t dim_;
    double ratio_;
};

/// Union of w_i(S) over all maps, canonicalized (lexicographically sorted,
/// exact duplicates removed) so results are independent of thread count.
FinitePointSet hutchinson_step(const IfsSystem& sys, const FinitePointSet& s);

/// Serial reference for the step kernel; bit-identical to the above.
FinitePointSet hutchinson_step_serial(const IfsSystem& sys, const FinitePointSet& s);

/// The induced self-map on a Hausdorff space (for classification/solving).
SelfMap hutchinson_map(const IfsSystem& sys, std::shared_ptr<const HausdorffSpace> space);

struct AttractorResult {
    FinitePointSet points{{{0.0}}};
    bool converged = false;
    std::size_t depth = 0;  // Hutchinson steps taken
    double q = 0.0;         // contraction ratio used by the certificate
    double bound = 0.0;     // certified Hausdorff distance to the attractor
    std::vector<double> step_distances; // h_n = H(S_n, S_{n+1})
    bool dedup_used = false;
    double dedup_pitch = 0.0;
};

/// Iterates the Hutchinson operator from {seed} until the a-priori bound
/// q^n * H(S0, S1) / (1 - q) drops below eps. Sets only get snapped to a
/// lattice of pitch eps/10 (and deduplicated) once they exceed
/// point_budget; the perturbation is folded into the certificate.
AttractorResult attractor(const IfsSystem& sys, const Vec& seed, double eps,
                          std::size_t max_depth, std::size_t point_budget = 200000);

/// Three half-scale maps onto the corners of the unit triangle.
IfsSystem sierpinski_system();

/// {x/3, x/3 + 2/3}: the middle-thirds Cantor set on [0, 1].
IfsSystem cantor_system();

/// CSV export of a point set, one point per row.
std::string point_set_to_csv(const FinitePointSet& s);

} // namespace qfp
