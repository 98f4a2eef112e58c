#pragma once

#include <span>

#include "sparse_nerve/greedy.hpp"
#include "sparse_nerve/metric.hpp"

namespace sparse_nerve {

/// Greedy rank: position in the greedy order. All sparse machinery indexes
/// points by rank, not original index.
using GreedyRank = Index;

/// A point of the cone space: a spatial point paired with its scale coordinate.
struct ConePoint {
    Point x;
    Real delta = 0.0;
};

/// How edge birth times treat the truncation of the smaller ball. Strict mode
/// discards an edge whose computed birth lies past the removal time of its
/// smaller-radius endpoint (the two balls never coexist); paper mode keeps it.
enum class BirthMode { Strict, PaperLiteral };

/// Sparsity parameters: the constant epsilon together with the cloud and its
/// greedy permutation. Immutable; safe for concurrent reads.
class SparseParams {
public:
    SparseParams(const PointCloud& cloud, const GreedyPermutation& gp, Real epsilon,
                 BirthMode mode = BirthMode::Strict);

    const PointCloud& cloud() const { return *cloud_; }
    const GreedyPermutation& gp() const { return *gp_; }
    Real epsilon() const { return eps_; }
    BirthMode mode() const { return mode_; }
    Index size() const { return gp_->size(); }

    Real lambda(GreedyRank i) const { return gp_->lambda[i]; }
    /// lambda_i (1+eps)/eps, the radius cap of point i (inf for rank 0).
    Real radius_cap(GreedyRank i) const;

    Real rank_distance(GreedyRank a, GreedyRank b) const {
        return cloud_->distance(gp_->order[a], gp_->order[b]);
    }
    Real rank_distance_to(GreedyRank a, std::span<const Real> x) const {
        return cloud_->distance_to(gp_->order[a], x);
    }
    std::span<const Real> rank_point(GreedyRank a) const { return cloud_->point(gp_->order[a]); }

private:
    const PointCloud* cloud_;
    const GreedyPermutation* gp_;
    Real eps_;
    BirthMode mode_;
};

/// r_i(alpha): grows linearly until the cap lambda_i (1+eps)/eps, then stays.
Real radius(const SparseParams& params, GreedyRank i, Real alpha);

/// lambda_i (1+eps)^2/eps, the last scale at which b_i is nonempty (+inf for rank 0).
Real removal_time(const SparseParams& params, GreedyRank i);

/// Radius of the truncated ball b_i(alpha), or the empty sentinel once alpha
/// has passed the removal time.
Real ball_radius_or_empty(const SparseParams& params, GreedyRank i, Real alpha);

/// Membership of (x, delta) in the cone U_i^alpha = union over delta' <= alpha
/// of b_i(delta') x {delta'}.
bool cone_contains(const SparseParams& params, GreedyRank i, const ConePoint& cp, Real alpha);

/// The constructive witness of the covering lemma: a rank i such that
/// b_j(alpha) \subseteq b_i(beta) for alpha <= beta (and ball(p_j, alpha)
/// \subseteq b_i(beta) for beta >= (1+eps) alpha). Returns j itself while
/// b_j(beta) is still alive; otherwise the nearest point of the greedy prefix
/// whose insertion radius is at least eps*beta/(1+eps).
GreedyRank covering_witness(const SparseParams& params, GreedyRank j, Real beta);

/// Membership of x in the perturbed offsets, computed as the union of
/// truncated balls b_i(alpha). In debug builds cross-checks the equivalent
/// union of untruncated balls of radius r_i(alpha) away from boundaries.
bool perturbed_offsets_contains(const SparseParams& params, std::span<const Real> x, Real alpha);

/// The r-form union: some ball(p_i, r_i(alpha)) contains x. Exposed so tests
/// can compare the two union forms independently.
bool perturbed_offsets_contains_rform(const SparseParams& params, std::span<const Real> x,
                                      Real alpha);

}  // namespace sparse_nerve
