#pragma once

#include <string>
#include <vector>

#include "sparse_nerve/metric.hpp"

namespace sparse_nerve {

/// A greedy (farthest-point) permutation of a cloud.
///
/// order[i] is the original index of the i-th greedy point; lambda[i] is its
/// insertion radius (distance to the preceding prefix, +inf for i = 0);
/// pred_rank[i] is the greedy rank of its nearest predecessor (-1 for i = 0).
struct GreedyPermutation {
    std::vector<Index> order;
    std::vector<Real> lambda;
    std::vector<Index> pred_rank;

    Index size() const { return static_cast<Index>(order.size()); }
    bool has_pred(Index rank) const { return pred_rank[rank] >= 0; }
};

/// O(n^2) farthest-point traversal from a seed point. Ties on the farthest
/// candidate go to the lowest original index; ties on the nearest predecessor
/// go to the earliest greedy rank.
GreedyPermutation greedy_permutation(const PointCloud& cloud, Index seed = 0);

/// Checks that the prefix of the first i points is a lambda_i-net: pairwise
/// separation >= lambda_i (packing) and every point within lambda_i of the
/// prefix (covering). 1 <= i <= n.
bool verify_net_property(const GreedyPermutation& gp, const PointCloud& cloud, Index i);

/// Text form: one line "orig_index lambda pred_orig_index" per rank, with
/// "inf" for the first insertion radius and "-" for its missing predecessor.
std::string format_permutation(const GreedyPermutation& gp);

}  // namespace sparse_nerve
