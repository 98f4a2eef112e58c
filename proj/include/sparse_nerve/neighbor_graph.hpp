#pragma once

#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "sparse_nerve/sparse_balls.hpp"

namespace sparse_nerve {

/// kappa = (eps^2 + 3 eps + 2)/eps, the neighbor-radius constant: every edge
/// of the sparse filtration has length at most kappa times the smaller
/// insertion radius of its endpoints.
Real kappa(Real epsilon);

/// Dyadic level of an insertion radius, ceil(lg lambda), with sentinels for
/// lambda = inf (first point) and lambda = 0 (duplicate points).
inline constexpr int kLevelPosInf = std::numeric_limits<int>::max();
inline constexpr int kLevelNegInf = std::numeric_limits<int>::min();
int level_of_lambda(Real lambda);
Real pow2_level(int level);

/// The incremental parent/children/neighbors structure over the greedy
/// prefix. Points are inserted strictly in greedy order; after each insert
/// the three invariants hold:
///   Parent:   parent(p_j) = p_j when l_j > l_i, else a point at a strictly
///             higher level within 2^{l_i} of p_j;
///   Child:    ch(p_j) contains p_j and every current-level point parented
///             to p_j;
///   Neighbor: nbr(p_j) contains every inserted p_k with
///             d(p_j, p_k) <= kappa 2^{min(l_j, l_k, l_i + 1)}.
/// Lists are supersets and are lazily pruned whenever they are enumerated.
class NeighborStructure {
public:
    explicit NeighborStructure(const SparseParams& params);

    /// Algorithm: reset parents of the previous level when the level drops,
    /// pick the new point's parent among its predecessor's parent's
    /// neighbors, then collect mutual neighbors from the children of the
    /// parent's neighbors.
    void insert(GreedyRank i);

    Index inserted_count() const { return inserted_; }
    int level(GreedyRank j) const { return level_[j]; }
    GreedyRank parent(GreedyRank j) const { return parent_[j]; }
    const std::vector<GreedyRank>& neighbors(GreedyRank j) const { return nbr_[j]; }
    const std::vector<GreedyRank>& children(GreedyRank j) const { return ch_[j]; }
    const SparseParams& params() const { return *params_; }

    /// Fault-injection hook for invariant-checker tests.
    void override_parent(GreedyRank j, GreedyRank p) { parent_[j] = p; }

    /// Prunes stale entries of nbr(owner) against the current insertion level
    /// and returns the survivors.
    std::vector<GreedyRank> live_neighbors(GreedyRank owner);

private:
    void add_neighbor(GreedyRank owner, GreedyRank entry);
    bool neighbor_required(GreedyRank owner, GreedyRank entry, int level_i) const;
    bool child_required(GreedyRank owner, GreedyRank entry, int level_i) const;
    std::vector<GreedyRank> prune_and_copy_nbr(GreedyRank owner, int level_i);
    std::vector<GreedyRank> prune_and_copy_ch(GreedyRank owner, int level_i);

    const SparseParams* params_;
    Real kappa_;
    Index inserted_ = 0;
    std::vector<int> level_;
    std::vector<GreedyRank> parent_;
    std::vector<std::vector<GreedyRank>> nbr_;
    std::vector<std::vector<GreedyRank>> ch_;
    std::unordered_map<int, std::vector<GreedyRank>> level_bucket_;
};

/// O(n^2) oracle for the three invariants over the currently inserted prefix.
bool check_invariants_bruteforce(const NeighborStructure& D);

/// Birth time of the edge {p_i, p_j} per the two-case analysis of the radius
/// schedules (after swapping so lambda_i <= lambda_j):
///   d <= 2 lambda_i (1+eps)/eps            -> d/2
///   d <= (lambda_i + lambda_j)(1+eps)/eps  -> d - lambda_i (1+eps)/eps
///   otherwise                              -> inf
/// Strict mode additionally yields inf when the computed birth lies past the
/// removal time of the smaller-radius endpoint, whose ball is then already
/// gone; paper-literal mode keeps the raw case analysis.
Real edge_birth_time(const SparseParams& params, GreedyRank i, GreedyRank j);
Real edge_birth_time(const SparseParams& params, GreedyRank i, GreedyRank j, BirthMode mode);

/// An edge of the sparse filtration, directed from the smaller insertion
/// radius (the later greedy rank) to the larger.
struct SparseEdge {
    GreedyRank src;
    GreedyRank dst;
    Real birth;
};

/// Directed edge graph of a sparse filtration with birth lookups.
class SparseEdgeGraph {
public:
    explicit SparseEdgeGraph(Index n) : n_(n), out_(n) {}

    Index size() const { return n_; }
    const std::vector<SparseEdge>& edges() const { return edges_; }
    /// Out-neighbors (all of strictly lower greedy rank), sorted ascending.
    const std::vector<GreedyRank>& out(GreedyRank v) const { return out_[v]; }

    bool has_edge(GreedyRank a, GreedyRank b) const;
    /// Birth of the undirected edge {a, b}, or +inf if absent.
    Real birth(GreedyRank a, GreedyRank b) const;

    void add_edge(GreedyRank src, GreedyRank dst, Real birth);
    void sort_adjacency();

private:
    std::uint64_t key(GreedyRank a, GreedyRank b) const;

    Index n_;
    std::vector<SparseEdge> edges_;
    std::vector<std::vector<GreedyRank>> out_;
    std::unordered_map<std::uint64_t, Real> birth_;
};

/// Runs the incremental insertion over the whole greedy order and collects
/// every finite-birth edge from the fresh point's neighbor list. Expected
/// linear time for constant doubling dimension and fixed epsilon.
SparseEdgeGraph construct_edges(const SparseParams& params);

}  // namespace sparse_nerve
