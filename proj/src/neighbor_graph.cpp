#include "sparse_nerve/neighbor_graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sparse_nerve {

namespace {
constexpr Real kInf = std::numeric_limits<Real>::infinity();

int level_plus_one(int level) {
    if (level == kLevelPosInf || level == kLevelNegInf) return level;
    return level + 1;
}
}  // namespace

Real kappa(Real epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    return (epsilon * epsilon + 3.0 * epsilon + 2.0) / epsilon;
}

int level_of_lambda(Real lambda) {
    if (!std::isfinite(lambda)) return kLevelPosInf;
    if (lambda <= 0.0) return kLevelNegInf;
    int l = static_cast<int>(std::ceil(std::log2(lambda)));
    while (std::ldexp(1.0, l) < lambda) ++l;
    while (std::ldexp(1.0, l - 1) >= lambda) --l;
    return l;
}

Real pow2_level(int level) {
    if (level == kLevelPosInf) return kInf;
    if (level == kLevelNegInf) return 0.0;
    return std::ldexp(1.0, level);
}

NeighborStructure::NeighborStructure(const SparseParams& params)
    : params_(&params), kappa_(kappa(params.epsilon())) {
    const Index n = params.size();
    level_.resize(n);
    for (GreedyRank j = 0; j < n; ++j) level_[j] = level_of_lambda(params.lambda(j));
    parent_.assign(n, -1);
    nbr_.resize(n);
    ch_.resize(n);

    parent_[0] = 0;
    ch_[0].push_back(0);
    nbr_[0].push_back(0);
    level_bucket_[level_[0]].push_back(0);
    inserted_ = 1;
}

bool NeighborStructure::neighbor_required(GreedyRank owner, GreedyRank entry, int level_i) const {
    int m = std::min({level_[owner], level_[entry], level_plus_one(level_i)});
    return params_->rank_distance(owner, entry) <= kappa_ * pow2_level(m);
}

bool NeighborStructure::child_required(GreedyRank owner, GreedyRank entry, int level_i) const {
    if (entry == owner) return true;
    return parent_[entry] == owner && level_[entry] == level_i;
}

std::vector<GreedyRank> NeighborStructure::prune_and_copy_nbr(GreedyRank owner, int level_i) {
    auto& list = nbr_[owner];
    list.erase(std::remove_if(list.begin(), list.end(),
                              [&](GreedyRank k) { return !neighbor_required(owner, k, level_i); }),
               list.end());
    return list;
}

std::vector<GreedyRank> NeighborStructure::prune_and_copy_ch(GreedyRank owner, int level_i) {
    auto& list = ch_[owner];
    list.erase(std::remove_if(list.begin(), list.end(),
                              [&](GreedyRank k) { return !child_required(owner, k, level_i); }),
               list.end());
    return list;
}

std::vector<GreedyRank> NeighborStructure::live_neighbors(GreedyRank owner) {
    return prune_and_copy_nbr(owner, level_[inserted_ - 1]);
}

void NeighborStructure::add_neighbor(GreedyRank owner, GreedyRank entry) {
    auto& list = nbr_[owner];
    if (std::find(list.begin(), list.end(), entry) == list.end()) list.push_back(entry);
}

void NeighborStructure::insert(GreedyRank i) {
    if (i != inserted_) throw std::logic_error("points must be inserted in greedy order");
    const int li = level_[i];
    const int lprev = level_[i - 1];

    // Level dropped: the previous level's points become their own parents.
    if (li < lprev) {
        auto it = level_bucket_.find(lprev);
        if (it != level_bucket_.end())
            for (GreedyRank k : it->second) parent_[k] = k;
    }

    // Parent: start from the predecessor's parent, then take the closest
    // strictly-higher-level point among that parent's neighbors.
    const GreedyRank pred = params_->gp().pred_rank[i];
    GreedyRank best = parent_[pred];
    Real best_d = params_->rank_distance(i, best);
    for (GreedyRank k : prune_and_copy_nbr(parent_[pred], li)) {
        if (level_[k] <= li) continue;
        Real d = params_->rank_distance(i, k);
        if (d <= best_d) {
            best = k;
            best_d = d;
        }
    }
    parent_[i] = best;

    ch_[i].push_back(i);
    if (best != i) ch_[best].push_back(i);
    nbr_[i].push_back(i);

    // Neighbors of the new point are children of neighbors of its parent.
    const Real reach = kappa_ * pow2_level(li);
    for (GreedyRank pn : prune_and_copy_nbr(parent_[i], li)) {
        for (GreedyRank k : prune_and_copy_ch(pn, li)) {
            if (k == i) continue;
            if (params_->rank_distance(i, k) <= reach) {
                add_neighbor(i, k);
                add_neighbor(k, i);
            }
        }
    }

    level_bucket_[li].push_back(i);
    inserted_ = i + 1;
}

bool check_invariants_bruteforce(const NeighborStructure& D) {
    const Index m = D.inserted_count();
    const SparseParams& params = D.params();
    const Real kap = kappa(params.epsilon());
    const int li = D.level(m - 1);

    for (GreedyRank j = 0; j < m; ++j) {
        // Parent Invariant; the first point (level +inf) is always its own
        // parent since no strictly higher level exists.
        if (D.level(j) > li || D.level(j) == kLevelPosInf) {
            if (D.parent(j) != j) return false;
        } else {
            GreedyRank k = D.parent(j);
            if (k < 0 || k >= m) return false;
            if (D.level(k) <= li) return false;
            if (params.rank_distance(j, k) > pow2_level(li)) return false;
        }
        // Child Invariant
        const auto& cj = D.children(j);
        if (std::find(cj.begin(), cj.end(), j) == cj.end()) return false;
        for (GreedyRank k = 0; k < m; ++k) {
            if (D.parent(k) == j && D.level(k) == li &&
                std::find(cj.begin(), cj.end(), k) == cj.end())
                return false;
        }
        // Neighbor Invariant
        const auto& nj = D.neighbors(j);
        for (GreedyRank k = 0; k < m; ++k) {
            int lvl = std::min({D.level(j), D.level(k), level_plus_one(li)});
            if (params.rank_distance(j, k) <= kap * pow2_level(lvl) &&
                std::find(nj.begin(), nj.end(), k) == nj.end())
                return false;
        }
    }
    return true;
}

Real edge_birth_time(const SparseParams& params, GreedyRank i, GreedyRank j) {
    return edge_birth_time(params, i, j, params.mode());
}

Real edge_birth_time(const SparseParams& params, GreedyRank i, GreedyRank j, BirthMode mode) {
    if (i == j) throw std::invalid_argument("an edge needs two distinct points");
    if (params.lambda(i) > params.lambda(j)) std::swap(i, j);

    const Real d = params.rank_distance(i, j);
    const Real cap_i = params.radius_cap(i);
    const Real cap_j = params.radius_cap(j);

    Real birth;
    if (d <= 2.0 * cap_i)
        birth = d / 2.0;
    else if (d <= cap_i + cap_j)
        birth = d - cap_i;
    else
        return kInf;

    if (mode == BirthMode::Strict && birth > removal_time(params, i)) return kInf;
    return birth;
}

std::uint64_t SparseEdgeGraph::key(GreedyRank a, GreedyRank b) const {
    auto lo = static_cast<std::uint64_t>(std::min(a, b));
    auto hi = static_cast<std::uint64_t>(std::max(a, b));
    return hi * static_cast<std::uint64_t>(n_) + lo;
}

bool SparseEdgeGraph::has_edge(GreedyRank a, GreedyRank b) const {
    return birth_.count(key(a, b)) > 0;
}

Real SparseEdgeGraph::birth(GreedyRank a, GreedyRank b) const {
    auto it = birth_.find(key(a, b));
    return it == birth_.end() ? kInf : it->second;
}

void SparseEdgeGraph::add_edge(GreedyRank src, GreedyRank dst, Real birth) {
    edges_.push_back({src, dst, birth});
    out_[src].push_back(dst);
    birth_[key(src, dst)] = birth;
}

void SparseEdgeGraph::sort_adjacency() {
    for (auto& lst : out_) std::sort(lst.begin(), lst.end());
}

SparseEdgeGraph construct_edges(const SparseParams& params) {
    const Index n = params.size();
    SparseEdgeGraph g(n);
    if (n <= 1) return g;

    NeighborStructure D(params);
    for (GreedyRank i = 1; i < n; ++i) {
        D.insert(i);
        for (GreedyRank j : D.live_neighbors(i)) {
            if (j == i) continue;
            Real birth = edge_birth_time(params, i, j);
            if (birth < kInf) g.add_edge(i, j, birth);
        }
    }
    g.sort_adjacency();
    return g;
}

}  // namespace sparse_nerve
