#include "sparse_nerve/collapse.hpp"

#include <algorithm>
#include <stdexcept>

namespace sparse_nerve {

void SimplicialComplex::insert_closed(std::vector<Index> sigma) {
    std::sort(sigma.begin(), sigma.end());
    sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
    if (sigma.empty()) throw std::invalid_argument("cannot insert the empty simplex");
    // all nonempty subsets
    const std::size_t n = sigma.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<Index> face;
        for (std::size_t a = 0; a < n; ++a)
            if (mask & (1u << a)) face.push_back(sigma[a]);
        simplices_.insert(std::move(face));
    }
}

bool SimplicialComplex::contains(const std::vector<Index>& sigma) const {
    return simplices_.count(sigma) > 0;
}

int SimplicialComplex::dim() const {
    int d = -1;
    for (const auto& s : simplices_) d = std::max(d, static_cast<int>(s.size()) - 1);
    return d;
}

SimplicialComplex complex_at_scale(const FilteredComplex& fc, Real alpha) {
    SimplicialComplex K;
    for (const auto& s : fc.simplices)
        if (s.birth <= alpha) K.insert_closed(s.vertices);
    return K;
}

std::set<std::vector<Index>> link(const SimplicialComplex& K, const std::vector<Index>& sigma) {
    std::vector<Index> key(sigma);
    std::sort(key.begin(), key.end());
    if (!K.contains(key)) throw std::invalid_argument("link of a non-simplex");

    std::set<std::vector<Index>> lk;
    for (const auto& tau : K.simplices()) {
        if (!std::includes(tau.begin(), tau.end(), key.begin(), key.end())) continue;
        std::vector<Index> rest;
        std::set_difference(tau.begin(), tau.end(), key.begin(), key.end(),
                            std::back_inserter(rest));
        lk.insert(std::move(rest));
    }
    return lk;
}

bool satisfies_link_condition(const SimplicialComplex& K, Index u, Index v) {
    std::vector<Index> edge{std::min(u, v), std::max(u, v)};
    if (!K.contains(edge)) throw std::invalid_argument("link condition of a missing edge");

    auto lk_edge = link(K, edge);
    auto lk_u = link(K, {u});
    auto lk_v = link(K, {v});
    std::set<std::vector<Index>> both;
    std::set_intersection(lk_u.begin(), lk_u.end(), lk_v.begin(), lk_v.end(),
                          std::inserter(both, both.begin()));
    return both == lk_edge;
}

bool satisfies_link_condition_within(const SimplicialComplex& K, Index u, Index v, int max_dim) {
    std::vector<Index> edge{std::min(u, v), std::max(u, v)};
    if (!K.contains(edge)) throw std::invalid_argument("link condition of a missing edge");

    auto lk_edge = link(K, edge);
    auto lk_u = link(K, {u});
    auto lk_v = link(K, {v});
    // Lk{u,v} is always inside the intersection; only the reverse inclusion
    // can fail, and only joins expressible below the truncation are checked.
    for (const auto& J : lk_u) {
        if (static_cast<int>(J.size()) + 1 > max_dim) continue;
        if (!lk_v.count(J)) continue;
        if (!lk_edge.count(J)) return false;
    }
    return true;
}

SimplicialComplex contract_edge(const SimplicialComplex& K, Index u, Index v) {
    std::vector<Index> edge{std::min(u, v), std::max(u, v)};
    if (!K.contains(edge)) throw std::invalid_argument("contracting a missing edge");

    SimplicialComplex out;
    for (const auto& tau : K.simplices()) {
        std::vector<Index> image;
        image.reserve(tau.size());
        for (Index w : tau) image.push_back(w == u ? v : w);
        out.insert_closed(std::move(image));
    }
    return out;
}

std::vector<std::size_t> betti_numbers(const SimplicialComplex& K, int max_hom_dim) {
    // Reuse the filtration-based rank computation with every simplex at 0.
    FilteredComplex fc;
    for (const auto& s : K.simplices()) {
        fc.simplices.push_back({s, 0.0});
        fc.max_dim = std::max(fc.max_dim, static_cast<int>(s.size()) - 1);
    }
    std::sort(fc.simplices.begin(), fc.simplices.end(), filtration_less);
    return betti_numbers_at(fc, 0.0, max_hom_dim);
}

GreedyRank find_collapse_partner(const SparseParams& params) {
    const Index n = params.size();
    if (n < 2) throw std::invalid_argument("need at least two points to collapse");
    GreedyRank last = n - 1;
    return covering_witness(params, last, removal_time(params, last));
}

}  // namespace sparse_nerve
