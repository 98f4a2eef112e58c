#pragma once

#include <set>
#include <vector>

#include "sparse_nerve/persistence.hpp"
#include "sparse_nerve/simplex_enum.hpp"
#include "sparse_nerve/sparse_balls.hpp"

namespace sparse_nerve {

/// An explicit simplicial complex: a facet-closed family of vertex sets,
/// each stored sorted. The empty simplex is never a member; links may
/// contain it (as the empty vector).
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Inserts sigma together with all of its faces.
    void insert_closed(std::vector<Index> sigma);

    bool contains(const std::vector<Index>& sigma) const;
    std::size_t size() const { return simplices_.size(); }
    const std::set<std::vector<Index>>& simplices() const { return simplices_; }
    int dim() const;

    bool operator==(const SimplicialComplex&) const = default;

private:
    std::set<std::vector<Index>> simplices_;
};

/// The sublevel complex of a filtration at scale alpha.
SimplicialComplex complex_at_scale(const FilteredComplex& fc, Real alpha);

/// Lk sigma = { tau \ sigma : tau in K, sigma subset of tau }; contains the
/// empty set (from tau = sigma). Throws if sigma is not a simplex of K.
std::set<std::vector<Index>> link(const SimplicialComplex& K, const std::vector<Index>& sigma);

/// Lk{u,v} == Lk{u} intersect Lk{v}. Requires the edge {u,v} in K.
bool satisfies_link_condition(const SimplicialComplex& K, Index u, Index v);

/// The link condition restricted to joins the complex can express: only
/// members J of Lk{u} intersect Lk{v} with dim(J union {u,v}) <= max_dim are
/// required to lie in Lk{u,v}. On a complex truncated at max_dim this is the
/// testable part of the condition; with max_dim >= dim(K)+1 it coincides
/// with the full test.
bool satisfies_link_condition_within(const SimplicialComplex& K, Index u, Index v, int max_dim);

/// Contracts u onto v: every simplex has u replaced by v, duplicates merged.
SimplicialComplex contract_edge(const SimplicialComplex& K, Index u, Index v);

/// GF(2) Betti numbers of the complex, dimensions 0..max_hom_dim.
std::vector<std::size_t> betti_numbers(const SimplicialComplex& K, int max_hom_dim);

/// The covering partner of the last greedy vertex: the witness rank i with
/// b_n(alpha) inside b_i(alpha) at alpha = removal_time(last), the scale at
/// which the last vertex's ball disappears. The edge {last, i} satisfies the
/// link condition in the sparse complex at that scale.
GreedyRank find_collapse_partner(const SparseParams& params);

}  // namespace sparse_nerve
