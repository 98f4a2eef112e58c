#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sparse_nerve/neighbor_graph.hpp"
#include "sparse_nerve/sparse_balls.hpp"

namespace sparse_nerve {

/// A simplex with its birth scale. Vertices are strictly increasing.
struct FilteredSimplex {
    std::vector<Index> vertices;
    Real birth = 0.0;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

/// Filtration order: birth, then dimension, then lexicographic vertices.
bool filtration_less(const FilteredSimplex& a, const FilteredSimplex& b);

/// A filtered complex: simplices closed under facets, sorted in filtration
/// order with deterministic tie-breaking.
struct FilteredComplex {
    std::vector<FilteredSimplex> simplices;
    int max_dim = 0;

    std::size_t size() const { return simplices.size(); }
    std::vector<std::size_t> count_by_dim() const;
};

/// Throws std::invalid_argument if the complex is unsorted, has malformed
/// vertex lists, is not facet-closed, or violates birth monotonicity.
void validate_filtration(const FilteredComplex& fc);

enum class Flavor { Rips, Cech };
std::string flavor_name(Flavor f);
Flavor flavor_from_name(const std::string& name);

/// Rips-style birth: the maximum edge birth across the pairs of sigma,
/// unless it exceeds the earliest removal time among sigma's vertices (some
/// ball would already be gone), in which case the simplex never appears.
Real simplex_birth_time_rips(const SparseParams& params, std::span<const GreedyRank> sigma,
                             const SparseEdgeGraph& g);

/// Cech birth for L2: the least alpha at which the truncated balls b_j(alpha)
/// share a point. Short-circuits to the minimum enclosing ball radius when no
/// radius cap binds there; otherwise bisects alpha against the ball
/// intersection test (relative tolerance 1e-9, feasibility slack 1e-10).
Real simplex_birth_time_cech_l2(const SparseParams& params, std::span<const GreedyRank> sigma);

/// Cech birth for Linf, same scheme with exact box intersection tests.
Real simplex_birth_time_cech_linf(const SparseParams& params, std::span<const GreedyRank> sigma);

using BirthFn = std::function<Real(std::span<const GreedyRank>)>;

/// All k-simplices of the sparse filtration: for each vertex v, every
/// k-subset of its out-neighborhood forming a clique, kept when the supplied
/// birth function is finite. Result is sorted by vertex lists. Honors the
/// SPARSE_NERVE_THREADS cap; output is identical to the sequential run.
std::vector<FilteredSimplex> find_simplices(const SparseEdgeGraph& g, int k,
                                            const BirthFn& birth_fn);

/// Assembles the whole sparse filtration: vertices at birth 0, edges from the
/// incremental construction, higher simplices up to max_dim via the chosen
/// flavor's birth function. Validated before return.
FilteredComplex build_filtration(const SparseParams& params, int max_dim, Flavor flavor);

/// Rewrites vertex ids through a mapping (e.g. greedy rank to original index)
/// and restores filtration order.
FilteredComplex relabel_vertices(const FilteredComplex& fc, const std::vector<Index>& mapping);

/// Text format: one simplex per line, "birth dim v0 v1 ... vk".
std::string format_filtration(const FilteredComplex& fc);
FilteredComplex parse_filtration(const std::string& text);

}  // namespace sparse_nerve
