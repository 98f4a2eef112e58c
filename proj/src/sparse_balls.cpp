#include "sparse_nerve/sparse_balls.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sparse_nerve {

namespace {
constexpr Real kInf = std::numeric_limits<Real>::infinity();
}

SparseParams::SparseParams(const PointCloud& cloud, const GreedyPermutation& gp, Real epsilon,
                           BirthMode mode)
    : cloud_(&cloud), gp_(&gp), eps_(epsilon), mode_(mode) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("epsilon must be a positive finite number");
    if (gp.size() != cloud.size())
        throw std::invalid_argument("permutation size does not match cloud");
}

Real SparseParams::radius_cap(GreedyRank i) const {
    Real lam = lambda(i);
    if (!std::isfinite(lam)) return kInf;
    return lam * (1.0 + eps_) / eps_;
}

Real radius(const SparseParams& params, GreedyRank i, Real alpha) {
    Real cap = params.radius_cap(i);
    return alpha <= cap ? alpha : cap;
}

Real removal_time(const SparseParams& params, GreedyRank i) {
    Real lam = params.lambda(i);
    if (!std::isfinite(lam)) return kInf;
    Real e = params.epsilon();
    return lam * (1.0 + e) * (1.0 + e) / e;
}

Real ball_radius_or_empty(const SparseParams& params, GreedyRank i, Real alpha) {
    if (alpha <= removal_time(params, i)) return radius(params, i, alpha);
    return kEmptyBallRadius;
}

bool cone_contains(const SparseParams& params, GreedyRank i, const ConePoint& cp, Real alpha) {
    if (cp.delta > alpha || cp.delta < 0.0) return false;
    Real r = ball_radius_or_empty(params, i, cp.delta);
    if (r == kEmptyBallRadius) return false;
    return params.rank_distance_to(i, cp.x) <= r;
}

GreedyRank covering_witness(const SparseParams& params, GreedyRank j, Real beta) {
    if (beta < 0.0) throw std::invalid_argument("beta must be nonnegative");
    if (beta < removal_time(params, j)) return j;

    // The proof's recipe: among points with insertion radius at least
    // eps*beta/(1+eps) (a prefix of the greedy order, since lambda is
    // non-increasing), take the nearest to p_j. The net covering property
    // puts one within eps*beta/(1+eps) of p_j; rank 0 always qualifies.
    const Real threshold = params.epsilon() * beta / (1.0 + params.epsilon());
    GreedyRank best = 0;
    Real best_d = params.rank_distance(j, 0);
    for (GreedyRank k = 1; k < params.size() && params.lambda(k) >= threshold; ++k) {
        Real d = params.rank_distance(j, k);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

bool perturbed_offsets_contains_rform(const SparseParams& params, std::span<const Real> x,
                                      Real alpha) {
    for (GreedyRank i = 0; i < params.size(); ++i)
        if (params.rank_distance_to(i, x) <= radius(params, i, alpha)) return true;
    return false;
}

namespace {

bool contains_bform(const SparseParams& params, std::span<const Real> x, Real alpha) {
    for (GreedyRank i = 0; i < params.size(); ++i) {
        Real r = ball_radius_or_empty(params, i, alpha);
        if (r != kEmptyBallRadius && params.rank_distance_to(i, x) <= r) return true;
    }
    return false;
}

#ifndef NDEBUG
// The two union forms agree exactly in real arithmetic; under rounding they
// can only disagree when x sits within float noise of some sphere boundary.
bool near_some_boundary(const SparseParams& params, std::span<const Real> x, Real alpha) {
    for (GreedyRank i = 0; i < params.size(); ++i) {
        Real r = radius(params, i, alpha);
        Real d = params.rank_distance_to(i, x);
        if (std::abs(d - r) <= 1e-9 * std::max(1.0, r)) return true;
    }
    return false;
}
#endif

}  // namespace

bool perturbed_offsets_contains(const SparseParams& params, std::span<const Real> x, Real alpha) {
    if (alpha < 0.0) throw std::invalid_argument("alpha must be nonnegative");
    bool b = contains_bform(params, x, alpha);
    assert(b == perturbed_offsets_contains_rform(params, x, alpha) ||
           near_some_boundary(params, x, alpha));
    return b;
}

}  // namespace sparse_nerve
