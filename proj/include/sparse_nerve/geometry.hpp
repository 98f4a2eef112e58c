#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sparse_nerve/metric.hpp"

namespace sparse_nerve {

struct Ball {
    Point center;
    Real radius = 0.0;
};

/// Smallest enclosing L2 ball, exact via circumsphere enumeration over
/// support subsets (the miniball is the circumsphere of at most d+1 of the
/// points). Intended for small point sets (simplex vertex sets).
Ball min_enclosing_ball_l2(const std::vector<Point>& points);

/// Smallest enclosing Linf ball: the coordinate-wise midrange box.
Ball min_enclosing_ball_linf(const std::vector<Point>& points);

/// Does the intersection of closed balls ball(centers[j], radii[j]) have a
/// common point? Exact for Linf (interval arithmetic) in any count, and for
/// L2 with up to three balls (in-plane disk geometry); larger L2 systems fall
/// back to alternating projections with the given slack.
bool balls_intersect(const std::vector<Point>& centers, const std::vector<Real>& radii,
                     MetricKind metric, Real slack = 1e-10);

/// Circumsphere of an affinely independent point set with the center in the
/// affine hull; nullopt if the set is (numerically) degenerate.
std::optional<Ball> circumsphere_l2(const std::vector<Point>& points);

}  // namespace sparse_nerve
