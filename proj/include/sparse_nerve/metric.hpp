#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace sparse_nerve {

using Real = double;
using Index = int;

/// A single point; coordinate count must match the owning cloud's dimension.
using Point = std::vector<Real>;

/// The supported convex metrics; each is a norm, hence convex. The set is
/// closed: Cech intersection tests are metric-specific.
enum class MetricKind { L2, L1, Linf };

std::string metric_name(MetricKind m);
MetricKind metric_from_name(const std::string& name);  // throws std::invalid_argument

/// Distance between two coordinate vectors of equal length under a metric.
Real metric_distance(std::span<const Real> a, std::span<const Real> b, MetricKind m);

/// Immutable point set with a named metric. Coordinates are stored flat
/// (row-major, n x dim) and are safe for concurrent reads.
class PointCloud {
public:
    PointCloud(std::vector<Real> flat_coords, int dim, MetricKind metric);

    int dim() const { return dim_; }
    Index size() const { return static_cast<Index>(coords_.size() / dim_); }
    MetricKind metric() const { return metric_; }

    std::span<const Real> point(Index i) const;
    Point point_copy(Index i) const;

    Real distance(Index i, Index j) const;
    Real distance_to(Index i, std::span<const Real> x) const;

    /// Max pairwise distance; 0 for a single point.
    Real diameter() const;

private:
    void check_index(Index i) const;

    std::vector<Real> coords_;
    int dim_;
    MetricKind metric_;
};

Real distance(const PointCloud& cloud, Index i, Index j);

/// Sentinel radius denoting the empty ball; ball_contains is always false for it.
inline constexpr Real kEmptyBallRadius = -std::numeric_limits<Real>::infinity();

/// Closed-ball membership: d(x, p_center) <= radius. The -inf sentinel radius
/// denotes the empty set and never contains anything.
bool ball_contains(const PointCloud& cloud, Index center, Real radius, std::span<const Real> x);

/// Parse the whitespace-separated point text format ('#' lines are comments;
/// all rows must have equal arity). Throws std::invalid_argument on bad input.
PointCloud load_points(const std::string& path, MetricKind metric);
PointCloud parse_points(const std::string& text, MetricKind metric);

void save_points(const PointCloud& cloud, const std::string& path);
std::string format_points(const PointCloud& cloud);

}  // namespace sparse_nerve
