#include "sparse_nerve/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sparse_nerve {

namespace {

constexpr Real kInf = std::numeric_limits<Real>::infinity();

Real dist_l2(std::span<const Real> a, std::span<const Real> b) {
    return metric_distance(a, b, MetricKind::L2);
}

// Solve M y = rhs (m x m) by Gaussian elimination with partial pivoting;
// returns false when the pivot degenerates (affinely dependent input).
bool solve_linear(std::vector<std::vector<Real>>& M, std::vector<Real>& rhs, Real pivot_tol) {
    const int m = static_cast<int>(rhs.size());
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
        if (std::abs(M[piv][col]) <= pivot_tol) return false;
        std::swap(M[piv], M[col]);
        std::swap(rhs[piv], rhs[col]);
        for (int r = 0; r < m; ++r) {
            if (r == col) continue;
            Real f = M[r][col] / M[col][col];
            if (f == 0.0) continue;
            for (int c = col; c < m; ++c) M[r][c] -= f * M[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    for (int r = 0; r < m; ++r) rhs[r] /= M[r][r];
    return true;
}

}  // namespace

std::optional<Ball> circumsphere_l2(const std::vector<Point>& points) {
    const int m = static_cast<int>(points.size()) - 1;
    const int d = static_cast<int>(points[0].size());
    if (m == 0) return Ball{points[0], 0.0};

    // Center c = p0 + sum_a y_a (p_a - p0) with equal distances to all points:
    // the Gram system G y = rhs, G_ab = v_a . v_b, rhs_a = |v_a|^2 / 2.
    Real scale = 0.0;
    std::vector<std::vector<Real>> v(m, std::vector<Real>(d));
    for (int a = 0; a < m; ++a)
        for (int k = 0; k < d; ++k) {
            v[a][k] = points[a + 1][k] - points[0][k];
            scale = std::max(scale, std::abs(v[a][k]));
        }
    std::vector<std::vector<Real>> G(m, std::vector<Real>(m));
    std::vector<Real> rhs(m);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            Real s = 0.0;
            for (int k = 0; k < d; ++k) s += v[a][k] * v[b][k];
            G[a][b] = s;
        }
        rhs[a] = G[a][a] / 2.0;
    }
    if (!solve_linear(G, rhs, 1e-12 * std::max(scale * scale, 1e-300))) return std::nullopt;

    Ball ball;
    ball.center = points[0];
    for (int a = 0; a < m; ++a)
        for (int k = 0; k < d; ++k) ball.center[k] += rhs[a] * v[a][k];
    ball.radius = 0.0;
    for (const auto& p : points) ball.radius = std::max(ball.radius, dist_l2(ball.center, p));
    return ball;
}

Ball min_enclosing_ball_l2(const std::vector<Point>& points) {
    if (points.empty()) throw std::invalid_argument("minimum enclosing ball of an empty set");
    const int n = static_cast<int>(points.size());
    const int d = static_cast<int>(points[0].size());
    if (n > 20) throw std::invalid_argument("min_enclosing_ball_l2 is meant for small sets");

    Real scale = 1e-300;
    for (const auto& p : points)
        for (Real c : p) scale = std::max(scale, std::abs(c));
    const Real slack = 1e-12 * scale;

    Ball best;
    best.radius = kInf;
    const int max_support = std::min(n, d + 1);
    // Every candidate support subset of size <= d+1; the true miniball is the
    // circumsphere of one of them.
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) > max_support) continue;
        std::vector<Point> sub;
        for (int a = 0; a < n; ++a)
            if (mask & (1u << a)) sub.push_back(points[a]);
        auto cand = circumsphere_l2(sub);
        if (!cand || cand->radius >= best.radius) continue;
        bool covers = true;
        for (const auto& p : points)
            if (dist_l2(cand->center, p) > cand->radius + slack) {
                covers = false;
                break;
            }
        if (covers) best = *cand;
    }
    return best;
}

Ball min_enclosing_ball_linf(const std::vector<Point>& points) {
    if (points.empty()) throw std::invalid_argument("minimum enclosing ball of an empty set");
    const int d = static_cast<int>(points[0].size());
    Ball ball;
    ball.center.resize(d);
    ball.radius = 0.0;
    for (int k = 0; k < d; ++k) {
        Real lo = kInf, hi = -kInf;
        for (const auto& p : points) {
            lo = std::min(lo, p[k]);
            hi = std::max(hi, p[k]);
        }
        ball.center[k] = (lo + hi) / 2.0;
        ball.radius = std::max(ball.radius, (hi - lo) / 2.0);
    }
    return ball;
}

namespace {

// Orthonormal basis of the affine hull (Gram-Schmidt); points are re-expressed
// in hull coordinates. Distances are preserved, so ball intersection reduces
// to the hull.
std::vector<Point> to_hull_coords(const std::vector<Point>& pts) {
    const int n = static_cast<int>(pts.size());
    const int d = static_cast<int>(pts[0].size());
    Real scale = 1e-300;
    std::vector<std::vector<Real>> basis;
    for (int a = 1; a < n; ++a) {
        std::vector<Real> v(d);
        for (int k = 0; k < d; ++k) {
            v[k] = pts[a][k] - pts[0][k];
            scale = std::max(scale, std::abs(v[k]));
        }
        for (const auto& e : basis) {
            Real dot = 0.0;
            for (int k = 0; k < d; ++k) dot += v[k] * e[k];
            for (int k = 0; k < d; ++k) v[k] -= dot * e[k];
        }
        Real norm = 0.0;
        for (int k = 0; k < d; ++k) norm += v[k] * v[k];
        norm = std::sqrt(norm);
        if (norm > 1e-9 * scale) {
            for (int k = 0; k < d; ++k) v[k] /= norm;
            basis.push_back(std::move(v));
        }
    }
    std::vector<Point> out(n, Point(basis.size(), 0.0));
    for (int a = 0; a < n; ++a)
        for (std::size_t e = 0; e < basis.size(); ++e) {
            Real dot = 0.0;
            for (int k = 0; k < d; ++k) dot += (pts[a][k] - pts[0][k]) * basis[e][k];
            out[a][e] = dot;
        }
    return out;
}

Real hypot2(Real x, Real y) { return std::sqrt(x * x + y * y); }

// Distance from q to the lens D1 n D2 (planar disks, lens assumed nonempty
// within slack). Exact: the nearest lens point is q itself, a projection onto
// one circle that lands inside the other disk, or a circle-circle crossing.
Real dist_to_lens_2d(const Point& q, const Point& q1, Real r1, const Point& q2, Real r2) {
    auto inside = [](const Point& x, const Point& c, Real r) {
        return hypot2(x[0] - c[0], x[1] - c[1]) <= r;
    };
    if (inside(q, q1, r1) && inside(q, q2, r2)) return 0.0;

    Real best = kInf;
    auto consider_projection = [&](const Point& c, Real r, const Point& other_c, Real other_r) {
        Real dx = q[0] - c[0], dy = q[1] - c[1];
        Real dq = hypot2(dx, dy);
        if (dq <= 0.0) return;  // projection direction undefined; crossing candidates cover it
        Point z{c[0] + r * dx / dq, c[1] + r * dy / dq};
        if (inside(z, other_c, other_r)) best = std::min(best, hypot2(q[0] - z[0], q[1] - z[1]));
    };
    consider_projection(q1, r1, q2, r2);
    consider_projection(q2, r2, q1, r1);

    Real ddx = q2[0] - q1[0], ddy = q2[1] - q1[1];
    Real d12 = hypot2(ddx, ddy);
    if (d12 > 0.0) {
        Real a = (d12 * d12 + r1 * r1 - r2 * r2) / (2.0 * d12);
        Real h2 = r1 * r1 - a * a;
        if (h2 >= -1e-9 * std::max(r1 * r1, 1e-300)) {
            Real h = std::sqrt(std::max(h2, 0.0));
            Real mx = q1[0] + a * ddx / d12, my = q1[1] + a * ddy / d12;
            Real px = -ddy / d12, py = ddx / d12;
            best = std::min(best, hypot2(q[0] - (mx + h * px), q[1] - (my + h * py)));
            best = std::min(best, hypot2(q[0] - (mx - h * px), q[1] - (my - h * py)));
        }
    }
    return best;
}

bool intersect_l2_small(const std::vector<Point>& centers, const std::vector<Real>& radii,
                        Real slack) {
    const int n = static_cast<int>(centers.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (dist_l2(centers[a], centers[b]) > radii[a] + radii[b] + slack) return false;
    if (n <= 2) return true;

    auto q = to_hull_coords(centers);
    const int m = static_cast<int>(q[0].size());
    if (m == 0) return true;  // coincident centers, pairwise check settled it
    if (m == 1) {
        Real lo = -kInf, hi = kInf;
        for (int a = 0; a < n; ++a) {
            lo = std::max(lo, q[a][0] - radii[a]);
            hi = std::min(hi, q[a][0] + radii[a]);
        }
        return lo <= hi + slack;
    }
    // Three genuinely planar disks: the intersection is lens(1,2) meet disk 3.
    return dist_to_lens_2d(q[2], q[0], radii[0], q[1], radii[1]) <= radii[2] + slack;
}

bool intersect_l2_projection(const std::vector<Point>& centers, const std::vector<Real>& radii,
                             Real slack) {
    // Alternating projections onto the balls: converges into a nonempty
    // intersection, cycles with a positive gap otherwise.
    const int n = static_cast<int>(centers.size());
    const int d = static_cast<int>(centers[0].size());
    Point x(d, 0.0);
    for (const auto& c : centers)
        for (int k = 0; k < d; ++k) x[k] += c[k] / n;
    const int kMaxPasses = 4000;
    for (int pass = 0; pass < kMaxPasses; ++pass) {
        Real worst = 0.0;
        for (int a = 0; a < n; ++a) {
            Real dist = dist_l2(x, centers[a]);
            worst = std::max(worst, dist - radii[a]);
            if (dist > radii[a] && dist > 0.0) {
                Real f = radii[a] / dist;
                for (int k = 0; k < d; ++k) x[k] = centers[a][k] + f * (x[k] - centers[a][k]);
            }
        }
        if (worst <= slack) return true;
    }
    Real worst = 0.0;
    for (int a = 0; a < n; ++a) worst = std::max(worst, dist_l2(x, centers[a]) - radii[a]);
    return worst <= slack;
}

bool intersect_linf(const std::vector<Point>& centers, const std::vector<Real>& radii,
                    Real slack) {
    const int d = static_cast<int>(centers[0].size());
    for (int k = 0; k < d; ++k) {
        Real lo = -kInf, hi = kInf;
        for (std::size_t a = 0; a < centers.size(); ++a) {
            lo = std::max(lo, centers[a][k] - radii[a]);
            hi = std::min(hi, centers[a][k] + radii[a]);
        }
        if (lo > hi + slack) return false;
    }
    return true;
}

}  // namespace

bool balls_intersect(const std::vector<Point>& centers, const std::vector<Real>& radii,
                     MetricKind metric, Real slack) {
    if (centers.empty() || centers.size() != radii.size())
        throw std::invalid_argument("balls_intersect: bad input sizes");
    for (Real r : radii)
        if (r < 0.0) return false;  // empty-ball sentinel or negative radius
    if (centers.size() == 1) return true;

    switch (metric) {
        case MetricKind::Linf:
            return intersect_linf(centers, radii, slack);
        case MetricKind::L2:
            if (centers.size() <= 3) return intersect_l2_small(centers, radii, slack);
            return intersect_l2_projection(centers, radii, slack);
        case MetricKind::L1:
            throw std::invalid_argument("L1 common-intersection test is not implemented");
    }
    return false;
}

}  // namespace sparse_nerve
