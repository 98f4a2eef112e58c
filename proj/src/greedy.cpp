#include "sparse_nerve/greedy.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sparse_nerve {

GreedyPermutation greedy_permutation(const PointCloud& cloud, Index seed) {
    const Index n = cloud.size();
    if (seed < 0 || seed >= n) throw std::out_of_range("seed index out of range");

    GreedyPermutation gp;
    gp.order.reserve(n);
    gp.lambda.reserve(n);
    gp.pred_rank.reserve(n);

    gp.order.push_back(seed);
    gp.lambda.push_back(std::numeric_limits<Real>::infinity());
    gp.pred_rank.push_back(-1);

    // Running distance to the chosen prefix and the rank realizing it.
    // Strict '<' on updates keeps the earliest greedy rank on predecessor ties.
    std::vector<Real> min_dist(n);
    std::vector<Index> nearest(n, 0);
    std::vector<char> taken(n, 0);
    taken[seed] = 1;
    for (Index p = 0; p < n; ++p) min_dist[p] = cloud.distance(p, seed);

    for (Index i = 1; i < n; ++i) {
        Index far = -1;
        for (Index p = 0; p < n; ++p) {
            if (taken[p]) continue;
            if (far == -1 || min_dist[p] > min_dist[far]) far = p;
        }
        gp.order.push_back(far);
        gp.lambda.push_back(min_dist[far]);
        gp.pred_rank.push_back(nearest[far]);
        taken[far] = 1;
        for (Index p = 0; p < n; ++p) {
            if (taken[p]) continue;
            Real d = cloud.distance(p, far);
            if (d < min_dist[p]) {
                min_dist[p] = d;
                nearest[p] = i;
            }
        }
    }
    return gp;
}

bool verify_net_property(const GreedyPermutation& gp, const PointCloud& cloud, Index i) {
    const Index n = gp.size();
    if (i < 1 || i > n) throw std::out_of_range("prefix length out of range");
    const Real lam = gp.lambda[i - 1];

    if (std::isfinite(lam)) {
        // packing: prefix points pairwise >= lambda_i apart
        for (Index a = 0; a < i; ++a)
            for (Index b = a + 1; b < i; ++b)
                if (cloud.distance(gp.order[a], gp.order[b]) < lam) return false;
        // covering: every point within lambda_i of the prefix
        for (Index p = 0; p < n; ++p) {
            Real best = std::numeric_limits<Real>::infinity();
            for (Index a = 0; a < i; ++a)
                best = std::min(best, cloud.distance(gp.order[p], gp.order[a]));
            if (best > lam) return false;
        }
    }
    return true;
}

std::string format_permutation(const GreedyPermutation& gp) {
    std::ostringstream out;
    char num[64];
    for (Index i = 0; i < gp.size(); ++i) {
        out << gp.order[i] << ' ';
        if (std::isfinite(gp.lambda[i])) {
            std::snprintf(num, sizeof num, "%.17g", gp.lambda[i]);
            out << num;
        } else {
            out << "inf";
        }
        out << ' ';
        if (gp.has_pred(i))
            out << gp.order[gp.pred_rank[i]];
        else
            out << '-';
        out << '\n';
    }
    return out.str();
}

}  // namespace sparse_nerve
