#include "sparse_nerve/generators.hpp"

#include <cmath>
#include <stdexcept>

namespace sparse_nerve {

std::uint64_t Rng::next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Real Rng::uniform() {
    return static_cast<Real>(next_u64() >> 11) * 0x1.0p-53;
}

Real Rng::uniform(Real lo, Real hi) { return lo + (hi - lo) * uniform(); }

Real Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    Real u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    Real u2 = uniform();
    Real mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return mag * std::cos(2.0 * M_PI * u2);
}

PointCloud gen_uniform_box(Index n, int dim, std::uint64_t seed, MetricKind metric) {
    if (n < 1 || dim < 1) throw std::invalid_argument("need n >= 1 and dim >= 1");
    Rng rng(seed);
    std::vector<Real> coords;
    coords.reserve(static_cast<std::size_t>(n) * dim);
    for (Index i = 0; i < n; ++i)
        for (int k = 0; k < dim; ++k) coords.push_back(rng.uniform());
    return PointCloud(std::move(coords), dim, metric);
}

PointCloud gen_noisy_circle(Index n, Real noise, std::uint64_t seed, MetricKind metric) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    Rng rng(seed);
    std::vector<Real> coords;
    coords.reserve(static_cast<std::size_t>(n) * 2);
    // jittered equal spacing keeps the largest angular gap bounded, so the
    // loop stays visible at small n
    for (Index i = 0; i < n; ++i) {
        Real theta = 2.0 * M_PI * (i + 0.4 * rng.uniform(-1.0, 1.0)) / n;
        Real r = 1.0 + noise * rng.gaussian();
        coords.push_back(r * std::cos(theta));
        coords.push_back(r * std::sin(theta));
    }
    return PointCloud(std::move(coords), 2, metric);
}

PointCloud gen_noisy_sphere(Index n, Real noise, std::uint64_t seed, MetricKind metric) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    Rng rng(seed);
    std::vector<Real> coords;
    coords.reserve(static_cast<std::size_t>(n) * 3);
    for (Index i = 0; i < n; ++i) {
        Real x = rng.gaussian(), y = rng.gaussian(), z = rng.gaussian();
        Real norm = std::sqrt(x * x + y * y + z * z);
        if (norm <= 1e-12) {
            x = 1.0;
            y = z = 0.0;
            norm = 1.0;
        }
        Real r = 1.0 + noise * rng.gaussian();
        coords.push_back(r * x / norm);
        coords.push_back(r * y / norm);
        coords.push_back(r * z / norm);
    }
    return PointCloud(std::move(coords), 3, metric);
}

PointCloud gen_clustered(Index n, int clusters, Real spread, std::uint64_t seed,
                         MetricKind metric) {
    if (n < 1 || clusters < 1) throw std::invalid_argument("need n >= 1 and clusters >= 1");
    Rng rng(seed);
    std::vector<Point> centers(clusters, Point(2));
    for (auto& c : centers) {
        c[0] = rng.uniform();
        c[1] = rng.uniform();
    }
    std::vector<Real> coords;
    coords.reserve(static_cast<std::size_t>(n) * 2);
    for (Index i = 0; i < n; ++i) {
        const Point& c = centers[static_cast<int>(rng.next_u64() % clusters)];
        coords.push_back(c[0] + spread * rng.gaussian());
        coords.push_back(c[1] + spread * rng.gaussian());
    }
    return PointCloud(std::move(coords), 2, metric);
}

}  // namespace sparse_nerve
