#pragma once

#include <cstdint>

#include "sparse_nerve/metric.hpp"

namespace sparse_nerve {

/// Deterministic cross-platform RNG (splitmix64 core). Standard library
/// distributions are implementation-defined, so sample clouds roll their own.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    /// Uniform in [0, 1).
    Real uniform();
    Real uniform(Real lo, Real hi);
    /// Standard normal via Box-Muller.
    Real gaussian();

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    Real spare_ = 0.0;
};

PointCloud gen_uniform_box(Index n, int dim, std::uint64_t seed, MetricKind metric);
/// Unit circle with radial Gaussian noise.
PointCloud gen_noisy_circle(Index n, Real noise, std::uint64_t seed, MetricKind metric);
/// Unit 2-sphere in 3-D with radial Gaussian noise.
PointCloud gen_noisy_sphere(Index n, Real noise, std::uint64_t seed, MetricKind metric);
/// Gaussian blobs around k centers in the unit box; guarantees some tight
/// pairs, which keeps the smallest insertion radii well below the spread.
PointCloud gen_clustered(Index n, int clusters, Real spread, std::uint64_t seed, MetricKind metric);

}  // namespace sparse_nerve
