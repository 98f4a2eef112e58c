#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sparse_nerve/sparse_balls.hpp"
#include "test_util.hpp"

using namespace sparse_nerve;
using test::cloud_1d;
using test::sample_in_ball;

namespace {

constexpr Real kInf = std::numeric_limits<Real>::infinity();

struct Setup {
    PointCloud cloud;
    GreedyPermutation gp;
    SparseParams params;

    Setup(PointCloud c, Real eps)
        : cloud(std::move(c)), gp(greedy_permutation(cloud, 0)), params(cloud, gp, eps) {}
};

}  // namespace

TEST_CASE("epsilon validation") {
    auto cloud = cloud_1d({0.0, 1.0});
    auto gp = greedy_permutation(cloud, 0);
    CHECK_THROWS_AS(SparseParams(cloud, gp, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SparseParams(cloud, gp, -0.5), std::invalid_argument);
    CHECK_NOTHROW(SparseParams(cloud, gp, 0.5));
}

TEST_CASE("radius schedule") {
    Setup s(cloud_1d({0.0, 10.0, 1.0}), 1.0);
    // rank 1 is the point 10 with lambda 10; rank 2 is the point 1 with lambda 1
    CHECK(radius(s.params, 0, 123.0) == 123.0);      // infinite lambda never caps
    CHECK(radius(s.params, 2, 1.5) == 1.5);          // below the cap of 2
    CHECK(radius(s.params, 2, 3.0) == 2.0);          // capped at lambda (1+eps)/eps = 2
    CHECK(radius(s.params, 2, 2.0) == 2.0);          // boundary stays linear
}

TEST_CASE("removal time") {
    Setup a(cloud_1d({0.0, 1.0}), 1.0);
    CHECK(removal_time(a.params, 1) == 4.0);  // 1 * (1+1)^2 / 1
    CHECK(removal_time(a.params, 0) == kInf);

    Setup b(cloud_1d({0.0, 2.0}), 0.5);
    CHECK(removal_time(b.params, 1) == doctest::Approx(9.0));  // 2 * 1.5^2 / 0.5
}

TEST_CASE("truncated ball radius") {
    Setup s(cloud_1d({0.0, 1.0}), 1.0);
    CHECK(ball_radius_or_empty(s.params, 1, 4.0) == 2.0);  // alive exactly at removal
    CHECK(ball_radius_or_empty(s.params, 1, 4.01) == kEmptyBallRadius);
    CHECK(ball_radius_or_empty(s.params, 0, 100.0) == 100.0);
}

TEST_CASE("cone membership") {
    Setup s(cloud_1d({0.0, 1.0}), 1.0);
    ConePoint at_center{{1.0}, 0.0};
    CHECK(cone_contains(s.params, 1, at_center, 0.0));
    CHECK(cone_contains(s.params, 1, at_center, 5.0));

    ConePoint above{{1.0}, 3.0};
    CHECK_FALSE(cone_contains(s.params, 1, above, 2.0));  // delta exceeds alpha

    // at distance 3 from the center, scale 3: r_1(3) = 2 < 3
    ConePoint far{{4.0}, 3.0};
    CHECK_FALSE(cone_contains(s.params, 1, far, 5.0));
}

TEST_CASE("duplicate points collapse to zero schedules") {
    Setup s(cloud_1d({0.0, 4.0, 4.0}), 0.5);
    REQUIRE(s.params.lambda(2) == 0.0);
    CHECK(removal_time(s.params, 2) == 0.0);
    CHECK(radius(s.params, 2, 0.0) == 0.0);
    CHECK(ball_radius_or_empty(s.params, 2, 0.5) == kEmptyBallRadius);
    // the witness for the duplicate is a coincident point
    GreedyRank w = covering_witness(s.params, 2, 0.0);
    CHECK(s.params.rank_distance(2, w) == 0.0);
    CHECK_THROWS_AS(covering_witness(s.params, 2, -1.0), std::invalid_argument);
}

TEST_CASE("covering witness cases") {
    Setup s(cloud_1d({0.0, 10.0, 1.0}), 1.0);
    // rank 2 (the point 1) has removal time 4
    CHECK(covering_witness(s.params, 2, 3.9) == 2);
    // beta = 8: prefix with lambda >= 4 holds ranks {0, 1}; nearest to 1 is 0
    CHECK(covering_witness(s.params, 2, 8.0) == 0);

    Setup single(cloud_1d({3.0}), 0.5);
    CHECK(covering_witness(single.params, 0, 1e9) == 0);
}

TEST_CASE("perturbed offsets membership") {
    Setup s(cloud_1d({0.0, 10.0, 1.0}), 0.5);
    for (Index i = 0; i < 3; ++i) {
        Point p{s.cloud.point(i)[0]};
        CHECK(perturbed_offsets_contains(s.params, p, 0.0));
    }
    Point far{100.0};
    CHECK_FALSE(perturbed_offsets_contains(s.params, far, 5.0));

    // both union forms agree on random queries
    Rng rng(17);
    for (int t = 0; t < 2000; ++t) {
        Point x{rng.uniform(-5.0, 15.0)};
        Real alpha = rng.uniform(0.0, 12.0);
        CHECK(perturbed_offsets_contains(s.params, x, alpha) ==
              perturbed_offsets_contains_rform(s.params, x, alpha));
    }
}

TEST_CASE("radius schedule is monotone, concave, and bounded") {
    Setup s(cloud_1d({0.0, 10.0, 1.0, 4.0, 6.5}), 0.7);
    Rng rng(3);
    for (int t = 0; t < 2000; ++t) {
        GreedyRank i = rng.next_u64() % 5;
        Real a = rng.uniform(0.0, 30.0), b = rng.uniform(0.0, 30.0);
        if (a > b) std::swap(a, b);
        Real lam = s.params.lambda(i);
        CHECK(radius(s.params, i, a) <= radius(s.params, i, b));         // monotone
        CHECK(radius(s.params, i, a) <= a);                              // below identity
        if (std::isfinite(lam)) CHECK(radius(s.params, i, b) <= lam * 1.7 / 0.7 + 1e-12);
        Real t01 = rng.uniform();
        Real mid = (1 - t01) * a + t01 * b;  // concavity: chord below curve
        CHECK((1 - t01) * radius(s.params, i, a) + t01 * radius(s.params, i, b) <=
              radius(s.params, i, mid) + 1e-12);
    }
}

namespace {

// Sampled containment with float slack: the covering chains are exact over the
// reals; boundary samples may sit an ulp outside.
bool in_truncated_ball(const SparseParams& params, GreedyRank i, const Point& x, Real alpha) {
    Real r = ball_radius_or_empty(params, i, alpha);
    if (r == kEmptyBallRadius) return false;
    return params.rank_distance_to(i, x) <= r * (1.0 + 1e-12) + 1e-12;
}

void covering_lemma_trial(MetricKind metric, Real eps, std::uint64_t seed, int trials) {
    auto cloud = gen_uniform_box(25, 2, seed, metric);
    auto gp = greedy_permutation(cloud, 0);
    SparseParams params(cloud, gp, eps);
    Rng rng(seed * 77 + 1);

    int done = 0;
    while (done < trials) {
        GreedyRank j = rng.next_u64() % cloud.size();
        Real spread = 3.0;
        Real alpha = rng.uniform(0.0, spread);
        // clause 1: x in b_j(alpha), beta >= alpha
        Real r = ball_radius_or_empty(params, j, alpha);
        if (r != kEmptyBallRadius) {
            Real beta = alpha + rng.uniform(0.0, spread);
            Point x = sample_in_ball(rng, params.rank_point(j), r, metric);
            GreedyRank w = covering_witness(params, j, beta);
            CHECK(in_truncated_ball(params, w, x, beta));
        }
        // clause 2: x in ball(p_j, alpha), beta >= (1+eps) alpha
        Real beta2 = (1.0 + eps) * alpha * (1.0 + rng.uniform());
        Point x2 = sample_in_ball(rng, params.rank_point(j), alpha, metric);
        GreedyRank w2 = covering_witness(params, j, beta2);
        CHECK(in_truncated_ball(params, w2, x2, beta2));
        ++done;
    }
}

}  // namespace

TEST_CASE("covering lemma, sampled") {
    covering_lemma_trial(MetricKind::L2, 0.5, 100, 400);
    covering_lemma_trial(MetricKind::L1, 0.9, 101, 400);
    covering_lemma_trial(MetricKind::Linf, 0.3, 102, 400);
}

TEST_CASE("corollary sandwich, sampled") {
    auto cloud = gen_noisy_circle(30, 0.2, 55, MetricKind::L2);
    auto gp = greedy_permutation(cloud, 0);
    SparseParams params(cloud, gp, 0.5);
    Rng rng(56);
    for (int t = 0; t < 3000; ++t) {
        Point x{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        Real alpha = rng.uniform(0.0, 3.0);
        // perturbed offsets sit inside the offsets
        if (perturbed_offsets_contains(params, x, alpha)) {
            Real best = kInf;
            for (Index i = 0; i < cloud.size(); ++i)
                best = std::min(best, cloud.distance_to(i, x));
            CHECK(best <= alpha * (1 + 1e-12));
        }
        // offsets sit inside the perturbed offsets one epsilon-step up
        Real best = kInf;
        for (Index i = 0; i < cloud.size(); ++i) best = std::min(best, cloud.distance_to(i, x));
        if (best <= alpha)
            CHECK(perturbed_offsets_contains(params, x, (1.0 + 0.5) * alpha * (1 + 1e-12)));
    }
}

TEST_CASE("cone convexity, sampled") {
    for (MetricKind metric : {MetricKind::L2, MetricKind::L1, MetricKind::Linf}) {
        auto cloud = gen_uniform_box(20, 2, 200, metric);
        auto gp = greedy_permutation(cloud, 0);
        SparseParams params(cloud, gp, 0.6);
        Rng rng(201);
        int done = 0;
        while (done < 1500) {
            GreedyRank i = rng.next_u64() % cloud.size();
            Real alpha = rng.uniform(0.0, 4.0);
            Real cap_time = std::min(alpha, removal_time(params, i));
            Real da = rng.uniform(0.0, cap_time), db = rng.uniform(0.0, cap_time);
            Point a = sample_in_ball(rng, params.rank_point(i), radius(params, i, da), metric);
            Point b = sample_in_ball(rng, params.rank_point(i), radius(params, i, db), metric);

            Real t = rng.uniform();
            ConePoint mix;
            mix.delta = (1 - t) * da + t * db;
            mix.x.resize(2);
            for (int k = 0; k < 2; ++k) mix.x[k] = (1 - t) * a[k] + t * b[k];
            // membership with an ulp of slack: the proof's inequalities are
            // exact over the reals
            Real r = ball_radius_or_empty(params, i, mix.delta);
            REQUIRE(r != kEmptyBallRadius);
            CHECK(params.rank_distance_to(i, mix.x) <= r * (1 + 1e-12) + 1e-12);
            ++done;
        }
    }
}
