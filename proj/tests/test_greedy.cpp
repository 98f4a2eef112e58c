#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "sparse_nerve/greedy.hpp"
#include "test_util.hpp"

using namespace sparse_nerve;
using test::cloud_1d;

TEST_CASE("three points on a line") {
    // points 0, 1, 10 at original indices 0, 1, 2
    auto cloud = cloud_1d({0.0, 1.0, 10.0});
    auto gp = greedy_permutation(cloud, 0);

    CHECK(gp.order == std::vector<Index>{0, 2, 1});
    CHECK(std::isinf(gp.lambda[0]));
    CHECK(gp.lambda[1] == 10.0);
    CHECK(gp.lambda[2] == 1.0);
    CHECK(gp.pred_rank[0] == -1);
    CHECK(gp.order[gp.pred_rank[1]] == 0);
    CHECK(gp.order[gp.pred_rank[2]] == 0);
}

TEST_CASE("single point") {
    auto cloud = cloud_1d({42.0});
    auto gp = greedy_permutation(cloud, 0);
    CHECK(gp.order == std::vector<Index>{0});
    CHECK(std::isinf(gp.lambda[0]));
}

TEST_CASE("coincident points give a zero insertion radius") {
    auto cloud = cloud_1d({5.0, 5.0});
    auto gp = greedy_permutation(cloud, 0);
    CHECK(gp.lambda[1] == 0.0);
}

TEST_CASE("duplicates are placed last") {
    auto cloud = cloud_1d({0.0, 0.0, 7.0, 3.0});
    auto gp = greedy_permutation(cloud, 0);
    CHECK(gp.order.back() == 1);
    CHECK(gp.lambda.back() == 0.0);
}

TEST_CASE("net property holds for every prefix") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        auto cloud = gen_uniform_box(60, 2, seed, MetricKind::L2);
        auto gp = greedy_permutation(cloud, 0);
        for (Index i = 1; i <= cloud.size(); ++i) CHECK(verify_net_property(gp, cloud, i));
    }
}

TEST_CASE("net property detects a non-greedy order") {
    auto cloud = cloud_1d({0.0, 1.0, 10.0});
    GreedyPermutation fake;
    fake.order = {0, 1, 2};
    fake.lambda = {std::numeric_limits<Real>::infinity(), 1.0, 9.0};
    fake.pred_rank = {-1, 0, 0};
    CHECK_FALSE(verify_net_property(fake, cloud, 2));  // 10 is 9 away from {0,1}

    auto gp = greedy_permutation(cloud, 0);
    CHECK(verify_net_property(gp, cloud, gp.size()));  // i = n on a genuine permutation
}

TEST_CASE("stored lambda equals brute-force recomputation") {
    auto cloud = gen_uniform_box(50, 2, 7, MetricKind::Linf);
    auto gp = greedy_permutation(cloud, 3);
    for (Index i = 1; i < gp.size(); ++i) {
        Real best = std::numeric_limits<Real>::infinity();
        for (Index a = 0; a < i; ++a)
            best = std::min(best, cloud.distance(gp.order[i], gp.order[a]));
        CHECK(gp.lambda[i] == best);
        CHECK(cloud.distance(gp.order[i], gp.order[gp.pred_rank[i]]) == gp.lambda[i]);
    }
}

TEST_CASE("lambda is non-increasing") {
    auto cloud = gen_noisy_circle(80, 0.1, 5, MetricKind::L2);
    auto gp = greedy_permutation(cloud);
    for (Index i = 2; i < gp.size(); ++i) CHECK(gp.lambda[i] <= gp.lambda[i - 1]);
}

TEST_CASE("farthest ties go to the lowest original index") {
    // symmetric pair: 1 and -1 are both farthest from 0
    auto cloud = cloud_1d({0.0, 1.0, -1.0});
    auto gp = greedy_permutation(cloud, 0);
    CHECK(gp.order[1] == 1);
}

TEST_CASE("permutation text format") {
    auto cloud = cloud_1d({0.0, 1.0, 10.0});
    auto gp = greedy_permutation(cloud, 0);
    CHECK(format_permutation(gp) == "0 inf -\n2 10 0\n1 1 0\n");
}
