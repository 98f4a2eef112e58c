#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sparse_nerve/metric.hpp"
#include "test_util.hpp"

using namespace sparse_nerve;
using test::cloud_2d;

TEST_CASE("distance basics") {
    auto c2 = cloud_2d({{0, 0}, {3, 4}}, MetricKind::L2);
    CHECK(distance(c2, 0, 1) == doctest::Approx(5.0));

    auto ci = cloud_2d({{0, 0}, {3, 4}}, MetricKind::Linf);
    CHECK(distance(ci, 0, 1) == doctest::Approx(4.0));

    auto c1 = cloud_2d({{1, 1}, {1, 1}}, MetricKind::L1);
    CHECK(distance(c1, 0, 1) == 0.0);

    CHECK(distance(c2, 1, 0) == distance(c2, 0, 1));
    CHECK_THROWS_AS(distance(c2, 0, 5), std::out_of_range);
}

TEST_CASE("ball membership and the empty sentinel") {
    auto c = cloud_2d({{0, 0}});
    Point on_boundary{1.0, 0.0};
    Point outside{1.0000001, 0.0};
    CHECK(ball_contains(c, 0, 1.0, on_boundary));
    CHECK_FALSE(ball_contains(c, 0, 1.0, outside));
    CHECK_FALSE(ball_contains(c, 0, kEmptyBallRadius, on_boundary));
    Point center{0.0, 0.0};
    CHECK_FALSE(ball_contains(c, 0, kEmptyBallRadius, center));
}

TEST_CASE("triangle inequality on random triples") {
    Rng rng(11);
    for (MetricKind m : {MetricKind::L2, MetricKind::L1, MetricKind::Linf}) {
        auto cloud = gen_uniform_box(40, 3, 99, m);
        for (int trial = 0; trial < 500; ++trial) {
            Index i = rng.next_u64() % 40, j = rng.next_u64() % 40, k = rng.next_u64() % 40;
            CHECK(cloud.distance(i, k) <= cloud.distance(i, j) + cloud.distance(j, k) + 1e-12);
        }
    }
}

TEST_CASE("norm convexity along segments") {
    Rng rng(12);
    for (MetricKind m : {MetricKind::L2, MetricKind::L1, MetricKind::Linf}) {
        for (int trial = 0; trial < 400; ++trial) {
            Point a{rng.uniform(-2, 2), rng.uniform(-2, 2)};
            Point b{rng.uniform(-2, 2), rng.uniform(-2, 2)};
            Point c{rng.uniform(-2, 2), rng.uniform(-2, 2)};
            Real t = rng.uniform();
            Point mix{(1 - t) * a[0] + t * b[0], (1 - t) * a[1] + t * b[1]};
            Real lhs = metric_distance(mix, c, m);
            Real rhs = (1 - t) * metric_distance(a, c, m) + t * metric_distance(b, c, m);
            CHECK(lhs <= rhs + 1e-12);
        }
    }
}

TEST_CASE("point file parsing") {
    auto cloud = parse_points("# header\n1 2\n3 4\n\n5 6\n", MetricKind::L2);
    CHECK(cloud.size() == 3);
    CHECK(cloud.dim() == 2);
    CHECK(cloud.point(2)[0] == 5.0);

    CHECK_THROWS_AS(parse_points("1 2\n3\n", MetricKind::L2), std::invalid_argument);
    CHECK_THROWS_AS(parse_points("1 x\n", MetricKind::L2), std::invalid_argument);
    CHECK_THROWS_AS(parse_points("# only comments\n", MetricKind::L2), std::invalid_argument);
    CHECK_THROWS_AS(parse_points("1 nan\n", MetricKind::L2), std::invalid_argument);

    auto back = parse_points(format_points(cloud), MetricKind::L2);
    CHECK(back.size() == cloud.size());
    for (Index i = 0; i < cloud.size(); ++i)
        for (int k = 0; k < cloud.dim(); ++k) CHECK(back.point(i)[k] == cloud.point(i)[k]);
}

TEST_CASE("metric names round-trip") {
    for (MetricKind m : {MetricKind::L2, MetricKind::L1, MetricKind::Linf})
        CHECK(metric_from_name(metric_name(m)) == m);
    CHECK_THROWS_AS(metric_from_name("l3"), std::invalid_argument);
}

TEST_CASE("construction and query validation") {
    CHECK_THROWS_AS(PointCloud({}, 2, MetricKind::L2), std::invalid_argument);
    CHECK_THROWS_AS(PointCloud({1.0, 2.0, 3.0}, 2, MetricKind::L2), std::invalid_argument);
    CHECK_THROWS_AS(PointCloud({1.0, 2.0}, 0, MetricKind::L2), std::invalid_argument);
    Real nan = std::numeric_limits<Real>::quiet_NaN();
    CHECK_THROWS_AS(PointCloud({1.0, nan}, 2, MetricKind::L2), std::invalid_argument);

    auto c = cloud_2d({{0, 0}, {1, 1}});
    Point wrong_dim{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(c.distance_to(0, wrong_dim), std::invalid_argument);
    CHECK(c.diameter() == doctest::Approx(std::sqrt(2.0)));
}
