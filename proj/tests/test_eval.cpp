#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "probclust/errors.hpp"
#include "probclust/eval.hpp"
#include "support/oracles.hpp"

using namespace probclust;

TEST(Ari, Examples) {
    const std::vector<int> a = {0, 0, 1, 1, 2, 2};
    EXPECT_DOUBLE_EQ(adjusted_rand_index(a, a), 1.0);
    EXPECT_DOUBLE_EQ(adjusted_rand_index(std::vector<int>{0, 0, 0, 0}, std::vector<int>{0, 0, 1, 1}),
                     0.0);
    EXPECT_DOUBLE_EQ(adjusted_rand_index(std::vector<int>{0, 0, 1, 1}, std::vector<int>{1, 1, 0, 0}),
                     1.0);
    EXPECT_THROW(adjusted_rand_index(std::vector<int>{0, 1}, std::vector<int>{0}), Error);
}

TEST(Ari, MatchesPairCountingOracleAndIsPermutationInvariant) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        const int ka = 1 + t % 5;
        const int kb = 1 + (t / 5) % 4;
        std::uniform_int_distribution<int> la(0, ka - 1);
        std::uniform_int_distribution<int> lb(0, kb - 1);
        std::vector<int> a(60 + t), b(60 + t);
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = la(rng);
            b[i] = (t % 3 == 0) ? a[i] % kb : lb(rng);
        }
        const double got = adjusted_rand_index(a, b);
        EXPECT_NEAR(got, oracle::ari(a, b), 1e-12);
        std::vector<int> relabeled = a;
        for (int& x : relabeled) {
            x = 100 - 7 * x;
        }
        EXPECT_NEAR(adjusted_rand_index(relabeled, b), got, 1e-12);
        EXPECT_NEAR(adjusted_rand_index(b, a), got, 1e-12);
    }
}

TEST(Purity, Examples) {
    const std::vector<int> t = {0, 0, 1, 1};
    EXPECT_DOUBLE_EQ(purity(t, t), 1.0);
    EXPECT_DOUBLE_EQ(purity(std::vector<int>{0, 1, 2, 3}, t), 1.0);
    EXPECT_DOUBLE_EQ(purity(std::vector<int>{0, 0, 0, 0}, t), 0.5);
    EXPECT_DOUBLE_EQ(purity(std::vector<int>{5, 5, 5, 5}, t), 0.5);
    EXPECT_THROW(purity(std::vector<int>{}, std::vector<int>{}), Error);
}

TEST(KMeans, Examples) {
    const std::vector<FeatVec> pts = {{0}, {1}, {2}, {10}, {11}, {12}};
    const auto one = kmeans_baseline(pts, 1, 0);
    EXPECT_EQ(one.labels, std::vector<int>(6, 0));

    const auto all = kmeans_baseline(pts, 6, 0);
    std::set<int> distinct(all.labels.begin(), all.labels.end());
    EXPECT_EQ(distinct.size(), 6u);

    const auto two = kmeans_baseline(pts, 2, 4);
    EXPECT_DOUBLE_EQ(adjusted_rand_index(two.labels, std::vector<int>{0, 0, 0, 1, 1, 1}), 1.0);

    EXPECT_THROW(kmeans_baseline(pts, 0, 0), Error);
    EXPECT_THROW(kmeans_baseline(pts, 7, 0), Error);
}

TEST(KMeans, CostNeverIncreasesAndIsDeterministic) {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g(0, 3);
    std::vector<FeatVec> pts(500, FeatVec(3));
    for (auto& p : pts) {
        for (auto& x : p) {
            x = g(rng);
        }
    }
    const auto r = kmeans_baseline(pts, 7, 2);
    ASSERT_FALSE(r.cost_history.empty());
    for (std::size_t i = 1; i < r.cost_history.size(); ++i) {
        EXPECT_LE(r.cost_history[i], r.cost_history[i - 1] + 1e-9);
    }
    const auto again = kmeans_baseline(pts, 7, 2);
    EXPECT_EQ(r.labels, again.labels);
    EXPECT_EQ(r.centers, again.centers);
    double cost = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        cost += oracle::sq_dist(pts[i], r.centers[r.labels[i]]);
    }
    EXPECT_NEAR(cost, r.cost_history.back(), 1e-6 * cost);
}

TEST(Evaluate, ReportsCountsAndScores) {
    ClusterModel m;
    m.dim = 1;
    m.regions = {Region{3, {0, 1}, ProbSpace{{0}, {0}, 2}}, Region{8, {2, 3}, ProbSpace{{5}, {0}, 2}}};
    EXPECT_EQ(region_labels(m, 4), (std::vector<int>{3, 3, 8, 8}));
    const auto r = evaluate(m, std::vector<int>{1, 1, 0, 0});
    EXPECT_EQ(r.cluster_count, 2u);
    EXPECT_DOUBLE_EQ(r.ari, 1.0);
    EXPECT_DOUBLE_EQ(r.purity, 1.0);
}

TEST(DimensionSweep, RowsAreBoundedAndDeterministic) {
    const std::vector<std::size_t> dims = {2, 6};
    SweepTemplate t;
    t.points_per_component = 200;
    t.seed = 9;
    const auto rows = dimension_sweep(dims, t, EngineConfig{});
    ASSERT_EQ(rows.size(), 2u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].dim, dims[i]);
        EXPECT_GE(rows[i].zero_fraction, 0.0);
        EXPECT_LE(rows[i].zero_fraction, 1.0);
        EXPECT_GE(rows[i].cluster_count, 1u);
    }
    EXPECT_GT(rows[0].min_between_distance, 0.0);
    const auto again = dimension_sweep(dims, t, EngineConfig{});
    EXPECT_EQ(format_sweep_csv(rows), format_sweep_csv(again));
    EXPECT_EQ(format_sweep_csv(rows).rfind("dim,cluster_count,zero_fraction", 0), 0u);
    EXPECT_FALSE(format_sweep_summary(rows).empty());
    EXPECT_THROW(dimension_sweep(std::vector<std::size_t>{}, t, EngineConfig{}), Error);
}
