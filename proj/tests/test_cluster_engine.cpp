#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "probclust/cluster_engine.hpp"
#include "probclust/errors.hpp"
#include "probclust/eval.hpp"
#include "support/oracles.hpp"

using namespace probclust;

namespace {

Region fitted(int id, std::vector<std::size_t> members, FeatVec c, std::vector<double> s) {
    const std::size_t n = members.size();
    return Region{id, std::move(members), ProbSpace{std::move(c), std::move(s), n}};
}

void expect_partition(const std::vector<Region>& regions, std::size_t n) {
    std::vector<int> seen(n, 0);
    for (const auto& r : regions) {
        EXPECT_FALSE(r.members.empty());
        EXPECT_TRUE(std::is_sorted(r.members.begin(), r.members.end()));
        for (std::size_t m : r.members) {
            ASSERT_LT(m, n);
            ++seen[m];
        }
    }
    for (int s : seen) {
        EXPECT_EQ(s, 1);
    }
}

std::vector<FeatVec> random_cloud(std::size_t n, std::size_t d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0, 1);
    std::uniform_int_distribution<int> blob(0, 2);
    std::vector<FeatVec> pts(n, FeatVec(d));
    for (auto& p : pts) {
        const double shift = 8.0 * blob(rng);
        for (auto& x : p) {
            x = shift + g(rng);
        }
    }
    return pts;
}

}  // namespace

TEST(InitialPartition, Examples) {
    const std::vector<FeatVec> pts = {{3}, {1}, {4}, {2}};
    const auto one = initial_partition(pts, 1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].members, (std::vector<std::size_t>{0, 1, 2, 3}));

    const auto two = initial_partition(pts, 2);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[0].members, (std::vector<std::size_t>{1, 3}));
    EXPECT_EQ(two[1].members, (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(two[0].id, 0);
    EXPECT_EQ(two[1].id, 1);
    EXPECT_FALSE(two[0].space.has_value());

    const auto cloud = random_cloud(1000, 2, 1);
    const auto three = initial_partition(cloud, 3);
    EXPECT_EQ(three[0].members.size(), 334u);
    EXPECT_EQ(three[1].members.size(), 333u);
    EXPECT_EQ(three[2].members.size(), 333u);
    expect_partition(three, 1000);
}

TEST(InitialPartition, NormTiesBreakByIndex) {
    const std::vector<FeatVec> pts = {{-1}, {1}, {-1}, {1}};
    const auto two = initial_partition(pts, 2);
    EXPECT_EQ(two[0].members, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(two[1].members, (std::vector<std::size_t>{2, 3}));
}

TEST(InitialPartition, Errors) {
    const std::vector<FeatVec> pts = {{1}, {2}};
    try {
        initial_partition(pts, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidK);
    }
    EXPECT_THROW(initial_partition(pts, 0), Error);
    EXPECT_THROW(initial_partition(std::vector<FeatVec>{}, 1), Error);
}

TEST(BoundaryExchange, PointMovesToNearerSpace) {
    const std::vector<FeatVec> pts = {{0}, {2}, {10}};
    const Region a = fitted(0, {0}, {0}, {0});
    const Region b = fitted(1, {1, 2}, {10}, {0});
    const auto ex = boundary_exchange(pts, a, b, SdlConfig{});
    ASSERT_TRUE(ex.a && ex.b);
    EXPECT_EQ(ex.a->members, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(ex.b->members, (std::vector<std::size_t>{2}));
    EXPECT_EQ(ex.moved, 1u);
    EXPECT_EQ(ex.a->space->count, 2u);
}

TEST(BoundaryExchange, TiesGoToSecondRegion) {
    const std::vector<FeatVec> pts = {{0}, {5}, {10}};
    const Region a = fitted(0, {0, 1}, {0}, {0});
    const Region b = fitted(1, {2}, {10}, {0});
    const auto ex = boundary_exchange(pts, a, b, SdlConfig{});
    EXPECT_EQ(ex.a->members, (std::vector<std::size_t>{0}));
    EXPECT_EQ(ex.b->members, (std::vector<std::size_t>{1, 2}));
}

TEST(BoundaryExchange, FixedPointKeepsSpaces) {
    const std::vector<FeatVec> pts = {{0}, {1}, {10}, {11}};
    const Region a = fitted(3, {0, 1}, {0.5}, {0.5});
    const Region b = fitted(7, {2, 3}, {10.5}, {0.5});
    const auto ex = boundary_exchange(pts, a, b, SdlConfig{});
    EXPECT_EQ(ex.moved, 0u);
    EXPECT_EQ(*ex.a, a);
    EXPECT_EQ(*ex.b, b);
}

TEST(BoundaryExchange, EmptySideIsDissolved) {
    const std::vector<FeatVec> pts = {{0}, {1}};
    const Region a = fitted(0, {0}, {50}, {0});
    const Region b = fitted(1, {1}, {0}, {2});
    const auto ex = boundary_exchange(pts, a, b, SdlConfig{});
    EXPECT_FALSE(ex.a.has_value());
    ASSERT_TRUE(ex.b.has_value());
    EXPECT_EQ(ex.b->members, (std::vector<std::size_t>{0, 1}));
}

TEST(BoundaryExchange, NeedsFittedRegions) {
    const std::vector<FeatVec> pts = {{0}, {1}};
    const Region a{0, {0}, std::nullopt};
    const Region b = fitted(1, {1}, {1}, {0});
    try {
        boundary_exchange(pts, a, b, SdlConfig{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotFitted);
    }
}

TEST(BoundaryExchange, NeverIncreasesDistanceToOwner) {
    const auto pts = random_cloud(400, 3, 5);
    auto regions = initial_partition(pts, 2);
    for (auto& r : regions) {
        fit_region(pts, r, SdlConfig{});
    }
    auto cost = [&](const Region& r, const ProbSpace& s) {
        double c = 0;
        for (std::size_t m : r.members) {
            c += point_space_distance(pts[m], s);
        }
        return c;
    };
    const ProbSpace sa = *regions[0].space;
    const ProbSpace sb = *regions[1].space;
    const double before = cost(regions[0], sa) + cost(regions[1], sb);
    const auto ex = boundary_exchange(pts, regions[0], regions[1], SdlConfig{});
    double after = 0;
    if (ex.a) after += cost(*ex.a, sa);
    if (ex.b) after += cost(*ex.b, sb);
    EXPECT_LE(after, before + 1e-9);
}

TEST(SplitAll, Examples) {
    const std::vector<FeatVec> pts = {{4}, {1}, {3}, {2}, {9}};
    const std::vector<Region> in = {fitted(0, {0, 1, 2, 3}, {2.5}, {1}), fitted(5, {4}, {9}, {0})};
    int next_id = 6;
    const auto out = split_all(pts, in, next_id);
    ASSERT_EQ(out.size(), 3u);
    EXPECT_EQ(out[0].id, 0);
    EXPECT_EQ(out[0].members, (std::vector<std::size_t>{1, 3}));
    EXPECT_EQ(out[1].id, 6);
    EXPECT_EQ(out[1].members, (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(out[2], in[1]);
    EXPECT_EQ(next_id, 7);
    expect_partition(out, 5);
}

TEST(SplitAll, OddSizesGiveLowHalfTheExtra) {
    const std::vector<FeatVec> pts = {{1}, {2}, {3}};
    int next_id = 1;
    const auto out = split_all(pts, std::vector<Region>{fitted(0, {0, 1, 2}, {2}, {1})}, next_id);
    EXPECT_EQ(out[0].members.size(), 2u);
    EXPECT_EQ(out[1].members.size(), 1u);
}

TEST(MergeOverlapping, Examples) {
    const std::vector<FeatVec> pts = {{-1}, {1}, {2}, {4}, {100}};
    const std::vector<Region> apart = {fitted(0, {0, 1}, {0}, {1}), fitted(1, {4}, {100}, {0})};
    const auto same = merge_overlapping(pts, apart, SdlConfig{});
    EXPECT_EQ(same.regions, apart);
    EXPECT_TRUE(same.events.empty());

    const std::vector<Region> touching = {fitted(4, {0, 1}, {0}, {2}), fitted(2, {2, 3}, {3}, {2})};
    const auto one = merge_overlapping(pts, touching, SdlConfig{});
    ASSERT_EQ(one.regions.size(), 1u);
    EXPECT_EQ(one.regions[0].id, 2);
    EXPECT_EQ(one.regions[0].members, (std::vector<std::size_t>{0, 1, 2, 3}));
    ASSERT_EQ(one.events.size(), 1u);
    EXPECT_EQ(one.events[0], (MergeEvent{2, 4, 0.0}));
}

TEST(MergeOverlapping, ChainsMergeTransitively) {
    const std::vector<FeatVec> pts = {{0}, {3}, {6}};
    const std::vector<Region> chain = {fitted(0, {0}, {0}, {1}), fitted(1, {1}, {3}, {2}),
                                       fitted(2, {2}, {6}, {1})};
    // A-C are 6 apart with scales summing to 2: only the chain joins them.
    ASSERT_GT(space_space_distance(*chain[0].space, *chain[2].space), 0.0);
    const auto m = merge_overlapping(pts, chain, SdlConfig{});
    ASSERT_EQ(m.regions.size(), 1u);
    EXPECT_EQ(m.regions[0].id, 0);
    EXPECT_EQ(m.events.size(), 2u);
}

TEST(MergeOverlapping, Idempotent) {
    const auto pts = random_cloud(600, 2, 8);
    auto regions = initial_partition(pts, 8);
    for (auto& r : regions) {
        fit_region(pts, r, SdlConfig{});
    }
    const auto once = merge_overlapping(pts, regions, SdlConfig{});
    const auto twice = merge_overlapping(pts, once.regions, SdlConfig{});
    EXPECT_EQ(once.regions, twice.regions);
    EXPECT_TRUE(twice.events.empty());
    expect_partition(once.regions, pts.size());
}

TEST(ReassignNearest, MovesStrandedPointsAndDropsEmpties) {
    const std::vector<FeatVec> pts = {{0}, {1}, {10}, {11}};
    const std::vector<Region> in = {fitted(0, {0, 2}, {0.5}, {0.5}), fitted(1, {1, 3}, {10.5}, {0.5}),
                                    fitted(2, {}, {50}, {0})};
    const auto out = reassign_nearest(pts, in, SdlConfig{});
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].members, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(out[1].members, (std::vector<std::size_t>{2, 3}));
}

TEST(Cluster, IdenticalPointsGiveOneCluster) {
    const std::vector<FeatVec> pts(20, FeatVec{1.5, -2.0});
    const auto m = cluster(pts, EngineConfig{});
    ASSERT_EQ(m.regions.size(), 1u);
    EXPECT_EQ(m.regions[0].space->center, (FeatVec{1.5, -2.0}));
    EXPECT_EQ(m.regions[0].space->scale, (std::vector<double>{0.0, 0.0}));
}

TEST(Cluster, TwoSeparatedBlobsWithTarget) {
    oracle::Blobs b;
    oracle::append_blob(b.points, b.labels, {0, 0}, 1.0, 1000, 31, 0);
    oracle::append_blob(b.points, b.labels, {20, 0}, 1.0, 1000, 32, 1);
    EngineConfig cfg;
    cfg.target_k = 2;
    const auto m = cluster(b.points, cfg);
    ASSERT_EQ(m.regions.size(), 2u);
    expect_partition(m.regions, b.points.size());
    EXPECT_GE(evaluate(m, b.labels).purity, 0.99);
    const std::vector<FeatVec> truth = {{0, 0}, {20, 0}};
    for (const auto& r : m.regions) {
        double best = 1e300;
        for (const auto& t : truth) {
            best = std::min(best, std::sqrt(oracle::sq_dist(r.space->center, t)));
        }
        EXPECT_LE(best, 0.2);
    }
}

TEST(Cluster, FourSquareBlobsGiveFourClusters) {
    const auto b = oracle::square_blobs(3);
    EngineConfig cfg;
    cfg.max_levels = 4;
    const auto m = cluster(b.points, cfg);
    EXPECT_EQ(m.regions.size(), 4u);
    EXPECT_GE(evaluate(m, b.labels).ari, 0.95);
}

TEST(Cluster, InvariantsOnRandomData) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto pts = random_cloud(300 + 50 * seed, 1 + seed % 4, seed);
        EngineConfig cfg;
        cfg.max_levels = 1 + static_cast<int>(seed % 4);
        cfg.merge_enabled = seed % 2 == 0;
        const auto m = cluster(pts, cfg);
        expect_partition(m.regions, pts.size());
        EXPECT_NO_THROW(validate(m, pts.size()));
        EXPECT_LE(m.regions.size(), std::size_t{1} << cfg.max_levels);
        EXPECT_EQ(m, cluster(pts, cfg));
        std::set<int> ids;
        for (const auto& r : m.regions) {
            EXPECT_EQ(r.space->count, r.members.size());
            ids.insert(r.id);
        }
        EXPECT_EQ(ids.size(), m.regions.size());
        if (!cfg.merge_enabled) {
            EXPECT_TRUE(m.merge_log.empty());
        }
        // assign() returns a region at minimal space distance for every point.
        for (std::size_t i = 0; i < pts.size(); i += 7) {
            const auto hit = assign(pts[i], m);
            for (const auto& r : m.regions) {
                EXPECT_LE(hit.distance, point_space_distance(pts[i], *r.space));
            }
        }
    }
}

TEST(Cluster, TargetKStopsEarly) {
    const auto b = oracle::square_blobs(1);
    EngineConfig cfg;
    cfg.target_k = 100;
    const auto m = cluster(b.points, cfg);
    EXPECT_LE(m.regions.size(), 2u);
}

TEST(Cluster, Errors) {
    EXPECT_THROW(cluster(std::vector<FeatVec>{}, EngineConfig{}), Error);
    const std::vector<FeatVec> ragged = {{1, 2}, {3}};
    try {
        cluster(ragged, EngineConfig{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
    }
    EngineConfig bad;
    bad.max_levels = 0;
    EXPECT_THROW(cluster(std::vector<FeatVec>{{1}}, bad), Error);
    bad = {};
    bad.target_k = 0;
    EXPECT_THROW(cluster(std::vector<FeatVec>{{1}}, bad), Error);
}

TEST(Assign, Examples) {
    ClusterModel m;
    m.dim = 1;
    m.regions = {fitted(0, {0}, {0}, {1}), fitted(1, {1}, {10}, {1})};
    const auto at_center = assign(FeatVec{10}, m);
    EXPECT_EQ(at_center.region_id, 1);
    EXPECT_EQ(at_center.distance, 0.0);
    EXPECT_TRUE(at_center.inside);

    const auto near0 = assign(FeatVec{4}, m);
    EXPECT_EQ(near0.region_id, 0);
    EXPECT_DOUBLE_EQ(near0.distance, 3.0);
    EXPECT_FALSE(near0.inside);

    m.regions = {fitted(9, {0}, {10}, {1}), fitted(2, {1}, {0}, {1})};
    EXPECT_EQ(assign(FeatVec{5}, m).region_id, 2);
    EXPECT_THROW(assign(FeatVec{1, 2}, m), Error);
}

TEST(ValidateModel, CatchesBrokenPartitions) {
    ClusterModel m;
    m.dim = 1;
    m.regions = {fitted(0, {0, 1}, {0}, {1}), fitted(0, {2}, {5}, {0})};
    EXPECT_THROW(validate(m), Error);
    m.regions[1].id = 1;
    EXPECT_NO_THROW(validate(m, 3));
    EXPECT_THROW(validate(m, 4), Error);
    m.regions[1].members = {1};
    EXPECT_THROW(validate(m, 3), Error);
}
