#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "probclust/cluster_engine.hpp"
#include "probclust/data_io.hpp"
#include "probclust/metric_axioms.hpp"
#include "probclust/prob_metric.hpp"
#include "probclust/sdl_fit.hpp"

using namespace probclust;

namespace {

std::vector<FeatVec> gaussian(std::size_t n, std::size_t d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0, 1);
    std::vector<FeatVec> pts(n, FeatVec(d));
    for (auto& p : pts) {
        for (auto& x : p) {
            x = g(rng);
        }
    }
    return pts;
}

Dataset blobs(std::size_t n, std::size_t d) {
    MixtureSpec spec;
    spec.n = n;
    spec.seed = 1;
    for (std::size_t c = 0; c < 4; ++c) {
        FeatVec center(d, 0.0);
        center[c % d] = 10.0 * static_cast<double>(1 + c / d);
        spec.components.push_back({0.25, center, std::vector<double>(d, 1.0)});
    }
    return generate_mixture(spec);
}

}  // namespace

static void BM_SpaceSpaceDistance(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const auto spaces = random_spaces(2, d, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(space_space_distance(spaces[0], spaces[1]));
    }
}
BENCHMARK(BM_SpaceSpaceDistance)->Arg(2)->Arg(18)->Arg(128);

static void BM_PointSpaceDistance(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const auto spaces = random_spaces(1, d, 2);
    const auto pts = gaussian(1, d, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(point_space_distance(pts[0], spaces[0]));
    }
}
BENCHMARK(BM_PointSpaceDistance)->Arg(2)->Arg(18)->Arg(128);

static void BM_ScaleFromSamples(benchmark::State& state) {
    const auto pts = gaussian(static_cast<std::size_t>(state.range(0)), 18, 3);
    const FeatVec center(18, 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(scale_from_samples(pts, center));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScaleFromSamples)->Arg(1000)->Arg(10000);

static void BM_FitMaxProbSpace(benchmark::State& state) {
    const auto pts = gaussian(static_cast<std::size_t>(state.range(0)), 1, 4);
    const SdlConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_max_prob_space(pts, cfg));
    }
}
BENCHMARK(BM_FitMaxProbSpace)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

static void BM_Cluster(benchmark::State& state) {
    const auto data = blobs(static_cast<std::size_t>(state.range(0)),
                            static_cast<std::size_t>(state.range(1)));
    EngineConfig cfg;
    cfg.max_levels = 6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cluster(data.vectors, cfg));
    }
}
BENCHMARK(BM_Cluster)->Args({2000, 2})->Args({10000, 18})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
