#ifndef PROBCLUST_CLUSTER_ENGINE_HPP
#define PROBCLUST_CLUSTER_ENGINE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "probclust/prob_metric.hpp"
#include "probclust/sdl_fit.hpp"

namespace probclust {

/// A cluster in progress: indices into the dataset plus its fitted space.
struct Region {
    int id = 0;
    std::vector<std::size_t> members;  // ascending
    std::optional<ProbSpace> space;

    bool operator==(const Region&) const = default;
};

struct EngineConfig {
    std::optional<int> target_k;  ///< stop once the cluster count is <= target_k
    int max_levels = 6;           ///< level 1 has 2 regions, each further level splits once
    bool merge_enabled = true;
    SdlConfig sdl;

    bool operator==(const EngineConfig&) const = default;
};

void validate(const EngineConfig& cfg);

struct MergeEvent {
    int survivor = 0;
    int absorbed = 0;
    double distance = 0.0;

    bool operator==(const MergeEvent&) const = default;
};

struct ClusterModel {
    std::vector<Region> regions;
    std::size_t dim = 0;
    std::vector<MergeEvent> merge_log;
    EngineConfig config;
    std::string dataset_fingerprint;

    bool operator==(const ClusterModel&) const = default;
};

/// Throws Format when ids repeat, a region is unfitted or empty, or a space
/// has the wrong dimension. With `dataset_size`, also checks that members
/// partition [0, dataset_size).
void validate(const ClusterModel& model, std::optional<std::size_t> dataset_size = std::nullopt);

/// Sorts indices by Euclidean norm (ties by index) and cuts them into k
/// contiguous blocks whose sizes differ by at most one, larger blocks first.
/// Regions come back unfitted with ids 0..k-1.
std::vector<Region> initial_partition(std::span<const FeatVec> points, std::size_t k);

/// Refits `region.space` from its members. With a context index the
/// migration windows average over the indexed points (see fit_max_prob_space).
void fit_region(std::span<const FeatVec> dataset, Region& region, const SdlConfig& cfg,
                const ColumnIndex* context = nullptr);

struct ExchangeResult {
    std::optional<Region> a;  ///< empty when dissolved
    std::optional<Region> b;
    std::size_t moved = 0;
};

/// Reassigns every member of a and b to a when it is strictly closer to a's
/// space, otherwise to b, then refits. A region left without members is
/// dissolved. Throws NotFitted when either region lacks a space.
ExchangeResult boundary_exchange(std::span<const FeatVec> dataset, const Region& a,
                                 const Region& b, const SdlConfig& cfg,
                                 const ColumnIndex* context = nullptr);

/// Median-cuts every region with at least two members by vector norm (the
/// lower half takes the extra member). The lower child keeps the parent id,
/// the upper child takes `next_id++`. Children are unfitted; single-member
/// regions carry forward unchanged.
std::vector<Region> split_all(std::span<const FeatVec> dataset, std::span<const Region> regions,
                              int& next_id);

struct MergeResult {
    std::vector<Region> regions;
    std::vector<MergeEvent> events;
};

/// Merges every connected component of the "space distance == 0" graph into
/// the component member with the smallest id and refits it; repeats until no
/// pair of spaces touches.
MergeResult merge_overlapping(std::span<const FeatVec> dataset, std::vector<Region> regions,
                              const SdlConfig& cfg, const ColumnIndex* context = nullptr);

/// Moves every vector to the region with the smallest point-to-space
/// distance, ties broken by squared distance to the center and then by list
/// position. Regions left empty are dropped; regions whose membership changed
/// are refitted.
std::vector<Region> reassign_nearest(std::span<const FeatVec> dataset, std::vector<Region> regions,
                                     const SdlConfig& cfg, const ColumnIndex* context = nullptr);

/// Full pipeline: modulus partition into 2 regions, then per level fit,
/// adjacent boundary exchange, optional merge and the stopping test, splitting
/// every region between levels. Fits run against an index of the whole
/// dataset, and a final reassign_nearest pass settles vectors that ended up
/// in a non-adjacent region.
ClusterModel cluster(std::span<const FeatVec> points, const EngineConfig& cfg);

struct Assignment {
    int region_id = 0;
    double distance = 0.0;
    bool inside = false;
};

/// Region whose space is nearest to v; ties go to the smallest id.
Assignment assign(FeatView v, const ClusterModel& model);

}  // namespace probclust

#endif  // PROBCLUST_CLUSTER_ENGINE_HPP
