#ifndef PROBCLUST_EVAL_HPP
#define PROBCLUST_EVAL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "probclust/cluster_engine.hpp"
#include "probclust/prob_metric.hpp"

namespace probclust {

/// Adjusted Rand index from the pair-counting contingency table. When both
/// labelings are trivial (max index equals expected index) returns 1.
double adjusted_rand_index(std::span<const int> pred, std::span<const int> truth);

/// Fraction of points whose predicted cluster's majority class matches them.
/// Note: every point in its own cluster trivially scores 1.
double purity(std::span<const int> pred, std::span<const int> truth);

struct KMeansResult {
    std::vector<int> labels;
    std::vector<FeatVec> centers;
    /// Sum of squared distances to the assigned center after each assignment step.
    std::vector<double> cost_history;
};

/// Plain Lloyd iterations from k distinct randomly chosen points (no ++ seeding).
/// Throws InvalidK unless 1 <= k <= points.size().
KMeansResult kmeans_baseline(std::span<const FeatVec> points, std::size_t k, std::uint64_t seed,
                             int iters = 100);

/// Predicted label per dataset index (the owning region's id).
std::vector<int> region_labels(const ClusterModel& model, std::size_t dataset_size);

struct SweepRow {
    std::size_t dim = 0;
    std::size_t cluster_count = 0;
    /// Fraction of points at point-space distance 0 from their own region.
    double zero_fraction = 0.0;
    /// Smallest space distance between two distinct regions; NaN with one region.
    double min_between_distance = 0.0;
    double ari = 0.0;
};

struct EvalReport {
    double ari = 0.0;
    double purity = 0.0;
    std::size_t cluster_count = 0;
    std::vector<SweepRow> sweep;
};

EvalReport evaluate(const ClusterModel& model, std::span<const int> truth);

/// Two components at the origin and at `separation_sigmas * sigma` in every
/// dimension, equal weights.
struct SweepTemplate {
    std::size_t points_per_component = 500;
    double sigma = 1.0;
    double separation_sigmas = 6.0;
    std::uint64_t seed = 0;
};

std::vector<SweepRow> dimension_sweep(std::span<const std::size_t> dims,
                                      const SweepTemplate& spec, const EngineConfig& cfg);

/// "dim,cluster_count,zero_fraction,min_between_distance,ari" header plus one row per entry.
std::string format_sweep_csv(std::span<const SweepRow> rows);
std::string format_sweep_summary(std::span<const SweepRow> rows);

}  // namespace probclust

#endif  // PROBCLUST_EVAL_HPP
