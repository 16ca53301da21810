#ifndef PROBCLUST_METRIC_AXIOMS_HPP
#define PROBCLUST_METRIC_AXIOMS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "probclust/prob_metric.hpp"

namespace probclust {

inline constexpr double kAxiomTolerance = 1e-9;

struct AxiomReport {
    std::size_t trials = 0;
    std::size_t nonnegativity_violations = 0;
    std::size_t symmetry_violations = 0;
    std::size_t self_distance_violations = 0;
    std::size_t triangle_violations = 0;
    double max_distance = 0.0;
    /// Largest G(a,c) - G(a,b) - G(b,c) seen; <= 0 when no triple is tight.
    double worst_triangle_excess = 0.0;
    /// Indices (a, b, c) of the first triple that broke the triangle inequality.
    std::optional<std::array<std::size_t, 3>> first_triangle_counterexample;

    std::size_t total_violations() const noexcept {
        return nonnegativity_violations + symmetry_violations + self_distance_violations +
               triangle_violations;
    }
};

/// Samples `trials` triples of distinct spaces (deterministic in `seed`) and
/// counts violations of non-negativity, exact symmetry, exact self-distance
/// zero and the triangle inequality (absolute tolerance kAxiomTolerance).
/// Throws InsufficientInput for fewer than 3 spaces, InvalidArgument for
/// trials == 0, DimensionMismatch for mixed dimensions.
AxiomReport check_metric_axioms(std::span<const ProbSpace> spaces, std::size_t trials,
                                std::uint64_t seed);

struct TriangleSampleReport {
    std::size_t trials = 0;
    std::size_t full = 0;
    std::size_t one_edge_zero = 0;
    std::size_t single_side = 0;
    /// The K-F-H triangle broke the triangle inequality.
    std::size_t vertex_violations = 0;
    /// A degenerate case reported edges that break the triangle inequality.
    std::size_t edge_violations = 0;

    std::size_t total_violations() const noexcept { return vertex_violations + edge_violations; }
};

/// Projects each space onto dimensions (dim_x, dim_y), using the larger of the
/// two projected scales as the scalar scale, and runs triangle_vertices on
/// `trials` seeded triples.
TriangleSampleReport check_triangle_vertices(std::span<const ProbSpace> spaces,
                                             std::size_t trials, std::uint64_t seed,
                                             std::size_t dim_x = 0, std::size_t dim_y = 1);

struct RandomSpaceOptions {
    double center_min = -1.0;
    double center_max = 1.0;
    double scale_max = 0.1;
};

/// Centers uniform in [center_min, center_max]^dim, scales uniform in
/// [0, scale_max] per dimension; count set to 1.
std::vector<ProbSpace> random_spaces(std::size_t n, std::size_t dim, std::uint64_t seed,
                                     const RandomSpaceOptions& options = {});

}  // namespace probclust

#endif  // PROBCLUST_METRIC_AXIOMS_HPP
