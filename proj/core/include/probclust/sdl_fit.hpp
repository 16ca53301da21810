#ifndef PROBCLUST_SDL_FIT_HPP
#define PROBCLUST_SDL_FIT_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "probclust/prob_metric.hpp"

namespace probclust {

struct SdlConfig {
    double delta = 1e-8;           ///< convergence tolerance on the squared center step
    int max_migrations = 3;        ///< center moves per convergence step
    int max_convergences = 1;      ///< scale recomputations per round
    int mu = 50;                   ///< cap on rounds
    std::uint64_t seed = 0;

    bool operator==(const SdlConfig&) const = default;
};

/// Throws InvalidArgument unless delta > 0 and every cap is >= 1.
void validate(const SdlConfig& cfg);

struct FitTrace {
    int iterations = 0;                 ///< number of migration steps taken
    std::vector<FeatVec> center_history;  ///< initial center followed by one entry per step
    bool converged = false;
};

/// True iff ||a_prev - a_next||^2 <= delta.
bool has_converged(FeatView a_prev, FeatView a_next, double delta);

/// Coordinate-wise median (mean of the two middle values for even sizes).
FeatVec coordinate_median(std::span<const FeatVec> points);

/// Per-dimension sorted copy of a dataset with prefix sums, so the mean of
/// the values inside any window costs two binary searches.
class ColumnIndex {
public:
    /// Throws EmptyInput for no points and DimensionMismatch for ragged input.
    explicit ColumnIndex(std::span<const FeatVec> points);

    std::size_t dim() const { return sorted_.size(); }
    std::size_t size() const { return sorted_.empty() ? 0 : sorted_.front().size(); }

    /// Mean of the dimension-j values within [center - half_width, center + half_width],
    /// or of the whole column when that window is empty.
    double window_mean(std::size_t j, double center, double half_width) const;

private:
    std::vector<std::vector<double>> sorted_;
    std::vector<std::vector<double>> prefix_;
};

/// Fits the maximum probability space of a point set.
///
/// Starts from the coordinate-wise median with the mean absolute deviation
/// about it as the window. A round performs up to `max_convergences`
/// convergence steps; each is preceded by up to `max_migrations` migrations
/// that move the center to the mean of the points lying inside the current
/// window (per dimension; falls back to the dimension's global mean when the
/// window is empty). A convergence step recomputes the scale about the new
/// center. Migrations stop early once a step moves the center by at most
/// delta (squared norm); rounds stop once a whole round does, or after `mu`.
///
/// Throws EmptyRegion for no points and DimensionMismatch for ragged input.
std::pair<ProbSpace, FitTrace> fit_max_prob_space(std::span<const FeatVec> points,
                                                  const SdlConfig& cfg);

/// Same iteration, but migration windows average over `context` (typically
/// the whole dataset) instead of `members` alone. Initialization, the scale
/// and the count still come from `members`.
std::pair<ProbSpace, FitTrace> fit_max_prob_space(const ColumnIndex& context,
                                                  std::span<const FeatVec> members,
                                                  const SdlConfig& cfg);

}  // namespace probclust

#endif  // PROBCLUST_SDL_FIT_HPP
