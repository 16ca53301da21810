#ifndef PROBCLUST_PROB_METRIC_HPP
#define PROBCLUST_PROB_METRIC_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace probclust {

/// A feature vector. Entries must be finite; length is the feature dimension.
using FeatVec = std::vector<double>;
using FeatView = std::span<const double>;

/// A cluster model: the maximum-probability center plus a non-negative
/// probability scale per dimension. Distances that fall inside the scale
/// count as zero.
struct ProbSpace {
    FeatVec center;
    std::vector<double> scale;
    std::size_t count = 0;

    std::size_t dim() const noexcept { return center.size(); }

    bool operator==(const ProbSpace&) const = default;
};

/// Throws InvalidArgument when the invariants of ProbSpace do not hold
/// (length mismatch, negative or non-finite scale, count 0 with non-zero scale).
void validate(const ProbSpace& space);

/// Throws InvalidArgument when the vector is empty or holds NaN/inf.
void validate_feature(FeatView v);

/// Per-dimension mean absolute deviation of `points` about `center`.
/// Empty input yields the zero vector.
std::vector<double> scale_from_samples(std::span<const FeatVec> points, FeatView center);

/// Same, over the subset `points[indices[i]]`.
std::vector<double> scale_from_samples(std::span<const FeatVec> points,
                                       std::span<const std::size_t> indices,
                                       FeatView center);

/// Euclidean distance from `r` to the space, where each coordinate's
/// deviation is reduced by the space's scale and clamped at zero.
double point_space_distance(FeatView r, const ProbSpace& s);

/// Distance between two spaces: per coordinate, |w_j - v_j| minus the sum of
/// both scales, clamped at zero; combined in L2. Symmetric bit-for-bit.
double space_space_distance(const ProbSpace& v, const ProbSpace& w);

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point2&) const = default;
};

/// A 2-D center with a scalar maximum probability scale.
struct ScaledCenter2 {
    Point2 center;
    double scale = 0.0;
};

enum class TriangleCase { Full, OneEdgeZero, SingleSide };

const char* to_string(TriangleCase c);

/// Effective triangle K (between A and B), F (between B and C),
/// H (between C and A), plus the pairwise clamped edge lengths as reported
/// after the degenerate-case rules are applied.
struct TriangleVertices {
    Point2 k;
    Point2 f;
    Point2 h;
    TriangleCase degenerate_case = TriangleCase::Full;
    double ab = 0.0;
    double bc = 0.0;
    double ca = 0.0;
};

TriangleVertices triangle_vertices(const ScaledCenter2& a, const ScaledCenter2& b,
                                   const ScaledCenter2& c);

}  // namespace probclust

#endif  // PROBCLUST_PROB_METRIC_HPP
