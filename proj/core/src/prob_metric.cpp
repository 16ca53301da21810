#include "probclust/prob_metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "probclust/errors.hpp"

namespace probclust {

namespace {

// Neumaier-compensated running sum; sample sizes reach 1e4+ and the scale
// must agree with a direct summation to ~1e-12 relative.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double clamped_gap(double diff, double threshold) noexcept {
    const double a = std::abs(diff);
    return a <= threshold ? 0.0 : a - threshold;
}

template <typename PointAt>
std::vector<double> mean_abs_deviation(std::size_t n, PointAt&& point_at, FeatView center) {
    const std::size_t dim = center.size();
    std::vector<double> out(dim, 0.0);
    if (n == 0) {
        return out;
    }
    std::vector<CompensatedSum> sums(dim);
    for (std::size_t i = 0; i < n; ++i) {
        const FeatVec& p = point_at(i);
        require_same_dim(dim, p.size(), "scale_from_samples");
        for (std::size_t j = 0; j < dim; ++j) {
            sums[j].add(std::abs(p[j] - center[j]));
        }
    }
    for (std::size_t j = 0; j < dim; ++j) {
        out[j] = sums[j].value() / static_cast<double>(n);
    }
    return out;
}

}  // namespace

void validate_feature(FeatView v) {
    if (v.empty()) {
        throw Error(ErrorKind::InvalidArgument, "feature vector must have at least one entry");
    }
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (!std::isfinite(v[j])) {
            throw Error(ErrorKind::InvalidArgument,
                        "feature entry " + std::to_string(j) + " is not finite");
        }
    }
}

void validate(const ProbSpace& space) {
    validate_feature(space.center);
    if (space.scale.size() != space.center.size()) {
        throw Error(ErrorKind::InvalidArgument, "scale length differs from center length");
    }
    bool all_zero = true;
    for (double s : space.scale) {
        if (!std::isfinite(s) || s < 0.0) {
            throw Error(ErrorKind::InvalidArgument, "scale entries must be finite and >= 0");
        }
        all_zero = all_zero && s == 0.0;
    }
    if (space.count == 0 && !all_zero) {
        throw Error(ErrorKind::InvalidArgument, "a space fitted from 0 samples must have zero scale");
    }
}

std::vector<double> scale_from_samples(std::span<const FeatVec> points, FeatView center) {
    return mean_abs_deviation(
        points.size(), [&](std::size_t i) -> const FeatVec& { return points[i]; }, center);
}

std::vector<double> scale_from_samples(std::span<const FeatVec> points,
                                       std::span<const std::size_t> indices,
                                       FeatView center) {
    return mean_abs_deviation(
        indices.size(), [&](std::size_t i) -> const FeatVec& { return points[indices[i]]; },
        center);
}

double point_space_distance(FeatView r, const ProbSpace& s) {
    require_same_dim(s.dim(), r.size(), "point_space_distance");
    double acc = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) {
        const double d = clamped_gap(r[j] - s.center[j], s.scale[j]);
        acc += d * d;
    }
    return std::sqrt(acc);
}

double space_space_distance(const ProbSpace& v, const ProbSpace& w) {
    require_same_dim(v.dim(), w.dim(), "space_space_distance");
    double acc = 0.0;
    for (std::size_t j = 0; j < v.dim(); ++j) {
        // |w - v| == |v - w| and the scale sum commutes, so swapping the
        // arguments reproduces every rounding step.
        const double d = clamped_gap(w.center[j] - v.center[j], v.scale[j] + w.scale[j]);
        acc += d * d;
    }
    return std::sqrt(acc);
}

const char* to_string(TriangleCase c) {
    switch (c) {
        case TriangleCase::Full: return "full";
        case TriangleCase::OneEdgeZero: return "one-edge-zero";
        case TriangleCase::SingleSide: return "single-side";
    }
    return "unknown";
}

namespace {

// Midpoint of the gap between the facing boundaries of two 1-D intervals
// [p - mp, p + mp] and [q - mq, q + mq]. If either scale already covers the
// center separation both scales are dropped and the plain midpoint is used.
double boundary_midpoint(double p, double mp, double q, double mq) {
    const double sep = std::abs(p - q);
    if (sep <= mp || sep <= mq) {
        mp = 0.0;
        mq = 0.0;
    }
    if (p < q) {
        return 0.5 * ((p + mp) + (q - mq));
    }
    return 0.5 * ((q + mq) + (p - mp));
}

Point2 pair_vertex(const ScaledCenter2& a, const ScaledCenter2& b) {
    return {boundary_midpoint(a.center.x, a.scale, b.center.x, b.scale),
            boundary_midpoint(a.center.y, a.scale, b.center.y, b.scale)};
}

double clamped_edge(const ScaledCenter2& a, const ScaledCenter2& b) {
    const double t = a.scale + b.scale;
    const double dx = clamped_gap(b.center.x - a.center.x, t);
    const double dy = clamped_gap(b.center.y - a.center.y, t);
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

TriangleVertices triangle_vertices(const ScaledCenter2& a, const ScaledCenter2& b,
                                   const ScaledCenter2& c) {
    TriangleVertices out;
    out.k = pair_vertex(a, b);
    out.f = pair_vertex(b, c);
    out.h = pair_vertex(c, a);
    out.ab = clamped_edge(a, b);
    out.bc = clamped_edge(b, c);
    out.ca = clamped_edge(c, a);

    double* edges[3] = {&out.ab, &out.bc, &out.ca};
    const auto zeros = std::count_if(std::begin(edges), std::end(edges),
                                     [](const double* e) { return *e == 0.0; });
    if (zeros == 1) {
        // The two spaces joined by the zero edge act as one; the remaining
        // space sees a single distance to them, the nearer of the two.
        out.degenerate_case = TriangleCase::OneEdgeZero;
        double nearest = 0.0;
        bool first = true;
        for (double* e : edges) {
            if (*e != 0.0) {
                nearest = first ? *e : std::min(nearest, *e);
                first = false;
            }
        }
        for (double* e : edges) {
            if (*e != 0.0) {
                *e = nearest;
            }
        }
    } else if (zeros >= 2) {
        // One side left: it is reported for both sides touching the isolated
        // vertex (all zero when every space overlaps).
        out.degenerate_case = TriangleCase::SingleSide;
        const double side = std::max({out.ab, out.bc, out.ca});
        if (side != 0.0) {
            // side is ab -> AB = AC = ab, BC stays 0; likewise for the others.
            if (out.ab == side) {
                out.ca = side;
            } else if (out.bc == side) {
                out.ab = side;
            } else {
                out.bc = side;
            }
        }
    }
    return out;
}

}  // namespace probclust
