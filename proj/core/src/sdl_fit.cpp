#include "probclust/sdl_fit.hpp"

#include <algorithm>
#include <cmath>

#include "probclust/errors.hpp"

namespace probclust {

namespace {

// Column-major copy: per-dimension passes dominate the fit.
std::vector<std::vector<double>> columns_of(std::span<const FeatVec> points) {
    const std::size_t dim = points.front().size();
    std::vector<std::vector<double>> cols(dim, std::vector<double>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        require_same_dim(dim, points[i].size(), "fit_max_prob_space");
        for (std::size_t j = 0; j < dim; ++j) {
            cols[j][i] = points[i][j];
        }
    }
    return cols;
}

double median_of(std::vector<double> values) {
    const std::size_t n = values.size();
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(values.begin(), mid, values.end());
    const double upper = *mid;
    if (n % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(values.begin(), mid);
    return lower + (upper - lower) / 2.0;
}

double mean_abs_deviation(const std::vector<double>& col, double center) {
    double sum = 0.0;
    double comp = 0.0;
    for (double x : col) {
        const double v = std::abs(x - center);
        const double t = sum + v;
        comp += sum >= v ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    return (sum + comp) / static_cast<double>(col.size());
}

double squared_step(FeatView a, FeatView b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        acc += d * d;
    }
    return acc;
}

}  // namespace

void validate(const SdlConfig& cfg) {
    if (!(cfg.delta > 0.0) || !std::isfinite(cfg.delta)) {
        throw Error(ErrorKind::InvalidArgument, "delta must be a finite value > 0");
    }
    if (cfg.max_migrations < 1 || cfg.max_convergences < 1 || cfg.mu < 1) {
        throw Error(ErrorKind::InvalidArgument,
                    "max_migrations, max_convergences and mu must all be >= 1");
    }
}

bool has_converged(FeatView a_prev, FeatView a_next, double delta) {
    require_same_dim(a_prev.size(), a_next.size(), "has_converged");
    return squared_step(a_prev, a_next) <= delta;
}

FeatVec coordinate_median(std::span<const FeatVec> points) {
    if (points.empty()) {
        throw Error(ErrorKind::EmptyRegion, "median of an empty point set");
    }
    auto cols = columns_of(points);
    FeatVec out(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        out[j] = median_of(std::move(cols[j]));
    }
    return out;
}

ColumnIndex::ColumnIndex(std::span<const FeatVec> points) {
    if (points.empty()) {
        throw Error(ErrorKind::EmptyInput, "cannot index zero points");
    }
    sorted_ = columns_of(points);
    prefix_.resize(sorted_.size());
    for (std::size_t j = 0; j < sorted_.size(); ++j) {
        std::sort(sorted_[j].begin(), sorted_[j].end());
        auto& pre = prefix_[j];
        pre.reserve(sorted_[j].size() + 1);
        pre.push_back(0.0);
        for (double x : sorted_[j]) {
            pre.push_back(pre.back() + x);
        }
    }
}

double ColumnIndex::window_mean(std::size_t j, double center, double half_width) const {
    const auto& col = sorted_.at(j);
    const auto& pre = prefix_[j];
    auto lo = static_cast<std::size_t>(
        std::lower_bound(col.begin(), col.end(), center - half_width) - col.begin());
    auto hi = static_cast<std::size_t>(
        std::upper_bound(col.begin(), col.end(), center + half_width) - col.begin());
    if (hi <= lo) {
        lo = 0;
        hi = col.size();
    }
    // The clamp only absorbs rounding: a mean never leaves the range it averages.
    const double mean = (pre[hi] - pre[lo]) / static_cast<double>(hi - lo);
    return std::clamp(mean, col[lo], col[hi - 1]);
}

std::pair<ProbSpace, FitTrace> fit_max_prob_space(std::span<const FeatVec> points,
                                                  const SdlConfig& cfg) {
    validate(cfg);
    if (points.empty()) {
        throw Error(ErrorKind::EmptyRegion, "cannot fit a probability space to zero points");
    }
    return fit_max_prob_space(ColumnIndex(points), points, cfg);
}

std::pair<ProbSpace, FitTrace> fit_max_prob_space(const ColumnIndex& context,
                                                  std::span<const FeatVec> members,
                                                  const SdlConfig& cfg) {
    validate(cfg);
    if (members.empty()) {
        throw Error(ErrorKind::EmptyRegion, "cannot fit a probability space to zero points");
    }
    const auto cols = columns_of(members);
    const std::size_t dim = cols.size();
    require_same_dim(context.dim(), dim, "fit_max_prob_space context");

    FeatVec center(dim);
    std::vector<double> scale(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        center[j] = median_of(cols[j]);
        scale[j] = mean_abs_deviation(cols[j], center[j]);
    }

    FitTrace trace;
    trace.center_history.push_back(center);

    FeatVec next(dim);
    for (int round = 0; round < cfg.mu && !trace.converged; ++round) {
        const FeatVec round_start = center;
        for (int conv = 0; conv < cfg.max_convergences; ++conv) {
            for (int mig = 0; mig < cfg.max_migrations; ++mig) {
                for (std::size_t j = 0; j < dim; ++j) {
                    next[j] = context.window_mean(j, center[j], scale[j]);
                }
                ++trace.iterations;
                trace.center_history.push_back(next);
                const bool settled = has_converged(center, next, cfg.delta);
                center = next;
                if (settled) {
                    break;
                }
            }
            for (std::size_t j = 0; j < dim; ++j) {
                scale[j] = mean_abs_deviation(cols[j], center[j]);
            }
        }
        trace.converged = has_converged(round_start, center, cfg.delta);
    }

    ProbSpace space{std::move(center), std::move(scale), members.size()};
    return {std::move(space), std::move(trace)};
}

}  // namespace probclust
