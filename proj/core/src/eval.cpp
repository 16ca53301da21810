#include "probclust/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "probclust/data_io.hpp"
#include "probclust/errors.hpp"

namespace probclust {

namespace {

void require_equal_lengths(std::size_t a, std::size_t b, std::size_t min_len) {
    if (a != b) {
        throw Error(ErrorKind::InvalidArgument, "label vectors differ in length (" +
                                                     std::to_string(a) + " vs " +
                                                     std::to_string(b) + ")");
    }
    if (a < min_len) {
        throw Error(ErrorKind::InvalidArgument,
                    "need at least " + std::to_string(min_len) + " labels");
    }
}

double choose2(double n) { return n * (n - 1.0) / 2.0; }

double squared_distance(const FeatVec& a, const FeatVec& b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        acc += d * d;
    }
    return acc;
}

}  // namespace

double adjusted_rand_index(std::span<const int> pred, std::span<const int> truth) {
    require_equal_lengths(pred.size(), truth.size(), 2);
    std::map<std::pair<int, int>, double> table;
    std::map<int, double> rows;
    std::map<int, double> cols;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        table[{pred[i], truth[i]}] += 1.0;
        rows[pred[i]] += 1.0;
        cols[truth[i]] += 1.0;
    }
    double index = 0.0;
    for (const auto& [_, n] : table) {
        index += choose2(n);
    }
    double sum_rows = 0.0;
    for (const auto& [_, n] : rows) {
        sum_rows += choose2(n);
    }
    double sum_cols = 0.0;
    for (const auto& [_, n] : cols) {
        sum_cols += choose2(n);
    }
    const double expected = sum_rows * sum_cols / choose2(static_cast<double>(pred.size()));
    const double max_index = 0.5 * (sum_rows + sum_cols);
    if (max_index == expected) {
        return 1.0;
    }
    return (index - expected) / (max_index - expected);
}

double purity(std::span<const int> pred, std::span<const int> truth) {
    require_equal_lengths(pred.size(), truth.size(), 1);
    std::map<int, std::map<int, std::size_t>> overlap;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        ++overlap[pred[i]][truth[i]];
    }
    std::size_t hits = 0;
    for (const auto& [_, classes] : overlap) {
        std::size_t best = 0;
        for (const auto& [__, n] : classes) {
            best = std::max(best, n);
        }
        hits += best;
    }
    return static_cast<double>(hits) / static_cast<double>(pred.size());
}

KMeansResult kmeans_baseline(std::span<const FeatVec> points, std::size_t k, std::uint64_t seed,
                             int iters) {
    if (k < 1 || k > points.size()) {
        throw Error(ErrorKind::InvalidK, "k must lie in [1, number of points]");
    }
    if (iters < 1) {
        throw Error(ErrorKind::InvalidArgument, "iters must be >= 1");
    }
    const std::size_t n = points.size();
    const std::size_t dim = points.front().size();
    for (const auto& p : points) {
        require_same_dim(dim, p.size(), "kmeans_baseline");
    }

    // Partial Fisher-Yates over indices gives k distinct starting points.
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) {
        idx[i] = i;
    }
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
        std::swap(idx[i], idx[j]);
    }

    KMeansResult res;
    for (std::size_t c = 0; c < k; ++c) {
        res.centers.push_back(points[idx[c]]);
    }
    res.labels.assign(n, -1);

    for (int it = 0; it < iters; ++it) {
        bool changed = false;
        double cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                const double d = squared_distance(points[i], res.centers[c]);
                if (d < best_d) {
                    best_d = d;
                    best = static_cast<int>(c);
                }
            }
            changed = changed || res.labels[i] != best;
            res.labels[i] = best;
            cost += best_d;
        }
        res.cost_history.push_back(cost);
        if (!changed && it > 0) {
            break;
        }
        std::vector<FeatVec> sums(k, FeatVec(dim, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = static_cast<std::size_t>(res.labels[i]);
            ++counts[c];
            for (std::size_t j = 0; j < dim; ++j) {
                sums[c][j] += points[i][j];
            }
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) {
                continue;  // an empty cluster keeps its previous center
            }
            for (std::size_t j = 0; j < dim; ++j) {
                res.centers[c][j] = sums[c][j] / static_cast<double>(counts[c]);
            }
        }
    }
    return res;
}

std::vector<int> region_labels(const ClusterModel& model, std::size_t dataset_size) {
    std::vector<int> labels(dataset_size, -1);
    for (const auto& r : model.regions) {
        for (std::size_t m : r.members) {
            if (m >= dataset_size) {
                throw Error(ErrorKind::InvalidArgument, "region member outside dataset");
            }
            labels[m] = r.id;
        }
    }
    return labels;
}

EvalReport evaluate(const ClusterModel& model, std::span<const int> truth) {
    const auto pred = region_labels(model, truth.size());
    EvalReport report;
    report.ari = adjusted_rand_index(pred, truth);
    report.purity = purity(pred, truth);
    report.cluster_count = model.regions.size();
    return report;
}

std::vector<SweepRow> dimension_sweep(std::span<const std::size_t> dims,
                                      const SweepTemplate& spec, const EngineConfig& cfg) {
    if (dims.empty()) {
        throw Error(ErrorKind::InvalidArgument, "dimension sweep needs at least one dimension");
    }
    std::vector<SweepRow> rows;
    for (std::size_t d : dims) {
        MixtureSpec mix;
        mix.n = 2 * spec.points_per_component;
        mix.seed = spec.seed + d;
        mix.components = {
            {0.5, FeatVec(d, 0.0), std::vector<double>(d, spec.sigma)},
            {0.5, FeatVec(d, spec.separation_sigmas * spec.sigma),
             std::vector<double>(d, spec.sigma)},
        };
        const Dataset data = generate_mixture(mix);
        const ClusterModel model = cluster(data.vectors, cfg);

        SweepRow row;
        row.dim = d;
        row.cluster_count = model.regions.size();
        std::size_t zero = 0;
        for (const auto& r : model.regions) {
            for (std::size_t m : r.members) {
                zero += point_space_distance(data.vectors[m], *r.space) == 0.0 ? 1 : 0;
            }
        }
        row.zero_fraction = static_cast<double>(zero) / static_cast<double>(data.size());
        row.min_between_distance = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t a = 0; a < model.regions.size(); ++a) {
            for (std::size_t b = a + 1; b < model.regions.size(); ++b) {
                const double g =
                    space_space_distance(*model.regions[a].space, *model.regions[b].space);
                if (std::isnan(row.min_between_distance) || g < row.min_between_distance) {
                    row.min_between_distance = g;
                }
            }
        }
        row.ari = adjusted_rand_index(region_labels(model, data.size()), *data.labels);
        rows.push_back(row);
    }
    return rows;
}

std::string format_sweep_csv(std::span<const SweepRow> rows) {
    std::string out = "dim,cluster_count,zero_fraction,min_between_distance,ari\n";
    for (const auto& r : rows) {
        out += std::to_string(r.dim) + ',' + std::to_string(r.cluster_count) + ',' +
               format_double(r.zero_fraction) + ',' +
               (std::isnan(r.min_between_distance) ? std::string("nan")
                                                   : format_double(r.min_between_distance)) +
               ',' + format_double(r.ari) + '\n';
    }
    return out;
}

std::string format_sweep_summary(std::span<const SweepRow> rows) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(4);
    for (const auto& r : rows) {
        out << "d=" << r.dim << "  clusters=" << r.cluster_count
            << "  zero_fraction=" << r.zero_fraction
            << "  min_between=" << r.min_between_distance << "  ari=" << r.ari << '\n';
    }
    return out.str();
}

}  // namespace probclust
