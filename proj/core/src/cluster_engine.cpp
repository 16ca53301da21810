#include "probclust/cluster_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "probclust/data_io.hpp"
#include "probclust/errors.hpp"

namespace probclust {

namespace {

double norm_of(const FeatVec& v) {
    double acc = 0.0;
    for (double x : v) {
        acc += x * x;
    }
    return std::sqrt(acc);
}

// Indices ordered by vector norm, ties by index.
void sort_by_norm(std::span<const FeatVec> dataset, std::vector<std::size_t>& idx) {
    std::vector<std::pair<double, std::size_t>> keyed;
    keyed.reserve(idx.size());
    for (std::size_t i : idx) {
        keyed.emplace_back(norm_of(dataset[i]), i);
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < keyed.size(); ++i) {
        idx[i] = keyed[i].second;
    }
}

std::vector<FeatVec> gather(std::span<const FeatVec> dataset,
                            std::span<const std::size_t> members) {
    std::vector<FeatVec> out;
    out.reserve(members.size());
    for (std::size_t i : members) {
        out.push_back(dataset[i]);
    }
    return out;
}

void check_dataset(std::span<const FeatVec> points) {
    if (points.empty()) {
        throw Error(ErrorKind::EmptyInput, "dataset has no vectors");
    }
    const std::size_t dim = points.front().size();
    for (const auto& p : points) {
        require_same_dim(dim, p.size(), "dataset");
        validate_feature(p);
    }
}

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
    std::vector<std::size_t> parent;
};

}  // namespace

void validate(const EngineConfig& cfg) {
    validate(cfg.sdl);
    if (cfg.max_levels < 1) {
        throw Error(ErrorKind::InvalidArgument, "max_levels must be >= 1");
    }
    if (cfg.target_k && *cfg.target_k < 1) {
        throw Error(ErrorKind::InvalidArgument, "target_k must be >= 1");
    }
}

void validate(const ClusterModel& model, std::optional<std::size_t> dataset_size) {
    std::set<int> ids;
    std::vector<char> seen(dataset_size.value_or(0), 0);
    for (const auto& r : model.regions) {
        if (!ids.insert(r.id).second) {
            throw Error(ErrorKind::Format, "duplicate region id " + std::to_string(r.id));
        }
        if (!r.space) {
            throw Error(ErrorKind::Format, "region " + std::to_string(r.id) + " is not fitted");
        }
        if (r.space->dim() != model.dim) {
            throw Error(ErrorKind::Format,
                        "region " + std::to_string(r.id) + " has the wrong dimension");
        }
        validate(*r.space);
        if (dataset_size) {
            for (std::size_t m : r.members) {
                if (m >= *dataset_size || seen[m]) {
                    throw Error(ErrorKind::Format, "region members do not partition the dataset");
                }
                seen[m] = 1;
            }
        }
    }
    if (dataset_size && std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        throw Error(ErrorKind::Format, "region members do not cover the dataset");
    }
}

std::vector<Region> initial_partition(std::span<const FeatVec> points, std::size_t k) {
    if (points.empty()) {
        throw Error(ErrorKind::EmptyInput, "dataset has no vectors");
    }
    if (k < 1 || k > points.size()) {
        throw Error(ErrorKind::InvalidK, "k must lie in [1, " + std::to_string(points.size()) +
                                             "], got " + std::to_string(k));
    }
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    sort_by_norm(points, order);

    const std::size_t base = points.size() / k;
    const std::size_t extra = points.size() % k;
    std::vector<Region> regions(k);
    std::size_t pos = 0;
    for (std::size_t r = 0; r < k; ++r) {
        const std::size_t size = base + (r < extra ? 1 : 0);
        regions[r].id = static_cast<int>(r);
        regions[r].members.assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                                  order.begin() + static_cast<std::ptrdiff_t>(pos + size));
        std::sort(regions[r].members.begin(), regions[r].members.end());
        pos += size;
    }
    return regions;
}

void fit_region(std::span<const FeatVec> dataset, Region& region, const SdlConfig& cfg,
                const ColumnIndex* context) {
    if (region.members.empty()) {
        throw Error(ErrorKind::EmptyRegion,
                    "region " + std::to_string(region.id) + " has no members to fit");
    }
    const auto pts = gather(dataset, region.members);
    region.space = context ? fit_max_prob_space(*context, pts, cfg).first
                           : fit_max_prob_space(pts, cfg).first;
}

ExchangeResult boundary_exchange(std::span<const FeatVec> dataset, const Region& a,
                                 const Region& b, const SdlConfig& cfg,
                                 const ColumnIndex* context) {
    if (!a.space || !b.space) {
        throw Error(ErrorKind::NotFitted, "boundary exchange needs fitted regions");
    }
    Region na{a.id, {}, a.space};
    Region nb{b.id, {}, b.space};
    std::size_t moved = 0;
    auto route = [&](std::size_t idx, bool from_a) {
        const double da = point_space_distance(dataset[idx], *a.space);
        const double db = point_space_distance(dataset[idx], *b.space);
        const bool to_a = da < db;
        (to_a ? na : nb).members.push_back(idx);
        moved += (to_a != from_a) ? 1 : 0;
    };
    for (std::size_t idx : a.members) {
        route(idx, true);
    }
    for (std::size_t idx : b.members) {
        route(idx, false);
    }

    ExchangeResult out;
    out.moved = moved;
    for (Region* r : {&na, &nb}) {
        std::sort(r->members.begin(), r->members.end());
    }
    if (!na.members.empty()) {
        if (moved != 0) {
            fit_region(dataset, na, cfg, context);
        }
        out.a = std::move(na);
    }
    if (!nb.members.empty()) {
        if (moved != 0) {
            fit_region(dataset, nb, cfg, context);
        }
        out.b = std::move(nb);
    }
    return out;
}

std::vector<Region> split_all(std::span<const FeatVec> dataset, std::span<const Region> regions,
                              int& next_id) {
    std::vector<Region> out;
    out.reserve(regions.size() * 2);
    for (const Region& r : regions) {
        if (r.members.size() < 2) {
            out.push_back(r);
            continue;
        }
        std::vector<std::size_t> order = r.members;
        sort_by_norm(dataset, order);
        const std::size_t low_size = (order.size() + 1) / 2;
        Region low{r.id, {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(low_size)},
                   std::nullopt};
        Region high{next_id++,
                    {order.begin() + static_cast<std::ptrdiff_t>(low_size), order.end()},
                    std::nullopt};
        std::sort(low.members.begin(), low.members.end());
        std::sort(high.members.begin(), high.members.end());
        out.push_back(std::move(low));
        out.push_back(std::move(high));
    }
    return out;
}

MergeResult merge_overlapping(std::span<const FeatVec> dataset, std::vector<Region> regions,
                              const SdlConfig& cfg, const ColumnIndex* context) {
    MergeResult result;
    for (const auto& r : regions) {
        if (!r.space) {
            throw Error(ErrorKind::NotFitted, "merge needs fitted regions");
        }
    }
    for (;;) {
        const std::size_t n = regions.size();
        DisjointSets sets(n);
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (space_space_distance(*regions[i].space, *regions[j].space) == 0.0) {
                    any = sets.unite(i, j) || any;
                }
            }
        }
        if (!any) {
            break;
        }
        // Components keep the list position of their first member.
        std::vector<std::vector<std::size_t>> components(n);
        for (std::size_t i = 0; i < n; ++i) {
            components[sets.find(i)].push_back(i);
        }
        std::vector<Region> next;
        for (std::size_t root = 0; root < n; ++root) {
            const auto& comp = components[root];
            if (comp.empty()) {
                continue;
            }
            if (comp.size() == 1) {
                next.push_back(std::move(regions[comp.front()]));
                continue;
            }
            int survivor = regions[comp.front()].id;
            for (std::size_t i : comp) {
                survivor = std::min(survivor, regions[i].id);
            }
            Region merged{survivor, {}, std::nullopt};
            std::vector<int> absorbed;
            for (std::size_t i : comp) {
                merged.members.insert(merged.members.end(), regions[i].members.begin(),
                                      regions[i].members.end());
                if (regions[i].id != survivor) {
                    absorbed.push_back(regions[i].id);
                }
            }
            std::sort(merged.members.begin(), merged.members.end());
            std::sort(absorbed.begin(), absorbed.end());
            for (int id : absorbed) {
                result.events.push_back({survivor, id, 0.0});
            }
            fit_region(dataset, merged, cfg, context);
            next.push_back(std::move(merged));
        }
        regions = std::move(next);
    }
    result.regions = std::move(regions);
    return result;
}

std::vector<Region> reassign_nearest(std::span<const FeatVec> dataset, std::vector<Region> regions,
                                     const SdlConfig& cfg, const ColumnIndex* context) {
    for (const auto& r : regions) {
        if (!r.space) {
            throw Error(ErrorKind::NotFitted, "reassignment needs fitted regions");
        }
    }
    std::vector<std::vector<std::size_t>> members(regions.size());
    for (std::size_t r = 0; r < regions.size(); ++r) {
        for (std::size_t idx : regions[r].members) {
            const FeatVec& v = dataset[idx];
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            double best_c = best_d;
            for (std::size_t k = 0; k < regions.size(); ++k) {
                const ProbSpace& s = *regions[k].space;
                const double d = point_space_distance(v, s);
                double c = 0.0;
                for (std::size_t j = 0; j < v.size(); ++j) {
                    c += (v[j] - s.center[j]) * (v[j] - s.center[j]);
                }
                if (d < best_d || (d == best_d && c < best_c)) {
                    best = k;
                    best_d = d;
                    best_c = c;
                }
            }
            members[best].push_back(idx);
        }
    }
    std::vector<Region> out;
    for (std::size_t r = 0; r < regions.size(); ++r) {
        if (members[r].empty()) {
            continue;
        }
        std::sort(members[r].begin(), members[r].end());
        Region next{regions[r].id, std::move(members[r]), regions[r].space};
        if (next.members != regions[r].members) {
            fit_region(dataset, next, cfg, context);
        }
        out.push_back(std::move(next));
    }
    return out;
}

ClusterModel cluster(std::span<const FeatVec> points, const EngineConfig& cfg) {
    validate(cfg);
    check_dataset(points);

    ClusterModel model;
    model.dim = points.front().size();
    model.config = cfg;
    model.dataset_fingerprint = content_fingerprint(points);

    const ColumnIndex context(points);
    std::vector<Region> regions = initial_partition(points, std::min<std::size_t>(2, points.size()));
    int next_id = static_cast<int>(regions.size());

    for (int level = 1;; ++level) {
        for (auto& r : regions) {
            if (!r.space) {
                fit_region(points, r, cfg.sdl, &context);
            }
        }

        // Sweep adjacent pairs in order; a dissolved region drops out and its
        // sibling is paired with the next one.
        std::size_t i = 0;
        while (i + 1 < regions.size()) {
            ExchangeResult ex = boundary_exchange(points, regions[i], regions[i + 1], cfg.sdl, &context);
            if (ex.a && ex.b) {
                regions[i] = std::move(*ex.a);
                regions[i + 1] = std::move(*ex.b);
                ++i;
            } else {
                regions[i] = ex.a ? std::move(*ex.a) : std::move(*ex.b);
                regions.erase(regions.begin() + static_cast<std::ptrdiff_t>(i + 1));
            }
        }

        if (cfg.merge_enabled) {
            MergeResult merged = merge_overlapping(points, std::move(regions), cfg.sdl, &context);
            regions = std::move(merged.regions);
            model.merge_log.insert(model.merge_log.end(), merged.events.begin(),
                                   merged.events.end());
        }

        const bool reached_target =
            cfg.target_k && regions.size() <= static_cast<std::size_t>(*cfg.target_k);
        const bool unsplittable = std::all_of(regions.begin(), regions.end(),
                                              [](const Region& r) { return r.members.size() <= 2; });
        if (reached_target || level >= cfg.max_levels || unsplittable) {
            break;
        }
        regions = split_all(points, regions, next_id);
    }

    model.regions = reassign_nearest(points, std::move(regions), cfg.sdl, &context);
    return model;
}

Assignment assign(FeatView v, const ClusterModel& model) {
    require_same_dim(model.dim, v.size(), "assign");
    if (model.regions.empty()) {
        throw Error(ErrorKind::EmptyInput, "model has no regions");
    }
    std::optional<Assignment> best;
    for (const auto& r : model.regions) {
        if (!r.space) {
            throw Error(ErrorKind::NotFitted, "model region is not fitted");
        }
        const double d = point_space_distance(v, *r.space);
        if (!best || d < best->distance || (d == best->distance && r.id < best->region_id)) {
            best = Assignment{r.id, d, d == 0.0};
        }
    }
    return *best;
}

}  // namespace probclust
