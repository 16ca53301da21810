#include "probclust/metric_axioms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "probclust/errors.hpp"

namespace probclust {

namespace {

// Draws three distinct indices below n (n >= 3). Modulo reduction keeps the
// sequence identical across standard library implementations.
std::array<std::size_t, 3> draw_triple(std::mt19937_64& rng, std::size_t n) {
    std::array<std::size_t, 3> t{};
    t[0] = rng() % n;
    do {
        t[1] = rng() % n;
    } while (t[1] == t[0]);
    do {
        t[2] = rng() % n;
    } while (t[2] == t[0] || t[2] == t[1]);
    return t;
}

bool breaks_triangle(double x, double y, double z) {
    // Each side must not exceed the sum of the other two.
    return x > y + z + kAxiomTolerance || y > x + z + kAxiomTolerance ||
           z > x + y + kAxiomTolerance;
}

double length(const Point2& p, const Point2& q) { return std::hypot(p.x - q.x, p.y - q.y); }

void require_spaces(std::span<const ProbSpace> spaces, std::size_t trials) {
    if (spaces.size() < 3) {
        throw Error(ErrorKind::InsufficientInput,
                    "at least 3 spaces are required, got " + std::to_string(spaces.size()));
    }
    if (trials == 0) {
        throw Error(ErrorKind::InvalidArgument, "trials must be >= 1");
    }
    for (const auto& s : spaces) {
        require_same_dim(spaces.front().dim(), s.dim(), "metric axiom check");
    }
}

}  // namespace

AxiomReport check_metric_axioms(std::span<const ProbSpace> spaces, std::size_t trials,
                                std::uint64_t seed) {
    require_spaces(spaces, trials);
    std::mt19937_64 rng(seed);
    AxiomReport report;
    report.trials = trials;
    report.worst_triangle_excess = -std::numeric_limits<double>::infinity();

    for (std::size_t t = 0; t < trials; ++t) {
        const auto [ia, ib, ic] = draw_triple(rng, spaces.size());
        const ProbSpace& a = spaces[ia];
        const ProbSpace& b = spaces[ib];
        const ProbSpace& c = spaces[ic];

        const double ab = space_space_distance(a, b);
        const double ba = space_space_distance(b, a);
        const double bc = space_space_distance(b, c);
        const double ac = space_space_distance(a, c);
        const double aa = space_space_distance(a, a);

        if (!(ab >= 0.0) || !(bc >= 0.0) || !(ac >= 0.0)) {
            ++report.nonnegativity_violations;
        }
        if (ab != ba) {
            ++report.symmetry_violations;
        }
        if (aa != 0.0) {
            ++report.self_distance_violations;
        }
        const double excess = ac - (ab + bc);
        report.worst_triangle_excess = std::max(report.worst_triangle_excess, excess);
        if (excess > kAxiomTolerance) {
            if (report.triangle_violations == 0) {
                report.first_triangle_counterexample = std::array{ia, ib, ic};
            }
            ++report.triangle_violations;
        }
        report.max_distance = std::max({report.max_distance, ab, bc, ac});
    }
    return report;
}

TriangleSampleReport check_triangle_vertices(std::span<const ProbSpace> spaces,
                                             std::size_t trials, std::uint64_t seed,
                                             std::size_t dim_x, std::size_t dim_y) {
    require_spaces(spaces, trials);
    const std::size_t dim = spaces.front().dim();
    if (dim_x >= dim || dim_y >= dim) {
        throw Error(ErrorKind::InvalidArgument, "projection dimension out of range");
    }
    auto project = [&](const ProbSpace& s) {
        return ScaledCenter2{{s.center[dim_x], s.center[dim_y]},
                             std::max(s.scale[dim_x], s.scale[dim_y])};
    };

    std::mt19937_64 rng(seed);
    TriangleSampleReport report;
    report.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto [ia, ib, ic] = draw_triple(rng, spaces.size());
        const TriangleVertices tv =
            triangle_vertices(project(spaces[ia]), project(spaces[ib]), project(spaces[ic]));
        switch (tv.degenerate_case) {
            case TriangleCase::Full: ++report.full; break;
            case TriangleCase::OneEdgeZero: ++report.one_edge_zero; break;
            case TriangleCase::SingleSide: ++report.single_side; break;
        }
        if (breaks_triangle(length(tv.k, tv.f), length(tv.f, tv.h), length(tv.h, tv.k))) {
            ++report.vertex_violations;
        }
        if (tv.degenerate_case != TriangleCase::Full && breaks_triangle(tv.ab, tv.bc, tv.ca)) {
            ++report.edge_violations;
        }
    }
    return report;
}

std::vector<ProbSpace> random_spaces(std::size_t n, std::size_t dim, std::uint64_t seed,
                                     const RandomSpaceOptions& options) {
    if (dim == 0) {
        throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
    }
    if (!(options.center_max > options.center_min) || !(options.scale_max >= 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "invalid random space ranges");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> center(options.center_min, options.center_max);
    std::uniform_real_distribution<double> scale(0.0, options.scale_max);
    std::vector<ProbSpace> out(n);
    for (auto& s : out) {
        s.center.resize(dim);
        s.scale.resize(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            s.center[j] = center(rng);
            s.scale[j] = options.scale_max > 0.0 ? scale(rng) : 0.0;
        }
        s.count = 1;
    }
    return out;
}

}  // namespace probclust
