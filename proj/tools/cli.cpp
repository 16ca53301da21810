#include "cli.hpp"

#include <chrono>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "probclust/cluster_engine.hpp"
#include "probclust/data_io.hpp"
#include "probclust/errors.hpp"
#include "probclust/metric_axioms.hpp"
#include "svg_report.hpp"

namespace probclust::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// Raised by handlers for usage problems CLI11 cannot express as option checks.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ClusterArgs {
    std::string input;
    std::string out;
    std::optional<int> target_k;
    int max_levels = 6;
    double delta = 1e-8;
    int max_migrations = 3;
    int max_convergences = 1;
    int mu = 50;
    bool no_merge = false;
    std::uint64_t seed = 0;
    std::string report;
};

struct AssignArgs {
    std::string model;
    std::string input;
    std::string out;
};

struct CheckArgs {
    std::string model;
    std::optional<std::size_t> random;
    std::optional<std::size_t> dim;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
};

struct GenArgs {
    std::string components;
    std::string spec;
    std::optional<std::size_t> n;
    std::optional<std::uint64_t> seed;
    std::string out;
};

struct ReportArgs {
    std::string model;
    std::string input;
    std::string proj = "0,1";
    std::string out;
};

ordered_json region_json(const Region& r) {
    return ordered_json{{"id", r.id},
                        {"count", r.members.size()},
                        {"center", r.space->center},
                        {"scale", r.space->scale}};
}

int cmd_cluster(const ClusterArgs& a, std::ostream& out) {
    EngineConfig cfg;
    cfg.target_k = a.target_k;
    cfg.max_levels = a.max_levels;
    cfg.merge_enabled = !a.no_merge;
    cfg.sdl.delta = a.delta;
    cfg.sdl.max_migrations = a.max_migrations;
    cfg.sdl.max_convergences = a.max_convergences;
    cfg.sdl.mu = a.mu;
    cfg.sdl.seed = a.seed;

    const Dataset data = read_csv(a.input);
    const auto t0 = std::chrono::steady_clock::now();
    const ClusterModel model = cluster(data.vectors, cfg);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_model(model, a.out);

    if (!a.report.empty()) {
        ordered_json rep;
        rep["cluster_count"] = model.regions.size();
        ordered_json sizes = ordered_json::array();
        ordered_json regions = ordered_json::array();
        for (const auto& r : model.regions) {
            sizes.push_back(r.members.size());
            regions.push_back(region_json(r));
        }
        rep["sizes"] = std::move(sizes);
        rep["regions"] = std::move(regions);
        ordered_json log = ordered_json::array();
        for (const auto& e : model.merge_log) {
            log.push_back({{"survivor", e.survivor}, {"absorbed", e.absorbed},
                           {"distance", e.distance}});
        }
        rep["merge_log"] = std::move(log);
        rep["wall_time_seconds"] = seconds;
        write_text_file(a.report, rep.dump(2) + "\n");
    }

    out << "clustered " << data.size() << " vectors (dim " << data.dim() << ") into "
        << model.regions.size() << " regions in " << seconds << " s; model written to " << a.out
        << '\n';
    return kExitOk;
}

int cmd_assign(const AssignArgs& a, std::ostream& out) {
    const ClusterModel model = read_model(a.model);
    const Dataset data = read_csv(a.input);
    require_same_dim(model.dim, data.dim(), "input vs model");
    std::string text;
    for (const auto& v : data.vectors) {
        const Assignment hit = assign(v, model);
        text += std::to_string(hit.region_id) + ',' + format_double(hit.distance) + ',' +
                (hit.inside ? "1" : "0") + '\n';
    }
    write_text_file(a.out, text);
    out << "assigned " << data.size() << " vectors to " << model.regions.size()
        << " regions; written to " << a.out << '\n';
    return kExitOk;
}

int cmd_check_metric(const CheckArgs& a, std::ostream& out) {
    std::vector<ProbSpace> spaces;
    if (a.random) {
        if (!a.dim) {
            throw UsageError("--random needs --dim");
        }
        spaces = random_spaces(*a.random, *a.dim, a.seed);
    } else {
        if (a.model.empty()) {
            throw UsageError("give --model PATH or --random N --dim D");
        }
        const ClusterModel model = read_model(a.model);
        for (const auto& r : model.regions) {
            spaces.push_back(*r.space);
        }
    }

    const AxiomReport axioms = check_metric_axioms(spaces, a.trials, a.seed);
    const std::size_t dim = spaces.front().dim();
    const TriangleSampleReport tri =
        check_triangle_vertices(spaces, a.trials, a.seed, 0, dim > 1 ? 1 : 0);

    out << "spaces: " << spaces.size() << " (dim " << dim << "), trials: " << a.trials << '\n'
        << "nonnegativity violations: " << axioms.nonnegativity_violations << '\n'
        << "symmetry violations: " << axioms.symmetry_violations << '\n'
        << "self-distance violations: " << axioms.self_distance_violations << '\n'
        << "triangle violations: " << axioms.triangle_violations << '\n'
        << "max distance: " << axioms.max_distance << '\n'
        << "worst triangle excess: " << axioms.worst_triangle_excess << '\n';
    if (axioms.first_triangle_counterexample) {
        const auto& t = *axioms.first_triangle_counterexample;
        out << "first triangle counterexample: " << t[0] << ',' << t[1] << ',' << t[2] << '\n';
    }
    out << "boundary triangles: full " << tri.full << ", one edge zero " << tri.one_edge_zero
        << ", single side " << tri.single_side << '\n'
        << "boundary vertex violations: " << tri.vertex_violations << '\n'
        << "boundary edge violations: " << tri.edge_violations << '\n';

    const std::size_t total = axioms.total_violations() + tri.total_violations();
    out << (total == 0 ? "ok" : "FAILED") << ": " << total << " violations\n";
    return total == 0 ? kExitOk : kExitDomain;
}

int cmd_gen(const GenArgs& a, std::ostream& out) {
    MixtureSpec spec;
    try {
        if (!a.components.empty() && !a.spec.empty()) {
            throw UsageError("--components and --spec are mutually exclusive");
        }
        if (!a.components.empty()) {
            spec.components = parse_mixture_components(a.components);
            if (!a.n) {
                throw UsageError("--components needs --n");
            }
        } else if (!a.spec.empty()) {
            spec = read_mixture_spec(a.spec);
        } else {
            throw UsageError("give --components SPEC or --spec PATH");
        }
        if (a.n) {
            spec.n = *a.n;
        }
        if (a.seed) {
            spec.seed = *a.seed;
        }
        validate(spec);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Io) {
            throw;
        }
        throw UsageError(std::string("invalid mixture spec: ") + e.what());
    }

    const Dataset data = generate_mixture(spec);
    write_csv(data, a.out);
    out << "generated " << data.size() << " vectors (dim " << data.dim() << ", "
        << spec.components.size() << " components); written to " << a.out << '\n';
    return kExitOk;
}

std::pair<std::size_t, std::size_t> parse_projection(const std::string& text) {
    const auto comma = text.find(',');
    std::size_t jx = 0;
    std::size_t jy = 0;
    std::size_t used_x = 0;
    std::size_t used_y = 0;
    try {
        if (comma == std::string::npos) {
            throw std::invalid_argument("no comma");
        }
        const std::string xs = text.substr(0, comma);
        const std::string ys = text.substr(comma + 1);
        if (xs.empty() || ys.empty() || xs.front() == '-' || ys.front() == '-') {
            throw std::invalid_argument("sign");
        }
        jx = std::stoul(xs, &used_x);
        jy = std::stoul(ys, &used_y);
        if (used_x != xs.size() || used_y != ys.size()) {
            throw std::invalid_argument("trailing");
        }
    } catch (const std::logic_error&) {
        throw UsageError("--proj expects two dimension indices like 0,1, got '" + text + "'");
    }
    return {jx, jy};
}

int cmd_report(const ReportArgs& a, std::ostream& out) {
    const auto [jx, jy] = parse_projection(a.proj);
    const ClusterModel model = read_model(a.model);
    const Dataset data = read_csv(a.input);
    write_text_file(a.out, render_projection_svg(model, data, jx, jy));
    out << "projected " << data.size() << " vectors and " << model.regions.size()
        << " regions onto x" << jx << ", x" << jy << "; written to " << a.out << '\n';
    return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Probability-space clustering", "probclust"};
    app.require_subcommand(1);

    ClusterArgs ca;
    auto* cluster_cmd = app.add_subcommand("cluster", "Cluster a CSV dataset and write a model");
    cluster_cmd->add_option("--input", ca.input, "CSV dataset")->required();
    cluster_cmd->add_option("--out", ca.out, "model file to write")->required();
    cluster_cmd->add_option("--target-k", ca.target_k, "stop once at most this many clusters")
        ->check(CLI::PositiveNumber);
    cluster_cmd->add_option("--max-levels", ca.max_levels, "split levels")
        ->check(CLI::PositiveNumber)->capture_default_str();
    cluster_cmd->add_option("--delta", ca.delta, "convergence tolerance (squared step)")
        ->check(CLI::PositiveNumber)->capture_default_str();
    cluster_cmd->add_option("--max-migrations", ca.max_migrations, "migrations per convergence")
        ->check(CLI::PositiveNumber)->capture_default_str();
    cluster_cmd->add_option("--max-convergences", ca.max_convergences, "convergences per round")
        ->check(CLI::PositiveNumber)->capture_default_str();
    cluster_cmd->add_option("--mu", ca.mu, "round cap")
        ->check(CLI::PositiveNumber)->capture_default_str();
    cluster_cmd->add_flag("--no-merge", ca.no_merge, "keep overlapping regions apart");
    cluster_cmd->add_option("--seed", ca.seed, "seed")->capture_default_str();
    cluster_cmd->add_option("--report", ca.report, "write a JSON run report here");

    AssignArgs aa;
    auto* assign_cmd = app.add_subcommand("assign", "Assign vectors to the regions of a model");
    assign_cmd->add_option("--model", aa.model, "model file")->required();
    assign_cmd->add_option("--input", aa.input, "CSV dataset")->required();
    assign_cmd->add_option("--out", aa.out, "output: region_id,distance,inside per line")
        ->required();

    CheckArgs ka;
    auto* check_cmd = app.add_subcommand("check-metric", "Sample the metric axioms");
    auto* model_opt = check_cmd->add_option("--model", ka.model, "model whose spaces to check");
    auto* random_opt = check_cmd->add_option("--random", ka.random, "number of random spaces")
                           ->check(CLI::PositiveNumber);
    check_cmd->add_option("--dim", ka.dim, "dimension of random spaces")
        ->check(CLI::PositiveNumber);
    check_cmd->add_option("--trials", ka.trials, "triples to sample")
        ->check(CLI::PositiveNumber)->capture_default_str();
    check_cmd->add_option("--seed", ka.seed, "seed")->capture_default_str();
    model_opt->excludes(random_opt);

    GenArgs ga;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a labelled Gaussian mixture CSV");
    gen_cmd->add_option("--components", ga.components, "w|c0,c1,..|s0,s1,..;w|...");
    gen_cmd->add_option("--spec", ga.spec, "JSON mixture spec file");
    gen_cmd->add_option("--n", ga.n, "sample count")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", ga.seed, "seed");
    gen_cmd->add_option("--out", ga.out, "CSV to write")->required();

    ReportArgs ra;
    auto* report_cmd = app.add_subcommand("report", "Render a 2-D projection as SVG");
    report_cmd->add_option("--model", ra.model, "model file")->required();
    report_cmd->add_option("--input", ra.input, "CSV dataset")->required();
    report_cmd->add_option("--proj", ra.proj, "two dimension indices")->capture_default_str();
    report_cmd->add_option("--out", ra.out, "SVG to write")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "probclust: " << e.what() << '\n';
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return kExitUsage;
    }

    try {
        if (cluster_cmd->parsed()) {
            return cmd_cluster(ca, out);
        }
        if (assign_cmd->parsed()) {
            return cmd_assign(aa, out);
        }
        if (check_cmd->parsed()) {
            return cmd_check_metric(ka, out);
        }
        if (gen_cmd->parsed()) {
            return cmd_gen(ga, out);
        }
        return cmd_report(ra, out);
    } catch (const UsageError& e) {
        err << "probclust: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "probclust: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "probclust: " << e.what() << '\n';
        return kExitDomain;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, out, err);
}

}  // namespace probclust::cli
