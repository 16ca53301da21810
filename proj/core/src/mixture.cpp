#include <cmath>
#include <random>

#include <json.hpp>

#include "probclust/data_io.hpp"
#include "probclust/errors.hpp"

namespace probclust {

namespace {

[[noreturn]] void spec_error(const std::string& what) {
    throw Error(ErrorKind::SpecValidation, "mixture spec: " + what);
}

std::vector<double> parse_list(std::string_view text, const char* what) {
    std::vector<double> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        std::string cell(text.substr(start, comma - start));
        try {
            std::size_t used = 0;
            const double v = std::stod(cell, &used);
            while (used < cell.size() && cell[used] == ' ') {
                ++used;
            }
            if (used != cell.size() || !std::isfinite(v)) {
                spec_error(std::string("bad ") + what + " value '" + cell + "'");
            }
            out.push_back(v);
        } catch (const std::logic_error&) {
            spec_error(std::string("bad ") + what + " value '" + cell + "'");
        }
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

}  // namespace

void validate(const MixtureSpec& spec) {
    if (spec.components.empty()) {
        spec_error("no components");
    }
    if (spec.n == 0) {
        spec_error("n must be >= 1");
    }
    const std::size_t dim = spec.components.front().center.size();
    if (dim == 0) {
        spec_error("component centers must have at least one dimension");
    }
    double total = 0.0;
    for (std::size_t c = 0; c < spec.components.size(); ++c) {
        const auto& comp = spec.components[c];
        const std::string tag = "component " + std::to_string(c) + ": ";
        if (!(comp.weight > 0.0 && comp.weight <= 1.0)) {
            spec_error(tag + "weight must lie in (0, 1]");
        }
        if (comp.center.size() != dim || comp.sigma.size() != dim) {
            spec_error(tag + "center and sigma must have dimension " + std::to_string(dim));
        }
        for (std::size_t j = 0; j < dim; ++j) {
            if (!std::isfinite(comp.center[j])) {
                spec_error(tag + "center must be finite");
            }
            if (!(comp.sigma[j] > 0.0) || !std::isfinite(comp.sigma[j])) {
                spec_error(tag + "sigma must be finite and > 0");
            }
        }
        total += comp.weight;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        spec_error("weights sum to " + format_double(total) + ", expected 1");
    }
}

Dataset generate_mixture(const MixtureSpec& spec) {
    validate(spec);
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<double> cumulative;
    double acc = 0.0;
    for (const auto& c : spec.components) {
        acc += c.weight;
        cumulative.push_back(acc);
    }

    std::vector<FeatVec> vectors;
    std::vector<int> labels;
    vectors.reserve(spec.n);
    labels.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double u = pick(rng) * acc;
        std::size_t c = 0;
        while (c + 1 < cumulative.size() && u >= cumulative[c]) {
            ++c;
        }
        const auto& comp = spec.components[c];
        FeatVec v(comp.center.size());
        for (std::size_t j = 0; j < v.size(); ++j) {
            v[j] = comp.center[j] + comp.sigma[j] * normal(rng);
        }
        vectors.push_back(std::move(v));
        labels.push_back(static_cast<int>(c));
    }
    return make_dataset(std::move(vectors), std::move(labels),
                        "mixture(seed=" + std::to_string(spec.seed) + ")");
}

std::vector<MixtureComponent> parse_mixture_components(std::string_view text) {
    std::vector<MixtureComponent> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t semi = text.find(';', start);
        const std::string_view part = text.substr(start, semi - start);
        const std::size_t bar1 = part.find('|');
        const std::size_t bar2 =
            bar1 == std::string_view::npos ? bar1 : part.find('|', bar1 + 1);
        if (bar2 == std::string_view::npos || part.find('|', bar2 + 1) != std::string_view::npos) {
            spec_error("component '" + std::string(part) + "' is not weight|center|sigma");
        }
        MixtureComponent comp;
        const auto weight = parse_list(part.substr(0, bar1), "weight");
        if (weight.size() != 1) {
            spec_error("component '" + std::string(part) + "' needs exactly one weight");
        }
        comp.weight = weight.front();
        comp.center = parse_list(part.substr(bar1 + 1, bar2 - bar1 - 1), "center");
        comp.sigma = parse_list(part.substr(bar2 + 1), "sigma");
        if (comp.sigma.size() == 1 && comp.center.size() > 1) {
            comp.sigma.assign(comp.center.size(), comp.sigma.front());
        }
        out.push_back(std::move(comp));
        if (semi == std::string_view::npos) {
            break;
        }
        start = semi + 1;
    }
    return out;
}

MixtureSpec read_mixture_spec(const std::filesystem::path& path) {
    using nlohmann::json;
    json root;
    try {
        root = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        spec_error(path.string() + ": " + e.what());
    }
    MixtureSpec spec;
    try {
        for (const auto& jc : root.at("components")) {
            MixtureComponent comp;
            comp.weight = jc.at("weight").get<double>();
            comp.center = jc.at("center").get<std::vector<double>>();
            const auto& sigma = jc.at("sigma");
            if (sigma.is_number()) {
                comp.sigma.assign(comp.center.size(), sigma.get<double>());
            } else {
                comp.sigma = sigma.get<std::vector<double>>();
            }
            spec.components.push_back(std::move(comp));
        }
        if (root.contains("n")) {
            spec.n = root["n"].get<std::size_t>();
        }
        if (root.contains("seed")) {
            spec.seed = root["seed"].get<std::uint64_t>();
        }
    } catch (const json::exception& e) {
        spec_error(path.string() + ": " + e.what());
    }
    return spec;
}

}  // namespace probclust
