#include <cmath>

#include <json.hpp>

#include "probclust/data_io.hpp"
#include "probclust/errors.hpp"

namespace probclust {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void format_error(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::Format, "model field '" + path + "': " + what);
}

const json& field(const json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) {
        format_error(path, "expected an object");
    }
    const auto it = obj.find(key);
    if (it == obj.end()) {
        format_error(path.empty() ? key : path + "." + key, "missing");
    }
    return *it;
}

std::string child(const std::string& path, const char* key) {
    return path.empty() ? key : path + "." + key;
}

std::string child(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

double as_double(const json& j, const std::string& path) {
    if (!j.is_number()) {
        format_error(path, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        format_error(path, "expected a finite number");
    }
    return v;
}

std::int64_t as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) {
        format_error(path, "expected an integer");
    }
    return j.get<std::int64_t>();
}

std::uint64_t as_uint(const json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        format_error(path, "expected a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

int as_int32(const json& j, const std::string& path) {
    const auto v = as_int(j, path);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        format_error(path, "integer out of range");
    }
    return static_cast<int>(v);
}

bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) {
        format_error(path, "expected true or false");
    }
    return j.get<bool>();
}

const json& as_array(const json& j, const std::string& path) {
    if (!j.is_array()) {
        format_error(path, "expected an array");
    }
    return j;
}

std::vector<double> as_doubles(const json& j, const std::string& path) {
    std::vector<double> out;
    const auto& arr = as_array(j, path);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(as_double(arr[i], child(path, i)));
    }
    return out;
}

void check_version(const json& root) {
    const json& v = field(root, "", "version");
    std::optional<std::int64_t> version;
    if (v.is_number_integer()) {
        version = v.get<std::int64_t>();
    } else if (v.is_string()) {
        try {
            std::size_t used = 0;
            const std::string s = v.get<std::string>();
            const long long parsed = std::stoll(s, &used);
            if (used == s.size()) {
                version = parsed;
            }
        } catch (const std::exception&) {
        }
    }
    if (!version || *version != kModelFormatVersion) {
        throw Error(ErrorKind::Version, "unsupported model version " + v.dump() + " (expected " +
                                            std::to_string(kModelFormatVersion) + ")");
    }
}

}  // namespace

std::string model_to_string(const ClusterModel& model) {
    ordered_json root;
    root["version"] = kModelFormatVersion;
    root["dim"] = model.dim;

    ordered_json regions = ordered_json::array();
    for (const auto& r : model.regions) {
        if (!r.space) {
            throw Error(ErrorKind::NotFitted, "cannot serialize an unfitted region");
        }
        ordered_json jr;
        jr["id"] = r.id;
        jr["center"] = r.space->center;
        jr["scale"] = r.space->scale;
        jr["count"] = r.space->count;
        jr["members"] = r.members;
        regions.push_back(std::move(jr));
    }
    root["regions"] = std::move(regions);

    ordered_json log = ordered_json::array();
    for (const auto& e : model.merge_log) {
        log.push_back({{"survivor", e.survivor}, {"absorbed", e.absorbed}, {"distance", e.distance}});
    }
    root["merge_log"] = std::move(log);

    const auto& cfg = model.config;
    ordered_json jc;
    jc["target_k"] = cfg.target_k ? ordered_json(*cfg.target_k) : ordered_json(nullptr);
    jc["max_levels"] = cfg.max_levels;
    jc["merge_enabled"] = cfg.merge_enabled;
    jc["sdl"] = {{"delta", cfg.sdl.delta},
                 {"max_migrations", cfg.sdl.max_migrations},
                 {"max_convergences", cfg.sdl.max_convergences},
                 {"mu", cfg.sdl.mu},
                 {"seed", cfg.sdl.seed}};
    root["config"] = std::move(jc);
    root["dataset_fingerprint"] = model.dataset_fingerprint;
    return root.dump(2) + "\n";
}

ClusterModel model_from_string(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Format, std::string("model is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        format_error("", "expected a top-level object");
    }
    check_version(root);

    ClusterModel model;
    model.dim = as_uint(field(root, "", "dim"), "dim");

    const auto& regions = as_array(field(root, "", "regions"), "regions");
    for (std::size_t i = 0; i < regions.size(); ++i) {
        const std::string p = child("regions", i);
        Region r;
        r.id = as_int32(field(regions[i], p, "id"), child(p, "id"));
        ProbSpace s;
        s.center = as_doubles(field(regions[i], p, "center"), child(p, "center"));
        s.scale = as_doubles(field(regions[i], p, "scale"), child(p, "scale"));
        s.count = as_uint(field(regions[i], p, "count"), child(p, "count"));
        if (s.center.size() != model.dim) {
            format_error(child(p, "center"), "length differs from dim");
        }
        if (s.scale.size() != model.dim) {
            format_error(child(p, "scale"), "length differs from dim");
        }
        if (regions[i].contains("members")) {
            const std::string mp = child(p, "members");
            const auto& members = as_array(regions[i]["members"], mp);
            for (std::size_t m = 0; m < members.size(); ++m) {
                r.members.push_back(as_uint(members[m], child(mp, m)));
            }
        }
        try {
            validate(s);
        } catch (const Error& e) {
            format_error(p, e.what());
        }
        r.space = std::move(s);
        model.regions.push_back(std::move(r));
    }

    const auto& log = as_array(field(root, "", "merge_log"), "merge_log");
    for (std::size_t i = 0; i < log.size(); ++i) {
        const std::string p = child("merge_log", i);
        model.merge_log.push_back({as_int32(field(log[i], p, "survivor"), child(p, "survivor")),
                                   as_int32(field(log[i], p, "absorbed"), child(p, "absorbed")),
                                   as_double(field(log[i], p, "distance"), child(p, "distance"))});
    }

    const json& jc = field(root, "", "config");
    EngineConfig& cfg = model.config;
    const json& tk = field(jc, "config", "target_k");
    if (!tk.is_null()) {
        cfg.target_k = as_int32(tk, "config.target_k");
    }
    cfg.max_levels = as_int32(field(jc, "config", "max_levels"), "config.max_levels");
    cfg.merge_enabled = as_bool(field(jc, "config", "merge_enabled"), "config.merge_enabled");
    const json& js = field(jc, "config", "sdl");
    cfg.sdl.delta = as_double(field(js, "config.sdl", "delta"), "config.sdl.delta");
    cfg.sdl.max_migrations =
        as_int32(field(js, "config.sdl", "max_migrations"), "config.sdl.max_migrations");
    cfg.sdl.max_convergences =
        as_int32(field(js, "config.sdl", "max_convergences"), "config.sdl.max_convergences");
    cfg.sdl.mu = as_int32(field(js, "config.sdl", "mu"), "config.sdl.mu");
    cfg.sdl.seed = as_uint(field(js, "config.sdl", "seed"), "config.sdl.seed");

    const json& fp = field(root, "", "dataset_fingerprint");
    if (!fp.is_string()) {
        format_error("dataset_fingerprint", "expected a string");
    }
    model.dataset_fingerprint = fp.get<std::string>();

    try {
        validate(model);
    } catch (const Error& e) {
        format_error("regions", e.what());
    }
    return model;
}

void write_model(const ClusterModel& model, const std::filesystem::path& path) {
    write_text_file(path, model_to_string(model));
}

ClusterModel read_model(const std::filesystem::path& path) {
    return model_from_string(read_text_file(path));
}

}  // namespace probclust
