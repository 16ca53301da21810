#ifndef PROBCLUST_DATA_IO_HPP
#define PROBCLUST_DATA_IO_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "probclust/cluster_engine.hpp"
#include "probclust/prob_metric.hpp"

namespace probclust {

/// Default feature width of the traffic-light feature vectors.
inline constexpr std::size_t kDefaultFeatureWidth = 18;

struct Dataset {
    std::vector<FeatVec> vectors;
    std::optional<std::vector<int>> labels;
    std::string source;
    std::string fingerprint;

    std::size_t size() const noexcept { return vectors.size(); }
    std::size_t dim() const noexcept { return vectors.empty() ? 0 : vectors.front().size(); }

    bool operator==(const Dataset&) const = default;
};

/// 64-bit FNV-1a over the dimension and the IEEE-754 bit patterns of every
/// entry, rendered as "fnv1a64:<16 hex digits>".
std::string content_fingerprint(std::span<const FeatVec> vectors);

/// Validates shape (non-empty, equal widths, finite entries, label count) and
/// fills in the fingerprint.
Dataset make_dataset(std::vector<FeatVec> vectors, std::optional<std::vector<int>> labels,
                     std::string source);

enum class CsvHeader { Auto, Present, Absent };
enum class CsvLabels { Auto, Present, Absent };

struct CsvOptions {
    /// Auto: the first row is a header iff some cell is not a number.
    CsvHeader header = CsvHeader::Auto;
    /// Auto: the last column holds labels iff the header names it "label".
    CsvLabels labels = CsvLabels::Auto;
};

Dataset parse_csv(std::string_view text, const CsvOptions& options = {},
                  std::string source = "<memory>");
Dataset read_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Writes a header row (x0..x{d-1}[,label]) followed by one row per vector,
/// numbers in shortest round-trip form.
std::string format_csv(const Dataset& dataset);
void write_csv(const Dataset& dataset, const std::filesystem::path& path);

inline constexpr int kModelFormatVersion = 1;

std::string model_to_string(const ClusterModel& model);
ClusterModel model_from_string(std::string_view text);
void write_model(const ClusterModel& model, const std::filesystem::path& path);
ClusterModel read_model(const std::filesystem::path& path);

struct MixtureComponent {
    double weight = 1.0;
    FeatVec center;
    std::vector<double> sigma;  ///< per dimension

    bool operator==(const MixtureComponent&) const = default;
};

struct MixtureSpec {
    std::vector<MixtureComponent> components;
    std::size_t n = 0;
    std::uint64_t seed = 0;

    bool operator==(const MixtureSpec&) const = default;
};

/// Throws SpecValidation unless weights lie in (0,1] and sum to 1 within
/// 1e-9, sigmas are > 0, and all components share one dimension.
void validate(const MixtureSpec& spec);

/// Draws spec.n labelled samples; deterministic in spec.seed.
Dataset generate_mixture(const MixtureSpec& spec);

/// Parses "w|c0,c1,...|s0,s1,...;w|...". A single sigma is broadcast to every
/// dimension. n and seed are left at zero for the caller to fill.
std::vector<MixtureComponent> parse_mixture_components(std::string_view text);

/// JSON: {"components":[{"weight":..,"center":[..],"sigma":[..]|x}], "n":.., "seed":..}
MixtureSpec read_mixture_spec(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

}  // namespace probclust

#endif  // PROBCLUST_DATA_IO_HPP
