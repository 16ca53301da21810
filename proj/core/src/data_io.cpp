#include "probclust/data_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "probclust/errors.hpp"

namespace probclust {

namespace {

std::string_view trim(std::string_view s) {
    const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r'; };
    while (!s.empty() && !not_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && !not_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_cells(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return cells;
}

std::optional<double> parse_number(std::string_view cell) {
    if (!cell.empty() && cell.front() == '+') {
        cell.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || cell.empty() ||
        !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::optional<int> parse_label(std::string_view cell) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || cell.empty()) {
        return std::nullopt;
    }
    return value;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string content_fingerprint(std::span<const FeatVec> vectors) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t word) {
        for (int b = 0; b < 8; ++b) {
            h ^= (word >> (8 * b)) & 0xffU;
            h *= 1099511628211ULL;
        }
    };
    mix(vectors.size());
    mix(vectors.empty() ? 0 : vectors.front().size());
    for (const auto& v : vectors) {
        for (double x : v) {
            std::uint64_t bits = 0;
            std::memcpy(&bits, &x, sizeof(bits));
            mix(bits);
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + hex;
}

Dataset make_dataset(std::vector<FeatVec> vectors, std::optional<std::vector<int>> labels,
                     std::string source) {
    if (vectors.empty()) {
        throw Error(ErrorKind::EmptyInput, "dataset has no vectors");
    }
    const std::size_t dim = vectors.front().size();
    for (const auto& v : vectors) {
        require_same_dim(dim, v.size(), "dataset");
        validate_feature(v);
    }
    if (labels && labels->size() != vectors.size()) {
        throw Error(ErrorKind::InvalidArgument, "label count differs from vector count");
    }
    Dataset ds;
    ds.fingerprint = content_fingerprint(vectors);
    ds.vectors = std::move(vectors);
    ds.labels = std::move(labels);
    ds.source = std::move(source);
    return ds;
}

Dataset parse_csv(std::string_view text, const CsvOptions& options, std::string source) {
    std::vector<FeatVec> vectors;
    std::vector<int> labels;
    bool header_checked = false;
    bool has_labels = options.labels == CsvLabels::Present;
    std::size_t columns = 0;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto cells = split_cells(line);

        if (!header_checked) {
            header_checked = true;
            bool is_header = options.header == CsvHeader::Present;
            if (options.header == CsvHeader::Auto) {
                for (auto c : cells) {
                    is_header = is_header || !parse_number(c).has_value();
                }
            }
            if (is_header) {
                if (options.labels == CsvLabels::Auto) {
                    has_labels = cells.size() >= 2 && cells.back() == "label";
                }
                continue;
            }
        }

        if (columns == 0) {
            columns = cells.size();
            if (has_labels && columns < 2) {
                throw ParseError(line_no, 0, "a label column needs at least one feature column");
            }
        } else if (cells.size() != columns) {
            throw ParseError(line_no, 0,
                             "expected " + std::to_string(columns) + " columns, got " +
                                 std::to_string(cells.size()));
        }

        const std::size_t features = has_labels ? columns - 1 : columns;
        FeatVec v(features);
        for (std::size_t c = 0; c < features; ++c) {
            const auto value = parse_number(cells[c]);
            if (!value) {
                throw ParseError(line_no, c + 1,
                                 "not a finite number: '" + std::string(cells[c]) + "'");
            }
            v[c] = *value;
        }
        if (has_labels) {
            const auto label = parse_label(cells.back());
            if (!label) {
                throw ParseError(line_no, columns,
                                 "not an integer label: '" + std::string(cells.back()) + "'");
            }
            labels.push_back(*label);
        }
        vectors.push_back(std::move(v));
    }

    if (vectors.empty()) {
        throw Error(ErrorKind::EmptyInput, source + ": no data rows");
    }
    std::optional<std::vector<int>> maybe_labels;
    if (has_labels) {
        maybe_labels = std::move(labels);
    }
    return make_dataset(std::move(vectors), std::move(maybe_labels), std::move(source));
}

Dataset read_csv(const std::filesystem::path& path, const CsvOptions& options) {
    return parse_csv(read_text_file(path), options, path.string());
}

std::string format_csv(const Dataset& dataset) {
    std::string out;
    const std::size_t dim = dataset.dim();
    for (std::size_t j = 0; j < dim; ++j) {
        out += (j ? ",x" : "x") + std::to_string(j);
    }
    if (dataset.labels) {
        out += ",label";
    }
    out += '\n';
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            if (j) {
                out += ',';
            }
            out += format_double(dataset.vectors[i][j]);
        }
        if (dataset.labels) {
            out += ',' + std::to_string((*dataset.labels)[i]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const Dataset& dataset, const std::filesystem::path& path) {
    write_text_file(path, format_csv(dataset));
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot write " + path.string());
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw Error(ErrorKind::Io, "write failed for " + path.string());
    }
}

}  // namespace probclust
