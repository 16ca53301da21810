#ifndef PROBCLUST_ERRORS_HPP
#define PROBCLUST_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace probclust {

enum class ErrorKind {
    DimensionMismatch,
    EmptyInput,
    EmptyRegion,
    InvalidK,
    NotFitted,
    InsufficientInput,
    InvalidArgument,
    Parse,
    Version,
    Format,
    SpecValidation,
    Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit code without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised by the CSV reader; line and column are 1-based, column 0 means
/// "whole line".
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

[[noreturn]] void throw_dimension_mismatch(std::size_t expected, std::size_t got,
                                           std::string_view context);

inline void require_same_dim(std::size_t expected, std::size_t got,
                             std::string_view context) {
    if (expected != got) {
        throw_dimension_mismatch(expected, got, context);
    }
}

}  // namespace probclust

#endif  // PROBCLUST_ERRORS_HPP
