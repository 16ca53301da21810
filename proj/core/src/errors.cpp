#include "probclust/errors.hpp"

namespace probclust {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DimensionMismatch: return "dimension-mismatch";
        case ErrorKind::EmptyInput: return "empty-input";
        case ErrorKind::EmptyRegion: return "empty-region";
        case ErrorKind::InvalidK: return "invalid-k";
        case ErrorKind::NotFitted: return "not-fitted";
        case ErrorKind::InsufficientInput: return "insufficient-input";
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Version: return "version";
        case ErrorKind::Format: return "format";
        case ErrorKind::SpecValidation: return "spec-validation";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

namespace {

std::string located(std::size_t line, std::size_t column, const std::string& what) {
    std::string out = "line " + std::to_string(line);
    if (column != 0) {
        out += ", column " + std::to_string(column);
    }
    return out + ": " + what;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : Error(ErrorKind::Parse, located(line, column, what)), line_(line), column_(column) {}

void throw_dimension_mismatch(std::size_t expected, std::size_t got,
                              std::string_view context) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(context) + ": expected dimension " + std::to_string(expected) +
                    ", got " + std::to_string(got));
}

}  // namespace probclust
