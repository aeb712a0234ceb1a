#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stakecast {

enum class ErrorCode {
    InvalidSeries,
    GapTooLarge,
    EmptyIntersection,
    ParseError,
    DuplicateDate,
    MissingColumn,
    InvalidSpec,
    InsufficientHistory,
    FrameTooShort,
    MissingFeature,
    DegenerateSystem,
    DimensionMismatch,
    NoFolds,
    ZeroMean,
    LengthMismatch,
    EmptyTrace,
    Io,
};

/// Stable identifier used in diagnostics, e.g. "MissingFeature".
std::string_view error_name(ErrorCode code) noexcept;

/// Every failure raised by the library. `detail()` is the free-form part of
/// the message; `what()` is "<name>: <detail>".
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string detail);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace stakecast
