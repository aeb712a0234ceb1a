#include "stakecast/errors.hpp"

namespace stakecast {

std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidSeries: return "InvalidSeries";
        case ErrorCode::GapTooLarge: return "GapTooLarge";
        case ErrorCode::EmptyIntersection: return "EmptyIntersection";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DuplicateDate: return "DuplicateDate";
        case ErrorCode::MissingColumn: return "MissingColumn";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::InsufficientHistory: return "InsufficientHistory";
        case ErrorCode::FrameTooShort: return "FrameTooShort";
        case ErrorCode::MissingFeature: return "MissingFeature";
        case ErrorCode::DegenerateSystem: return "DegenerateSystem";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NoFolds: return "NoFolds";
        case ErrorCode::ZeroMean: return "ZeroMean";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::EmptyTrace: return "EmptyTrace";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

namespace {
std::string compose(ErrorCode code, const std::string& detail) {
    std::string msg(error_name(code));
    if (!detail.empty()) {
        msg += ": ";
        msg += detail;
    }
    return msg;
}
}  // namespace

Error::Error(ErrorCode code, std::string detail)
    : std::runtime_error(compose(code, detail)), code_(code), detail_(std::move(detail)) {}

}  // namespace stakecast
