#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace decentral {

enum class ErrorCode {
    // Input validation.
    AllZero,
    NegativeValue,
    InvalidArgument,
    SchemaMismatch,
    RowParseError,
    NonMonotoneDates,
    NonpositivePrice,
    ConfigError,
    IoError,
    // Estimation.
    InsufficientData,
    InsufficientRows,
    RankDeficient,
    DegenerateCovariance,
    ZeroVariance,
    WindowNotCovered,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::AllZero: return "AllZero";
        case ErrorCode::NegativeValue: return "NegativeValue";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::SchemaMismatch: return "SchemaMismatch";
        case ErrorCode::RowParseError: return "RowParseError";
        case ErrorCode::NonMonotoneDates: return "NonMonotoneDates";
        case ErrorCode::NonpositivePrice: return "NonpositivePrice";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::InsufficientRows: return "InsufficientRows";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::DegenerateCovariance: return "DegenerateCovariance";
        case ErrorCode::ZeroVariance: return "ZeroVariance";
        case ErrorCode::WindowNotCovered: return "WindowNotCovered";
    }
    return "Unknown";
}

/// True for failures caused by malformed or out-of-contract input, false for
/// failures raised while estimating on otherwise valid data.
constexpr bool is_validation_error(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InsufficientData:
        case ErrorCode::InsufficientRows:
        case ErrorCode::RankDeficient:
        case ErrorCode::DegenerateCovariance:
        case ErrorCode::ZeroVariance:
        case ErrorCode::WindowNotCovered:
            return false;
        default:
            return true;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace decentral
