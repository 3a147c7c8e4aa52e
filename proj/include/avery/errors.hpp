#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace avery {

// Stable error codes surfaced by the CLI as "ERROR <code>: <detail>".
enum class ErrorCode {
    Io,
    Parse,
    MissingTier,
    DuplicateTier,
    MonotonicityViolation,
    NonPositiveField,
    NonPositiveInput,
    NonPositiveDataSize,
    InvalidLut,
    OutOfTraceRange,
    ReversedInterval,
    EmptySegments,
    InvalidBand,
    TraceTooShort,
    InvalidScenario,
    ContextPacketNotScorable,
};

constexpr std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Io: return "E_IO";
        case ErrorCode::Parse: return "E_PARSE";
        case ErrorCode::MissingTier: return "E_MISSING_TIER";
        case ErrorCode::DuplicateTier: return "E_DUPLICATE_TIER";
        case ErrorCode::MonotonicityViolation: return "E_MONOTONICITY";
        case ErrorCode::NonPositiveField: return "E_NONPOSITIVE_FIELD";
        case ErrorCode::NonPositiveInput: return "E_NONPOSITIVE_INPUT";
        case ErrorCode::NonPositiveDataSize: return "E_NONPOSITIVE_DATA_SIZE";
        case ErrorCode::InvalidLut: return "E_INVALID_LUT";
        case ErrorCode::OutOfTraceRange: return "E_OUT_OF_TRACE_RANGE";
        case ErrorCode::ReversedInterval: return "E_REVERSED_INTERVAL";
        case ErrorCode::EmptySegments: return "E_EMPTY_SEGMENTS";
        case ErrorCode::InvalidBand: return "E_INVALID_BAND";
        case ErrorCode::TraceTooShort: return "E_TRACE_TOO_SHORT";
        case ErrorCode::InvalidScenario: return "E_INVALID_SCENARIO";
        case ErrorCode::ContextPacketNotScorable: return "E_CONTEXT_NOT_SCORABLE";
    }
    return "E_UNKNOWN";
}

class AveryError : public std::runtime_error {
public:
    AveryError(ErrorCode code, std::string detail)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
          code_(code),
          detail_(std::move(detail)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

} // namespace avery
