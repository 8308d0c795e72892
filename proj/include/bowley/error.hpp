#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bowley {

/// Failure categories raised by the library. The CLI maps every one of them
/// to exit code 1.
enum class ErrorCode {
    MalformedCsv,
    NonPositiveValue,
    NonUniformYearStep,
    TooFewRows,
    DegenerateDesign,
    NonFiniteResidual,
    SingularNormalMatrix,
    NonFiniteValue,
    InitOutOfRange,
    LengthMismatch,
    ZeroDivisor,
    NonPositiveRate,
    NonPositiveInput,
    ZeroExponent,
    OutOfRange,
    ZeroScaleCoefficient,
    ZeroDenominator,
    AtCapacity,
    DegenerateFit,
    EmptySeries,
    IoError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MalformedCsv: return "MalformedCsv";
        case ErrorCode::NonPositiveValue: return "NonPositiveValue";
        case ErrorCode::NonUniformYearStep: return "NonUniformYearStep";
        case ErrorCode::TooFewRows: return "TooFewRows";
        case ErrorCode::DegenerateDesign: return "DegenerateDesign";
        case ErrorCode::NonFiniteResidual: return "NonFiniteResidual";
        case ErrorCode::SingularNormalMatrix: return "SingularNormalMatrix";
        case ErrorCode::NonFiniteValue: return "NonFiniteValue";
        case ErrorCode::InitOutOfRange: return "InitOutOfRange";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::ZeroDivisor: return "ZeroDivisor";
        case ErrorCode::NonPositiveRate: return "NonPositiveRate";
        case ErrorCode::NonPositiveInput: return "NonPositiveInput";
        case ErrorCode::ZeroExponent: return "ZeroExponent";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::ZeroScaleCoefficient: return "ZeroScaleCoefficient";
        case ErrorCode::ZeroDenominator: return "ZeroDenominator";
        case ErrorCode::AtCapacity: return "AtCapacity";
        case ErrorCode::DegenerateFit: return "DegenerateFit";
        case ErrorCode::EmptySeries: return "EmptySeries";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace bowley
