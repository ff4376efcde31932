#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wib {

enum class Errc {
    DimensionMismatch,
    NonPositiveVariance,
    TiedOptimum,
    TooFewArms,
    InvalidProfile,
    NegativePower,
    MissingObservation,
    AllZeroPower,
    InvalidParams,
    ZeroSamples,
    InsufficientData,
    WrongKind,
    ProfileMismatch,
    NonPositiveArgument,
    OddDof,
    NegativeX,
    ZeroNoiseBin,
    TiedPeak,
    EmptyInput,
    NoData,
    ParseError,
    ValidationError,
    IoError,
};

std::string_view to_string(Errc code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

inline std::string_view to_string(Errc code) {
    switch (code) {
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::NonPositiveVariance: return "NonPositiveVariance";
        case Errc::TiedOptimum: return "TiedOptimum";
        case Errc::TooFewArms: return "TooFewArms";
        case Errc::InvalidProfile: return "InvalidProfile";
        case Errc::NegativePower: return "NegativePower";
        case Errc::MissingObservation: return "MissingObservation";
        case Errc::AllZeroPower: return "AllZeroPower";
        case Errc::InvalidParams: return "InvalidParams";
        case Errc::ZeroSamples: return "ZeroSamples";
        case Errc::InsufficientData: return "InsufficientData";
        case Errc::WrongKind: return "WrongKind";
        case Errc::ProfileMismatch: return "ProfileMismatch";
        case Errc::NonPositiveArgument: return "NonPositiveArgument";
        case Errc::OddDof: return "OddDof";
        case Errc::NegativeX: return "NegativeX";
        case Errc::ZeroNoiseBin: return "ZeroNoiseBin";
        case Errc::TiedPeak: return "TiedPeak";
        case Errc::EmptyInput: return "EmptyInput";
        case Errc::NoData: return "NoData";
        case Errc::ParseError: return "ParseError";
        case Errc::ValidationError: return "ValidationError";
        case Errc::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace wib
