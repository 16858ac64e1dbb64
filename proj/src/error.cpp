#include "siegel/error.hpp"

namespace siegel {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::RepeatedRoot: return "RepeatedRoot";
    case ErrorCode::SingularPlaneCurve: return "SingularPlaneCurve";
    case ErrorCode::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorCode::BasisVerificationFailed: return "BasisVerificationFailed";
    case ErrorCode::PointNotOnCurve: return "PointNotOnCurve";
    case ErrorCode::ChartInvalid: return "ChartInvalid";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SingularityTooStrong: return "SingularityTooStrong";
    case ErrorCode::AmbiguousRank: return "AmbiguousRank";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::OffDiagonalUnsupported: return "OffDiagonalUnsupported";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::WeierstrassPoleUnsupported: return "WeierstrassPoleUnsupported";
    case ErrorCode::PVNoConvergence: return "PVNoConvergence";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string module, const std::string& message)
    : std::runtime_error("[" + module + "] " + to_string(code) + ": " + message),
      code_(code),
      module_(std::move(module)) {}

}  // namespace siegel
