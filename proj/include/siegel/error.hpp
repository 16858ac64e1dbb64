#pragma once

#include <stdexcept>
#include <string>

namespace siegel {

enum class ErrorCode {
  InvalidInput,
  RepeatedRoot,
  SingularPlaneCurve,
  UnsupportedDegree,
  BasisVerificationFailed,
  PointNotOnCurve,
  ChartInvalid,
  NoConvergence,
  SingularityTooStrong,
  AmbiguousRank,
  NotPositiveDefinite,
  TooFewPoints,
  OffDiagonalUnsupported,
  ZeroDirection,
  WeierstrassPoleUnsupported,
  PVNoConvergence,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a code and the name of the
/// module that produced it, so the CLI can print module-tagged diagnostics.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

}  // namespace siegel
