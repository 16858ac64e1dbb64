#pragma once

#include <cstdint>
#include <functional>
#include <json.hpp>
#include <string>
#include <vector>

namespace siegel {

enum class Verdict { Pass, Fail, Flag, Skip };
const char* to_string(Verdict v) noexcept;

struct CriterionResult {
  std::string id;
  Verdict verdict = Verdict::Skip;
  std::string summary;
  nlohmann::json measured;
  double seconds = 0.0;  // kept out of the JSON summary
};

struct AcceptanceOptions {
  bool slow = false;
  double tol = 1e-7;
  std::uint64_t seed = 20240601;
  std::string cache_dir;
  /// Run only these ids (empty: all).
  std::vector<std::string> only;
};

/// Runs A1..A12 in order; on_result is called as each finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

nlohmann::json acceptance_json(const std::vector<CriterionResult>& results, const AcceptanceOptions& options);

/// 0 when nothing failed or was flagged, 2 when something was flagged, 1 on failure.
int acceptance_exit_code(const std::vector<CriterionResult>& results);

}  // namespace siegel
