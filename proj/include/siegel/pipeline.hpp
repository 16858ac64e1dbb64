#pragma once

#include <cstdint>
#include <json.hpp>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "siegel/curvature.hpp"
#include "siegel/hodge.hpp"
#include "siegel/quadrics.hpp"

namespace siegel {

struct SweepSpec {
  enum class Kind { Special, Grid, Path };
  Kind kind = Kind::Special;
  int nx = 0, ny = 0;
  std::string path;
  std::string text = "special";
};

/// special | grid:NxM | path:file
SweepSpec parse_sweep(const std::string& text);

struct LabeledPoints {
  std::vector<ChartPoint> points;
  std::vector<std::string> ids;
};

/// Supported special points followed by the sweep points (none extra for
/// Special). Grid points cover the square of half-width 1.5 max(1, |e|).
LabeledPoints sweep_points(const CurveModel& curve, const SweepSpec& sweep);

struct AnalyzeOptions {
  double tol = 1e-7;
  std::uint64_t seed = 1;
  SweepSpec sweep;
  std::string cache_dir;
};

struct Analysis {
  std::shared_ptr<const CurveModel> curve;
  HodgeFrame frame;
  QuadricSpace quadrics;
  bool have_quadrics = false;
  /// Principal angle between I2 built from two disjoint point sets.
  double seed_angle = 0.0;
  std::optional<RankDecision> mu2;
  CurvatureReport report;
  std::vector<std::string> flags;
};

Analysis analyze(const CurveSpec& spec, const AnalyzeOptions& options);

nlohmann::json decision_json(const RankDecision& d);
/// Everything except timestamps and cache provenance, so that repeated runs
/// are byte-identical.
nlohmann::json analysis_json(const Analysis& a, const AnalyzeOptions& options);

/// <stem>.csv, <stem>_mu2.csv, <stem>.json, plus the sidecar <stem>.log.
void write_analysis(const Analysis& a, const AnalyzeOptions& options, const std::string& out_dir,
                    const std::string& stem);

}  // namespace siegel
