#include "siegel/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "siegel/error.hpp"
#include "siegel/gauss2.hpp"
#include "siegel/io.hpp"
#include "siegel/util.hpp"

namespace siegel {

SweepSpec parse_sweep(const std::string& text) {
  SweepSpec s;
  s.text = text;
  if (text == "special") return s;
  if (text.rfind("grid:", 0) == 0) {
    s.kind = SweepSpec::Kind::Grid;
    const std::string dims = text.substr(5);
    const auto x = dims.find('x');
    try {
      if (x == std::string::npos) throw std::invalid_argument("no x");
      std::size_t used = 0;
      s.nx = std::stoi(dims.substr(0, x), &used);
      if (used != x) throw std::invalid_argument("trailing");
      const std::string rest = dims.substr(x + 1);
      s.ny = std::stoi(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "cli", "grid sweep must look like grid:NxM, got '" + text + "'");
    }
    if (s.nx < 1 || s.ny < 1) throw Error(ErrorCode::InvalidInput, "cli", "grid dimensions must be positive");
    return s;
  }
  if (text.rfind("path:", 0) == 0) {
    s.kind = SweepSpec::Kind::Path;
    s.path = text.substr(5);
    if (s.path.empty()) throw Error(ErrorCode::InvalidInput, "cli", "path sweep needs a file");
    return s;
  }
  throw Error(ErrorCode::InvalidInput, "cli", "unknown sweep '" + text + "' (special | grid:NxM | path:file)");
}

LabeledPoints sweep_points(const CurveModel& curve, const SweepSpec& sweep) {
  LabeledPoints out;
  for (const auto& sp : special_points(curve)) {
    if (!sp.supported) continue;
    out.points.push_back(sp.point);
    out.ids.push_back(sp.point.label);
  }
  if (sweep.kind == SweepSpec::Kind::Grid) {
    double radius = 1.0;
    for (const cd e : curve.branch_points()) radius = std::max(radius, std::abs(e));
    radius *= 1.5;
    // Cell centres, so a symmetric grid never lands on the real axis by accident.
    for (int j = 0; j < sweep.ny; ++j) {
      for (int i = 0; i < sweep.nx; ++i) {
        const cd x(-radius + (i + 0.5) * 2.0 * radius / sweep.nx, -radius + (j + 0.5) * 2.0 * radius / sweep.ny);
        ChartPoint p = point_on_sheet(curve, x, 0);
        p.label = "g" + std::to_string(i) + "_" + std::to_string(j);
        out.points.push_back(p);
        out.ids.push_back(p.label);
      }
    }
  } else if (sweep.kind == SweepSpec::Kind::Path) {
    std::istringstream in(read_text_file(sweep.path));
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::string re, im;
      if (!(ls >> re)) continue;
      if (!(ls >> im)) throw Error(ErrorCode::InvalidInput, "cli", "path lines are: x_re x_im [sheet]");
      int sheet = 0;
      ls >> sheet;
      if (sheet < 0 || sheet >= curve.sheets()) throw Error(ErrorCode::InvalidInput, "cli", "sheet out of range");
      ChartPoint p = point_on_sheet(curve, cd(parse_decimal(re), parse_decimal(im)), sheet);
      p.label = "t" + std::to_string(n++);
      out.points.push_back(p);
      out.ids.push_back(p.label);
    }
  }
  return out;
}

Analysis analyze(const CurveSpec& spec, const AnalyzeOptions& options) {
  Analysis a;
  a.curve = std::make_shared<const CurveModel>(build_curve(spec));
  const CurveModel& curve = *a.curve;
  FrameOptions fo;
  fo.rel_tol = options.tol;
  fo.cache_dir = options.cache_dir;
  a.frame = build_frame(curve, fo);
  const int g = a.frame.genus();

  try {
    a.quadrics = i2_basis(a.frame, sample_points(curve, 4 * g, options.seed));
    a.have_quadrics = true;
    const QuadricSpace other = i2_basis(a.frame, sample_points(curve, 4 * g, options.seed + 1));
    a.seed_angle = principal_angle(a.quadrics, other);
    if (!a.quadrics.matches_expected()) {
      a.flags.push_back("dim I2 = " + std::to_string(a.quadrics.dimension()) + ", expected " +
                        std::to_string(a.quadrics.expected_dimension));
    }
    if (a.seed_angle > 1e-6) a.flags.push_back("I2 differs between sample seeds");
  } catch (const Error& e) {
    if (e.code() != ErrorCode::AmbiguousRank) throw;
    a.flags.push_back(std::string("I2: ") + e.what());
  }

  if (a.have_quadrics && a.quadrics.dimension() > 0) {
    a.mu2 = mu2_rank(a.frame, a.quadrics, sample_points(curve, 8 * g, options.seed + 2));
    if (a.mu2->ambiguous) a.flags.push_back("mu2 rank is ambiguous");
  }

  const LabeledPoints pts = sweep_points(curve, options.sweep);
  if (a.have_quadrics) {
    a.report = profile_F(a.frame, a.quadrics, pts.points, pts.ids);
    for (const auto& r : a.report.rows) {
      if (r.ok && r.h > -1.0 + 1e-6) a.flags.push_back("H above -1 at " + r.id);
    }
    if (a.report.flagged > 0) a.flags.push_back(std::to_string(a.report.flagged) + " profile rows failed");
  }
  return a;
}

nlohmann::json decision_json(const RankDecision& d) {
  nlohmann::json j;
  j["rank"] = d.rank;
  j["gap"] = d.gap;
  j["threshold"] = d.threshold;
  j["ambiguous"] = d.ambiguous;
  j["singular_values"] = d.singular_values;
  return j;
}

nlohmann::json analysis_json(const Analysis& a, const AnalyzeOptions& options) {
  nlohmann::json doc;
  doc["tool"] = "siegel";
  doc["version"] = kVersion;
  const CurveModel& c = *a.curve;
  doc["curve"] = {{"family", to_string(c.family())},
                  {"label", c.label()},
                  {"genus", c.genus()},
                  {"hash", hex64(fnv1a64(c.canonical_key()))}};
  doc["settings"] = {{"tol", options.tol}, {"seed", options.seed}, {"sweep", options.sweep.text}};
  doc["frame"] = {{"hash", a.frame.hash()},
                  {"gram_error", a.frame.gram_error},
                  {"gram_tolerance", a.frame.gram_tolerance},
                  {"refinements", a.frame.refinements},
                  {"basis", [&] {
                     nlohmann::json b = nlohmann::json::array();
                     for (const auto& d : a.frame.basis) b.push_back(d.describe(c.family()));
                     return b;
                   }()}};
  if (a.have_quadrics) {
    doc["quadrics"] = {{"dimension", a.quadrics.dimension()},
                       {"expected_dimension", a.quadrics.expected_dimension},
                       {"multiplication_rank", decision_json(a.quadrics.decision)},
                       {"seed_principal_angle", a.seed_angle}};
  }
  if (a.mu2) doc["mu2_rank"] = decision_json(*a.mu2);
  nlohmann::json rows = nlohmann::json::array();
  double hmax = -std::numeric_limits<double>::infinity();
  for (const auto& r : a.report.rows) {
    nlohmann::json row = {{"point_id", r.id},  {"x", {r.point.x.real(), r.point.x.imag()}},
                          {"sheet", r.point.sheet}, {"ok", r.ok}};
    if (r.ok) {
      row["alpha"] = r.alpha;
      row["mu2_norm_sq"] = r.mu2_norm_sq;
      row["H"] = r.h;
      row["gap_to_minus_one"] = r.gap;
      hmax = std::max(hmax, r.h);
    } else {
      row["error"] = r.message;
    }
    rows.push_back(row);
  }
  doc["profile"] = {{"rows", rows},
                    {"near_minus_one", a.report.near_minus_one},
                    {"near_tolerance", a.report.near_tolerance},
                    {"failed_rows", a.report.flagged}};
  if (!a.report.rows.empty() && std::isfinite(hmax)) doc["profile"]["max_H"] = hmax;
  doc["flags"] = a.flags;
  doc["status"] = a.flags.empty() ? "pass" : "flagged";
  return doc;
}

void write_analysis(const Analysis& a, const AnalyzeOptions& options, const std::string& out_dir,
                    const std::string& stem) {
  const std::filesystem::path dir(out_dir);
  std::ostringstream csv;
  write_curvature_csv(csv, a.report);
  write_text_file((dir / (stem + ".csv")).string(), csv.str());

  std::vector<Mu2Row> mu;
  for (const auto& r : a.report.rows) mu.push_back({r.id, r.point, r.alpha, r.mu2_norm_sq});
  std::ostringstream mcsv;
  write_mu2_csv(mcsv, mu);
  write_text_file((dir / (stem + "_mu2.csv")).string(), mcsv.str());

  write_text_file((dir / (stem + ".json")).string(), analysis_json(a, options).dump(2) + "\n");

  // Timestamps and cache provenance only go to the sidecar log.
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  std::ofstream log(dir / (stem + ".log"), std::ios::app);
  log << stamp << " analyze curve=" << hex64(fnv1a64(a.curve->canonical_key())) << " gram_from_cache=" << a.frame.from_cache
      << " cache_dir=" << (options.cache_dir.empty() ? "-" : options.cache_dir) << "\n";
}

}  // namespace siegel
