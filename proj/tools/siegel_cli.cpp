// siegel: analyze curves, run the acceptance criteria, scan the Siegel
// sectional curvature, evaluate the class constant.
#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>

#include "siegel/acceptance.hpp"
#include "siegel/curvature.hpp"
#include "siegel/error.hpp"
#include "siegel/io.hpp"
#include "siegel/pipeline.hpp"
#include "siegel/util.hpp"
#include "siegel/wolpert_class.hpp"

namespace {

using siegel::cd;

std::string resolve_cache_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("CACHE_DIR"); env && *env) return env;
  return ".siegel-cache";
}

void emit(const nlohmann::json& doc, const std::string& out) {
  const std::string text = doc.dump(2) + "\n";
  if (out.empty())
    std::fputs(text.c_str(), stdout);
  else
    siegel::write_text_file(out, text);
}

int cmd_analyze(const std::string& curve_path, const std::string& sweep, double tol, std::uint64_t seed,
                const std::string& cache_dir, const std::string& out) {
  const siegel::CurveSpec spec = siegel::read_curve_spec(curve_path);
  siegel::AnalyzeOptions o;
  o.tol = tol;
  o.seed = seed;
  o.sweep = siegel::parse_sweep(sweep);
  o.cache_dir = resolve_cache_dir(cache_dir);
  const siegel::Analysis a = siegel::analyze(spec, o);
  std::string stem = spec.label.empty() ? std::filesystem::path(curve_path).stem().string() : spec.label;
  const std::string dir = out.empty() ? "." : out;
  siegel::write_analysis(a, o, dir, stem);

  const auto& r = a.report;
  std::printf("curve %s  genus %d  dim I2 %d", stem.c_str(), r.genus, r.i2_dimension);
  if (a.mu2) std::printf("  mu2 rank %d", a.mu2->rank);
  std::printf("\n");
  double hmax = -INFINITY, hmin = INFINITY;
  for (const auto& row : r.rows) {
    if (!row.ok) continue;
    hmax = std::max(hmax, row.h);
    hmin = std::min(hmin, row.h);
  }
  std::printf("%zu points  H in [%.10g, %.10g]  near -1: %d  failed: %d\n", r.rows.size(), hmin, hmax,
              r.near_minus_one, r.flagged);
  for (const auto& f : a.flags) std::printf("flag: %s\n", f.c_str());
  std::printf("wrote %s/%s.{csv,json}\n", dir.c_str(), stem.c_str());
  return a.flags.empty() ? 0 : 2;
}

int cmd_acceptance(siegel::AcceptanceOptions opt, const std::string& out) {
  opt.cache_dir = resolve_cache_dir(opt.cache_dir);
  const auto results = siegel::run_acceptance(opt, [](const siegel::CriterionResult& r) {
    std::fprintf(stderr, "%-4s %s  %s\n", r.id.c_str(), siegel::to_string(r.verdict), r.summary.c_str());
  });
  emit(siegel::acceptance_json(results, opt), out);
  return siegel::acceptance_exit_code(results);
}

// Takagi form A = U diag(s) U^T with s^2 drawn from a Dirichlet law; a small
// concentration reaches the rank-one end, a large one the scalar end.
int cmd_siegel(int g, int samples, std::uint64_t seed, const std::string& out) {
  if (g < 1 || samples < 1)
    throw siegel::Error(siegel::ErrorCode::InvalidInput, "cli", "siegel needs --g >= 1 and --samples >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  double lo = INFINITY, hi = -INFINITY;
  for (int k = 0; k < samples; ++k) {
    std::gamma_distribution<double> gamma(k % 2 == 0 ? 0.2 : 50.0, 1.0);
    Eigen::MatrixXcd z(g, g);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) z(i, j) = cd(n(rng), n(rng));
    const Eigen::MatrixXcd u = z.householderQr().householderQ();
    Eigen::VectorXcd s(g);
    for (int i = 0; i < g; ++i) s(i) = std::sqrt(gamma(rng));
    const double v = siegel::siegel_sectional(u * s.asDiagonal() * u.transpose());
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  emit({{"g", g}, {"samples", samples}, {"seed", seed}, {"min", lo}, {"max", hi}, {"lower_bound", -1.0},
        {"upper_bound", -1.0 / g}},
       out);
  return 0;
}

int cmd_class(double tol, const std::string& out) {
  const auto c = siegel::class_constant(tol);
  emit({{"integral", c.integral}, {"error", c.error}, {"c", c.constant}, {"lambda_pairing", siegel::kLambdaPairing},
        {"tolerance", tol}, {"cells", c.cells}},
       out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Siegel-metric curvature along Schiffer variations"};
  app.set_version_flag("--version", siegel::kVersion);
  app.require_subcommand(1);

  std::string curve, sweep = "special", cache_dir, out;
  double tol = 1e-7;
  std::uint64_t seed = 1;
  auto* analyze = app.add_subcommand("analyze", "Gram, I2, mu2 rank and H profile of a curve");
  analyze->add_option("--curve", curve, "curve JSON file")->required();
  analyze->add_option("--sweep", sweep, "special | grid:NxM | path:file");
  analyze->add_option("--tol", tol, "Gram quadrature tolerance");
  analyze->add_option("--seed", seed, "sample seed");
  analyze->add_option("--cache-dir", cache_dir, "Gram cache (default $CACHE_DIR or .siegel-cache)");
  analyze->add_option("--out", out, "output directory");

  siegel::AcceptanceOptions acc;
  std::string acc_out;
  auto* acceptance = app.add_subcommand("acceptance", "run the acceptance criteria");
  acceptance->add_flag("--slow", acc.slow, "include A12");
  acceptance->add_option("--only", acc.only, "criterion ids");
  acceptance->add_option("--tol", acc.tol, "Gram quadrature tolerance");
  acceptance->add_option("--seed", acc.seed, "sample seed");
  acceptance->add_option("--cache-dir", acc.cache_dir, "Gram cache");
  acceptance->add_option("--out", acc_out, "JSON summary file (default stdout)");

  int g = 3, samples = 10000;
  std::uint64_t siegel_seed = 1;
  std::string siegel_out;
  auto* siegel_cmd = app.add_subcommand("siegel", "range of the Siegel sectional curvature");
  siegel_cmd->add_option("--g", g, "matrix size");
  siegel_cmd->add_option("--samples", samples, "number of random directions");
  siegel_cmd->add_option("--seed", siegel_seed, "sample seed");
  siegel_cmd->add_option("--out", siegel_out, "JSON file (default stdout)");

  double class_tol = 1e-12;
  std::string class_out;
  auto* cls = app.add_subcommand("class", "fundamental domain integral and class constant");
  cls->add_option("--tol", class_tol, "quadrature tolerance");
  cls->add_option("--out", class_out, "JSON file (default stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*analyze) return cmd_analyze(curve, sweep, tol, seed, cache_dir, out);
    if (*acceptance) return cmd_acceptance(acc, acc_out);
    if (*siegel_cmd) return cmd_siegel(g, samples, siegel_seed, siegel_out);
    if (*cls) return cmd_class(class_tol, class_out);
  } catch (const siegel::Error& e) {
    std::fprintf(stderr, "error %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
