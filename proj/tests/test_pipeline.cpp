#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "siegel/io.hpp"
#include "siegel/pipeline.hpp"
#include "support.hpp"

using namespace siegel;
using support::code_of;

namespace fs = std::filesystem;

namespace {

const char* kGenus2 = R"({"family": "hyperelliptic",
  "coefficients": [["-1", "0"], "0", 0, ["0", "0"], 0, ["1", "0"]],
  "label": "g2"})";

std::string scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("siegel_pipeline_" + name);
  fs::remove_all(p);
  return p.string();
}

}  // namespace

TEST_CASE("curve files") {
  const CurveSpec s = parse_curve_spec(kGenus2);
  CHECK(s.family == Family::Hyperelliptic);
  CHECK(s.label == "g2");
  REQUIRE(s.coefficients.size() == 6);
  CHECK(s.coefficients[0].re == "-1");
  CHECK(build_curve(s).genus() == 2);

  const CurveSpec again = parse_curve_spec(curve_spec_json(s));
  CHECK(curve_spec_json(again) == curve_spec_json(s));
  CHECK(build_curve(again).canonical_key() == build_curve(s).canonical_key());

  CHECK(code_of([] { parse_curve_spec("{"); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { parse_curve_spec(R"({"family": "quartic", "coefficients": [1]})"); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { parse_curve_spec(R"({"family": "hyperelliptic", "coefficients": [["x", "0"]]})"); }) ==
        ErrorCode::InvalidInput);
  CHECK(code_of([] { read_curve_spec("/nonexistent/curve.json"); }) == ErrorCode::Io);
  try {
    parse_curve_spec("[]");
  } catch (const Error& e) {
    CHECK(e.module() == "cli");
  }
}

TEST_CASE("sweep parsing") {
  CHECK(parse_sweep("special").kind == SweepSpec::Kind::Special);
  const SweepSpec g = parse_sweep("grid:10x4");
  CHECK(g.kind == SweepSpec::Kind::Grid);
  CHECK(g.nx == 10);
  CHECK(g.ny == 4);
  CHECK(parse_sweep("path:here.txt").path == "here.txt");
  for (const char* bad : {"grid:", "grid:0x3", "grid:3x", "grid:3x3x", "path:", "spiral"})
    CHECK(code_of([&] { parse_sweep(bad); }) == ErrorCode::InvalidInput);

  const CurveModel c = support::hyper(5);
  const auto grid = sweep_points(c, g);
  CHECK(grid.points.size() == 5 + 40);
  CHECK(grid.ids.size() == grid.points.size());

  const std::string dir = scratch("path");
  fs::create_directories(dir);
  write_text_file(dir + "/p.txt", "# a path\n0.3 0.1\n0.5 -0.2 1\n");
  const auto path = sweep_points(c, parse_sweep("path:" + dir + "/p.txt"));
  REQUIRE(path.points.size() == 5 + 2);
  CHECK(path.points[6].sheet == 1);
  CHECK(path.ids[5] == "t0");
}

TEST_CASE("genus 2 has no quadrics and flat profile") {
  AnalyzeOptions o;
  o.cache_dir = scratch("g2cache");
  const Analysis a = analyze(parse_curve_spec(kGenus2), o);
  CHECK(a.quadrics.dimension() == 0);
  CHECK(a.flags.empty());
  REQUIRE(a.report.rows.size() == 5);
  for (const auto& r : a.report.rows) {
    CHECK(r.ok);
    CHECK(r.h == -1.0);
  }
  CHECK(analysis_json(a, o)["status"] == "pass");
}

TEST_CASE("outputs are identical with a cold and a warm cache") {
  const CurveSpec s = make_spec(Family::Hyperelliptic, support::monic_minus_one(8), "g3hyp");
  AnalyzeOptions o;
  o.cache_dir = scratch("cache");
  const std::string out = scratch("out");
  const Analysis cold = analyze(s, o);
  CHECK_FALSE(cold.frame.from_cache);
  write_analysis(cold, o, out + "/cold", "g3");
  const Analysis warm = analyze(s, o);
  CHECK(warm.frame.from_cache);
  write_analysis(warm, o, out + "/warm", "g3");
  for (const char* f : {"g3.json", "g3.csv", "g3_mu2.csv"})
    CHECK(read_text_file(out + "/cold/" + f) == read_text_file(out + "/warm/" + f));
  CHECK(read_text_file(out + "/cold/g3.log") != read_text_file(out + "/warm/g3.log"));

  // Eight finite Weierstrass points, all at H = -1.
  REQUIRE(cold.report.rows.size() == 8);
  for (const auto& r : cold.report.rows) CHECK(std::abs(r.h + 1.0) <= 1e-3);
}
