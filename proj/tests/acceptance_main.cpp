// Acceptance runner: one line per criterion, exit 0 / 1 (fail) / 2 (flagged).
#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "siegel/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria A1-A12"};
  siegel::AcceptanceOptions opt;
  std::string json_out;
  app.add_flag("--slow", opt.slow, "include the slow criterion A12");
  app.add_option("--only", opt.only, "criterion ids to run");
  app.add_option("--seed", opt.seed, "sample seed");
  app.add_option("--cache-dir", opt.cache_dir, "Gram cache directory");
  app.add_option("--json", json_out, "write the summary here");
  CLI11_PARSE(app, argc, argv);

  const auto results = siegel::run_acceptance(opt, [](const siegel::CriterionResult& r) {
    std::printf("%-4s %s  %s  (%.1fs)\n", r.id.c_str(), siegel::to_string(r.verdict), r.summary.c_str(), r.seconds);
    std::fflush(stdout);
  });
  if (!json_out.empty()) {
    std::FILE* f = std::fopen(json_out.c_str(), "w");
    if (f) {
      std::fputs((siegel::acceptance_json(results, opt).dump(2) + "\n").c_str(), f);
      std::fclose(f);
    }
  }
  return siegel::acceptance_exit_code(results);
}
