#include "siegel/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <random>

#include "siegel/curvature.hpp"
#include "siegel/error.hpp"
#include "siegel/gauss2.hpp"
#include "siegel/pipeline.hpp"
#include "siegel/second_kind.hpp"
#include "siegel/util.hpp"
#include "siegel/wolpert_class.hpp"

namespace siegel {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Flag: return "FLAG";
    case Verdict::Skip: return "SKIP";
  }
  return "?";
}

namespace {

constexpr double kPi = std::numbers::pi;

// Thresholds of the acceptance criteria.
constexpr double kFlatTol = 1e-3;          // |H + 1| at special points
constexpr double kGenus2Tol = 1e-10;       // |H + 1| in genus 2
constexpr double kGapThreshold = 1e4;      // spectral gap for every rank
constexpr double kMu2VanishTol = 1e-5;     // |mu2| / alpha^2 at g^1_3 ramification
constexpr double kErrorBarFactor = 10.0;   // min gap vs its error bar
constexpr double kGlobalBoundTol = 1e-6;   // H <= -1 + this
constexpr double kSegmentTol = 1e-12;
constexpr double kIntegralTol = 1e-8;
constexpr double kConstantTol = 1e-7;
constexpr double kChartTol = 1e-8;
constexpr double kPsiLimitTol = 1e-4;
constexpr double kScalprodTol = 1e-8;
constexpr double kHolsecTol = 1e-10;
constexpr double kTwoFormsTol = 1e-6;

std::vector<cd> monic_minus_one(int degree) {
  std::vector<cd> f(static_cast<std::size_t>(degree + 1));
  f.front() = -1.0;
  f.back() = 1.0;
  return f;
}

struct Prepared {
  std::shared_ptr<const CurveModel> curve;
  HodgeFrame frame;
  QuadricSpace quadrics;
};

class Context {
 public:
  explicit Context(const AcceptanceOptions& o) : opt(o) {}

  const Prepared& hyperelliptic(int g) { return get("hyp" + std::to_string(g), Family::Hyperelliptic, monic_minus_one(2 * g + 1)); }
  const Prepared& trigonal(int degree) {
    return get("tri" + std::to_string(degree), Family::CyclicTrigonal, monic_minus_one(degree));
  }
  const Prepared& quintic() {
    std::vector<cd> c(21);
    c[0] = 1.0;
    c[15] = 1.0;
    c[20] = 1.0;
    return get("quintic", Family::PlaneSmooth, c);
  }

  Prepared prepare(const std::vector<cd>& coef, Family family, double tol) const {
    Prepared p;
    p.curve = std::make_shared<const CurveModel>(build_curve(make_spec(family, coef)));
    FrameOptions fo;
    fo.rel_tol = tol;
    fo.cache_dir = opt.cache_dir;
    p.frame = build_frame(*p.curve, fo);
    p.quadrics = i2_basis(p.frame, sample_points(*p.curve, 4 * p.frame.genus(), opt.seed));
    return p;
  }

  const AcceptanceOptions& opt;
  std::vector<double> all_h;  // every H evaluated in A1..A5

 private:
  const Prepared& get(const std::string& key, Family family, const std::vector<cd>& coef) {
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, prepare(coef, family, opt.tol)).first;
    return it->second;
  }
  std::map<std::string, Prepared> cache_;
};

using Check = std::function<void(Context&, CriterionResult&)>;

void verdict(CriterionResult& r, bool ok, const std::string& summary) {
  r.verdict = ok ? Verdict::Pass : Verdict::Fail;
  r.summary = summary;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void a1(Context& ctx, CriterionResult& r) {
  bool ok = true;
  double worst = 0.0;
  for (int g : {3, 4, 5}) {
    const Prepared& p = ctx.hyperelliptic(g);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& sp : special_points(*p.curve)) {
      if (!sp.supported) continue;
      const double h = sectional_H(p.frame, p.quadrics, sp.point);
      ctx.all_h.push_back(h);
      worst = std::max(worst, std::abs(h + 1.0));
      ok = ok && std::abs(h + 1.0) <= kFlatTol;
      rows.push_back({{"point", sp.point.label}, {"H", h}});
    }
    r.measured["g" + std::to_string(g)] = rows;
  }
  r.measured["max_abs_H_plus_1"] = worst;
  verdict(r, ok, "max |H+1| at Weierstrass points = " + sci(worst));
}

void a2(Context& ctx, CriterionResult& r) {
  const Prepared& p = ctx.hyperelliptic(2);
  double worst = 0.0;
  for (const auto& pt : sample_points(*p.curve, 20, ctx.opt.seed)) {
    const double h = sectional_H(p.frame, p.quadrics, pt);
    ctx.all_h.push_back(h);
    worst = std::max(worst, std::abs(h + 1.0));
  }
  r.measured["dim_I2"] = p.quadrics.dimension();
  r.measured["max_abs_H_plus_1"] = worst;
  verdict(r, p.quadrics.dimension() == 0 && worst <= kGenus2Tol, "dim I2 = " + std::to_string(p.quadrics.dimension()) +
                                                                      ", max |H+1| = " + sci(worst));
}

void a3(Context& ctx, CriterionResult& r) {
  bool ok = true;
  std::string s;
  for (int g : {3, 4, 5}) {
    const Prepared& p = ctx.hyperelliptic(g);
    const auto d = mu2_rank(p.frame, p.quadrics, sample_points(*p.curve, 8 * g, ctx.opt.seed + 1), kGapThreshold);
    const bool good = !d.ambiguous && d.rank == 2 * g - 5 && d.gap >= kGapThreshold;
    ok = ok && good;
    r.measured["g" + std::to_string(g)] = decision_json(d);
    s += "g=" + std::to_string(g) + ": rank " + std::to_string(d.rank) + " (gap " + sci(d.gap) + ") ";
  }
  verdict(r, ok, s);
}

void a4(Context& ctx, CriterionResult& r) {
  const Prepared& p = ctx.trigonal(6);
  bool ok = p.quadrics.dimension() == 1;
  double worst_mu = 0.0, worst_h = 0.0;
  int count = 0;
  for (const auto& sp : special_points(*p.curve)) {
    if (!sp.supported) continue;
    ++count;
    const FrameJets j = frame_jets(p.frame, sp.point);
    for (const cd v : mu2_values(p.quadrics, j)) worst_mu = std::max(worst_mu, std::abs(v) / (j.alpha * j.alpha));
    const double h = sectional_H(mu2_norm_sq(p.quadrics, j), j.alpha);
    ctx.all_h.push_back(h);
    worst_h = std::max(worst_h, std::abs(h + 1.0));
  }
  ok = ok && count == 6 && worst_mu <= kMu2VanishTol && worst_h <= kFlatTol;
  r.measured = {{"dim_I2", p.quadrics.dimension()},
                {"branch_points", count},
                {"max_mu2_over_alpha2", worst_mu},
                {"max_abs_H_plus_1", worst_h}};
  verdict(r, ok, "dim I2 = " + std::to_string(p.quadrics.dimension()) + ", max |mu2|/alpha^2 = " + sci(worst_mu) +
                     ", max |H+1| = " + sci(worst_h));
}

void a5(Context& ctx, CriterionResult& r) {
  const Prepared& p = ctx.quintic();
  // Error bar: the same pipeline with the Gram tolerance tightened 100x.
  std::vector<cd> c(21);
  c[0] = 1.0;
  c[15] = 1.0;
  c[20] = 1.0;
  const Prepared fine = ctx.prepare(c, Family::PlaneSmooth, ctx.opt.tol / 100.0);
  const auto pts = sample_points(*p.curve, 100, ctx.opt.seed + 2);
  double min_gap = std::numeric_limits<double>::infinity();
  double error_bar = 0.0;
  double max_h = -std::numeric_limits<double>::infinity();
  for (const auto& pt : pts) {
    const double h = sectional_H(p.frame, p.quadrics, pt);
    const double h_fine = sectional_H(fine.frame, fine.quadrics, pt);
    ctx.all_h.push_back(h);
    max_h = std::max(max_h, h);
    min_gap = std::min(min_gap, -1.0 - h);
    error_bar = std::max(error_bar, std::abs(h - h_fine));
  }
  const bool ok = max_h < -1.0 && min_gap > kErrorBarFactor * error_bar;
  r.measured = {{"samples", pts.size()}, {"max_H", max_h}, {"min_gap", min_gap}, {"error_bar", error_bar}};
  verdict(r, ok, "min(-1-H) = " + sci(min_gap) + ", error bar = " + sci(error_bar));
}

void a6(Context& ctx, CriterionResult& r) {
  if (ctx.all_h.empty()) {
    r.verdict = Verdict::Skip;
    r.summary = "no H values (A1-A5 not run)";
    return;
  }
  const double hmax = *std::max_element(ctx.all_h.begin(), ctx.all_h.end());
  r.measured = {{"evaluations", ctx.all_h.size()}, {"max_H", hmax}};
  verdict(r, hmax <= -1.0 + kGlobalBoundTol, "max H over " + std::to_string(ctx.all_h.size()) + " points = -1 + " +
                                                   sci(hmax + 1.0));
}

Eigen::MatrixXcd random_symmetric(int g, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::MatrixXcd a(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) a(i, j) = cd(n(rng), n(rng));
  return (a + a.transpose()) / 2.0;
}

void a7(Context& ctx, CriterionResult& r) {
  std::mt19937_64 rng(ctx.opt.seed);
  std::normal_distribution<double> n;
  bool ok = true;
  for (int g = 2; g <= 5; ++g) {
    double rank1 = 0.0;
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXcd v(g);
      for (int i = 0; i < g; ++i) v(i) = cd(n(rng), n(rng));
      rank1 = std::max(rank1, std::abs(siegel_sectional(v * v.transpose()) + 1.0));
    }
    const double ident = std::abs(siegel_sectional(Eigen::MatrixXcd::Identity(g, g)) + 1.0 / g);
    double lo = 0.0, hi = -1.0;
    for (int t = 0; t < 10000; ++t) {
      const double s = siegel_sectional(random_symmetric(g, rng));
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    const bool good = rank1 <= kSegmentTol && ident <= kSegmentTol && lo >= -1.0 - kSegmentTol &&
                      hi <= -1.0 / g + kSegmentTol;
    ok = ok && good;
    r.measured["g" + std::to_string(g)] = {{"rank1_dev", rank1}, {"identity_dev", ident}, {"min", lo}, {"max", hi}};
  }
  verdict(r, ok, "rank-1, identity and 10^4 random directions for g = 2..5");
}

void a8(Context&, CriterionResult& r) {
  const ClassComputation c = class_constant(1e-12);
  const double di = std::abs(c.integral - kPi / 12.0);
  const double dc = std::abs(c.constant - kPi);
  r.measured = {{"integral", c.integral}, {"error", c.error}, {"c", c.constant}};
  verdict(r, di <= kIntegralTol && c.error <= kIntegralTol && dc <= kConstantTol,
          "|I - pi/12| = " + sci(di) + ", |c - pi| = " + sci(dc));
}

void a9(Context& ctx, CriterionResult& r) {
  std::mt19937_64 rng(ctx.opt.seed + 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (const Prepared* p : {&ctx.hyperelliptic(3), &ctx.trigonal(6)}) {
    for (const auto& pt : sample_points(*p->curve, 10, ctx.opt.seed + 4)) {
      const double h = sectional_H(p->frame, p->quadrics, pt);
      for (int t = 0; t < 10; ++t) {
        const cd c = std::polar(std::exp(std::log(4.0) * (u(rng) - 0.5) * 2.0), 2.0 * kPi * u(rng));
        worst = std::max(worst, std::abs(sectional_H(p->frame, p->quadrics, pt.rescaled(c)) - h));
      }
    }
  }
  r.measured = {{"max_change", worst}};
  verdict(r, worst <= kChartTol, "max |H(cz) - H(z)| = " + sci(worst));
}

void a10(Context& ctx, CriterionResult& r) {
  const Prepared& p = ctx.hyperelliptic(3);
  const CurveModel& curve = *p.curve;
  const ChartPoint base = sample_points(curve, 1, ctx.opt.seed + 5)[0];
  const EtaForm eta = eta_form(p.frame, base);
  const LocalChart chart = local_chart(curve, base);
  bool ok = eta.projection_residual >= 0.0 && eta.projection_residual <= 1e-4;
  nlohmann::json per = nlohmann::json::array();
  double worst = 0.0;
  for (int k = 0; k < p.quadrics.dimension(); ++k) {
    const cd limit = psi_eval(p.frame, p.quadrics, eta, k, base);
    std::vector<cd> v;
    std::vector<double> dist;
    for (double d : {1e-1, 1e-2, 1e-3}) {
      const cd step = d * std::polar(1.0, 0.7);
      ChartPoint s = base;
      s.x = base.x + step;
      const cd guess = chart.y.evaluate(step);
      s.y = std::sqrt(curve.branch_polynomial()(s.x));
      if (std::abs(s.y - guess) > std::abs(s.y + guess)) s.y = -s.y;
      s.label = "S";
      v.push_back(psi_eval(p.frame, p.quadrics, eta, k, s));
      dist.push_back(std::abs(v.back() - limit));
    }
    const bool monotone = dist[0] > dist[1] && dist[1] > dist[2];
    // Richardson for an error expansion in h, h^2 with h shrinking by 10.
    const cd l1 = (10.0 * v[2] - v[1]) / 9.0;
    const cd l0 = (10.0 * v[1] - v[0]) / 9.0;
    const cd extrapolated = (100.0 * l1 - l0) / 99.0;
    const double rel = std::abs(extrapolated - limit) / std::abs(limit);
    worst = std::max(worst, rel);
    ok = ok && monotone && rel <= kPsiLimitTol;
    per.push_back({{"quadric", k}, {"distances", dist}, {"monotone", monotone}, {"relative_limit_error", rel}});
  }
  r.measured = {{"quadrics", per},
                {"projection_residual", eta.projection_residual},
                {"principal_part", {eta.principal.real(), eta.principal.imag()}},
                {"residue", std::abs(eta.residue)},
                {"pv_extrapolation_error", eta.pv_extrapolation_error}};
  verdict(r, ok, "relative error of extrapolated limit = " + sci(worst) + ", projection residual = " +
                     sci(eta.projection_residual));
}

void a11(Context& ctx, CriterionResult& r) {
  double scal = 0.0, holsec = 0.0, forms = 0.0;
  bool ok = true;
  nlohmann::json ranks = nlohmann::json::object();
  for (const auto& [name, p] : {std::pair<std::string, const Prepared*>{"hyp3", &ctx.hyperelliptic(3)},
                                {"tri6", &ctx.trigonal(6)}}) {
    const auto pts = sample_points(*p->curve, 10, ctx.opt.seed + 6);
    const PsiProvider psi = diagonal_psi(p->frame, p->quadrics);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const SchifferMatrix xi = schiffer_matrix(p->frame, pts[i]);
      for (std::size_t j = 0; j < pts.size(); ++j) {
        const cd a = alpha(p->frame, pts[i], pts[j]);
        const cd lhs = sym_inner(xi.a, schiffer_matrix(p->frame, pts[j]).a);
        const cd rhs = 8.0 * kPi * kPi * a * a;
        scal = std::max(scal, std::abs(lhs - rhs) / (8.0 * kPi * kPi * std::norm(a) + 1.0));
      }
      const cd norm2 = sym_inner(xi.a, xi.a);
      const cd full = full_curvature(p->frame, p->quadrics, psi, pts[i], pts[i], pts[i], pts[i]);
      holsec = std::max(holsec, std::abs(full / (norm2 * norm2) - sectional_H(p->frame, p->quadrics, pts[i])));
      for (int k = 0; k < p->quadrics.dimension(); ++k) {
        const Mu2Evaluation e = mu2_eval(p->frame, p->quadrics, k, pts[i]);
        forms = std::max(forms, e.discrepancy / std::max(std::abs(e.value), std::abs(e.alternate)));
      }
    }
    const auto d = numerical_rank(rho_matrix(p->frame, p->quadrics, pts), kGapThreshold);
    const bool good = !d.ambiguous && d.rank == p->quadrics.dimension() && d.gap >= kGapThreshold;
    ok = ok && good;
    ranks[name] = decision_json(d);
  }
  // Hyperelliptic: Schiffer directions at the Weierstrass points only.
  {
    const Prepared& p = ctx.hyperelliptic(4);
    std::vector<ChartPoint> w;
    for (const auto& sp : special_points(*p.curve))
      if (sp.supported) w.push_back(sp.point);
    const auto d = numerical_rank(rho_matrix(p.frame, p.quadrics, w), kGapThreshold);
    ok = ok && !d.ambiguous && d.rank == p.quadrics.dimension() && d.gap >= kGapThreshold;
    ranks["hyp4_weierstrass"] = decision_json(d);
  }
  ok = ok && scal <= kScalprodTol && holsec <= kHolsecTol && forms <= kTwoFormsTol;
  r.measured = {{"scalar_product_dev", scal}, {"holsec_dev", holsec}, {"two_forms_dev", forms}, {"rho_rank", ranks}};
  verdict(r, ok, "scalprod " + sci(scal) + ", holsec " + sci(holsec) + ", mu2 forms " + sci(forms) +
                     ", rho ranks certified");
}

void a12(Context& ctx, CriterionResult& r) {
  if (!ctx.opt.slow) {
    r.verdict = Verdict::Skip;
    r.summary = "slow criterion (enable with --slow)";
    return;
  }
  const Prepared& p = ctx.trigonal(10);
  const int g = p.frame.genus();
  const auto d = mu2_rank(p.frame, p.quadrics, sample_points(*p.curve, 8 * g, ctx.opt.seed + 1), kGapThreshold);
  r.measured = {{"genus", g}, {"dim_I2", p.quadrics.dimension()}, {"mu2_rank", decision_json(d)}};
  const int expected = 4 * g - 18;
  if (!d.ambiguous && d.rank == expected) {
    verdict(r, true, "rank " + std::to_string(d.rank) + " = 4g-18 (gap " + sci(d.gap) + ")");
  } else if (!d.ambiguous && d.rank < expected) {
    r.verdict = Verdict::Flag;
    r.summary = "certified rank " + std::to_string(d.rank) + " below 4g-18 = " + std::to_string(expected);
  } else {
    verdict(r, false, "rank " + std::to_string(d.rank) + (d.ambiguous ? " (ambiguous)" : ""));
  }
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  const std::vector<std::pair<std::string, Check>> checks = {{"A1", a1}, {"A2", a2}, {"A3", a3},   {"A4", a4},
                                                             {"A5", a5}, {"A6", a6}, {"A7", a7},   {"A8", a8},
                                                             {"A9", a9}, {"A10", a10}, {"A11", a11}, {"A12", a12}};
  Context ctx(options);
  std::vector<CriterionResult> out;
  for (const auto& [id, check] : checks) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) continue;
    CriterionResult r;
    r.id = id;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      check(ctx, r);
    } catch (const std::exception& e) {
      r.verdict = Verdict::Fail;
      r.summary = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json acceptance_json(const std::vector<CriterionResult>& results, const AcceptanceOptions& options) {
  nlohmann::json doc;
  doc["tool"] = "siegel";
  doc["version"] = kVersion;
  doc["settings"] = {{"tol", options.tol}, {"seed", options.seed}, {"slow", options.slow}};
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : results) {
    list.push_back({{"id", r.id}, {"verdict", to_string(r.verdict)}, {"summary", r.summary}, {"measured", r.measured}});
  }
  doc["criteria"] = list;
  doc["exit_code"] = acceptance_exit_code(results);
  return doc;
}

int acceptance_exit_code(const std::vector<CriterionResult>& results) {
  int code = 0;
  for (const auto& r : results) {
    if (r.verdict == Verdict::Fail) return 1;
    if (r.verdict == Verdict::Flag) code = 2;
  }
  return code;
}

}  // namespace siegel
