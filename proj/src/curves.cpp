#include "siegel/curves.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "siegel/error.hpp"
#include "siegel/util.hpp"

namespace siegel {

namespace {

constexpr double kOnCurveTol = 1e-10;
constexpr double kChartTol = 1e-9;
constexpr double kRootSeparation = 1e-8;

void sort_points(std::vector<cd>& pts) {
  std::sort(pts.begin(), pts.end(), [](cd a, cd b) {
    const double aa = std::arg(a), ab = std::arg(b);
    if (aa != ab) return aa < ab;
    return std::abs(a) < std::abs(b);
  });
}

void require_squarefree(const Poly& f, const std::vector<cd>& roots) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      const double scale = std::max(1.0, std::abs(roots[i]));
      if (std::abs(roots[i] - roots[j]) <= kRootSeparation * scale) {
        throw Error(ErrorCode::RepeatedRoot, "curves", "f has a repeated root near " + format17(roots[i].real()));
      }
    }
  }
  // A double root splits into a pair ~sqrt(eps) apart; the derivative test
  // catches pairs that slipped past the distance threshold.
  const Poly df = f.derivative();
  for (const cd r : roots) {
    const double rel = std::abs(df(r)) / std::max(df.magnitude(r), 1e-300);
    if (rel < 1e-7) {
      throw Error(ErrorCode::RepeatedRoot, "curves", "f' vanishes at a root near " + format17(r.real()));
    }
  }
}


cd sylvester_resultant(const Poly& p, const Poly& q) {
  const int m = p.degree();
  const int n = q.degree();
  if (m < 0 || n < 0) return {};
  const int size = m + n;
  if (size == 0) return 1.0;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s(r, r + k) = p.coefficients()[static_cast<std::size_t>(m - k)];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s(n + r, r + k) = q.coefficients()[static_cast<std::size_t>(n - k)];
  return s.partialPivLu().determinant();
}

// Finite branch points of a plane curve: clustered roots of Res_y(F, F_y).
std::vector<cd> plane_branch_points(const BiPoly& F, const BiPoly& Fx, const BiPoly& Fy) {
  int d = F.total_degree();
  const int samples = d * (d - 1) + 1;
  std::vector<cd> values(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const cd x = std::polar(1.0, 2.0 * std::numbers::pi * k / samples);
    values[static_cast<std::size_t>(k)] = sylvester_resultant(F.in_y(x), Fy.in_y(x));
  }
  std::vector<cd> coef(static_cast<std::size_t>(samples));
  double peak = 0.0;
  for (int j = 0; j < samples; ++j) {
    cd acc{};
    for (int k = 0; k < samples; ++k) {
      acc += values[static_cast<std::size_t>(k)] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / samples);
    }
    coef[static_cast<std::size_t>(j)] = acc / static_cast<double>(samples);
    peak = std::max(peak, std::abs(coef[static_cast<std::size_t>(j)]));
  }
  if (peak == 0.0) {
    throw Error(ErrorCode::SingularPlaneCurve, "curves", "discriminant vanishes identically");
  }
  for (auto& c : coef)
    if (std::abs(c) < 1e-13 * peak) c = cd{};
  const Poly disc(coef);
  std::vector<cd> roots = polynomial_roots(disc);

  // Multiple roots of the discriminant come back as small clusters.
  std::vector<int> cluster(roots.size(), -1);
  int clusters = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (cluster[i] >= 0) continue;
    cluster[i] = clusters;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (cluster[j] < 0 && std::abs(roots[i] - roots[j]) < 1e-3 * std::max(1.0, std::abs(roots[i]))) {
        cluster[j] = clusters;
      }
    }
    ++clusters;
  }
  std::vector<cd> branch;
  for (int c = 0; c < clusters; ++c) {
    cd mean{};
    int mult = 0;
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (cluster[i] == c) {
        mean += roots[i];
        ++mult;
      }
    mean /= static_cast<double>(mult);
    // An m-fold root is a simple root of the (m-1)-th derivative.
    Poly deriv = disc;
    for (int k = 1; k < mult; ++k) deriv = deriv.derivative();
    const Poly dd = deriv.derivative();
    for (int it = 0; it < 4; ++it) {
      const cd slope = dd(mean);
      if (slope == cd{}) break;
      const cd step = deriv(mean) / slope;
      if (!(std::abs(step) < 1e-3 * std::max(1.0, std::abs(mean)))) break;
      mean -= step;
    }
    // Smoothness: at the ramified fiber point F_x must not vanish.
    const auto ys = polynomial_roots(F.in_y(mean));
    cd ybest{};
    double best = 1e300;
    for (const cd y : ys) {
      const double rel = std::abs(Fy(mean, y)) / std::max(Fy.magnitude(mean, y), 1e-300);
      if (rel < best) {
        best = rel;
        ybest = y;
      }
    }
    const double fx_rel = std::abs(Fx(mean, ybest)) / std::max(Fx.magnitude(mean, ybest), 1e-300);
    if (fx_rel < 1e-6) {
      throw Error(ErrorCode::SingularPlaneCurve, "curves",
                  "F, F_x, F_y vanish simultaneously near x = " + format17(mean.real()) + " + " +
                      format17(mean.imag()) + "i");
    }
    branch.push_back(mean);
  }
  sort_points(branch);
  return branch;
}

void check_plane_infinity(const BiPoly& F, int d) {
  std::vector<cd> top(static_cast<std::size_t>(d + 1));
  std::vector<cd> next(static_cast<std::size_t>(d));
  for (int b = 0; b <= d; ++b) top[static_cast<std::size_t>(b)] = F.at(d - b, b);
  for (int b = 0; b < d; ++b) next[static_cast<std::size_t>(b)] = F.at(d - 1 - b, b);
  const Poly top_form(top);
  const Poly next_form(next);
  const Poly dtop = top_form.derivative();
  for (const cd t : polynomial_roots(top_form)) {
    const double simple = std::abs(dtop(t)) / std::max(dtop.magnitude(t), 1e-300);
    if (simple > 1e-8) continue;
    const double tangent = std::abs(next_form(t)) / std::max(next_form.magnitude(t), 1e-300);
    if (tangent < 1e-8) {
      throw Error(ErrorCode::SingularPlaneCurve, "curves", "curve is singular at a point at infinity");
    }
  }
}

std::string superelliptic_describe(int a, int b) {
  std::string num = a == 0 ? "" : (a == 1 ? "x " : "x^" + std::to_string(a) + " ");
  std::string den = b == 1 ? "y" : "y^" + std::to_string(b);
  return num + "dx/" + den;
}

}  // namespace

const char* to_string(Family family) noexcept {
  switch (family) {
    case Family::Hyperelliptic: return "hyperelliptic";
    case Family::CyclicTrigonal: return "cyclic_trigonal";
    case Family::PlaneSmooth: return "plane_smooth";
  }
  return "unknown";
}

Family family_from_string(const std::string& name) {
  if (name == "hyperelliptic") return Family::Hyperelliptic;
  if (name == "cyclic_trigonal" || name == "trigonal") return Family::CyclicTrigonal;
  if (name == "plane_smooth" || name == "plane") return Family::PlaneSmooth;
  throw Error(ErrorCode::InvalidInput, "curves", "unknown curve family '" + name + "'");
}

double parse_decimal(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first != last && *first == ' ') ++first;
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidInput, "curves", "not a finite decimal number: '" + text + "'");
  }
  return v;
}

CurveSpec make_spec(Family family, const std::vector<cd>& coefficients, std::string label) {
  CurveSpec spec;
  spec.family = family;
  spec.label = std::move(label);
  for (const cd c : coefficients) spec.coefficients.push_back({format17(c.real()), format17(c.imag())});
  return spec;
}

int superelliptic_genus(int n, int d) { return ((n - 1) * (d - 1) - std::gcd(n, d) + 1) / 2; }

CurveModel build_curve(const CurveSpec& spec) {
  std::vector<cd> coef;
  coef.reserve(spec.coefficients.size());
  for (const auto& c : spec.coefficients) coef.emplace_back(parse_decimal(c.re), parse_decimal(c.im));

  CurveModel curve;
  curve.family_ = spec.family;
  curve.spec_ = spec;
  curve.label_ = spec.label;

  std::ostringstream key;
  key << "family=" << to_string(spec.family) << ";coefficients=";
  for (const cd c : coef) key << "(" << format17(c.real()) << "," << format17(c.imag()) << ")";
  curve.key_ = key.str();

  if (spec.family != Family::PlaneSmooth) {
    const int n = spec.family == Family::Hyperelliptic ? 2 : 3;
    Poly f(coef);
    const int d = f.degree();
    if (d < 3) throw Error(ErrorCode::UnsupportedDegree, "curves", "deg f must be at least 3");
    auto roots = polynomial_roots(f);
    require_squarefree(f, roots);
    sort_points(roots);
    curve.f_ = f;
    curve.sheets_ = n;
    curve.genus_ = superelliptic_genus(n, d);
    curve.branch_ = roots;
    curve.F_ = BiPoly(d, n);
    for (int a = 0; a <= d; ++a) curve.F_.at(a, 0) = -f.coefficients()[static_cast<std::size_t>(a)];
    curve.F_.at(0, n) = 1.0;
  } else {
    int d = 0;
    while ((d + 1) * (d + 2) / 2 < static_cast<int>(coef.size())) ++d;
    if ((d + 1) * (d + 2) / 2 != static_cast<int>(coef.size())) {
      throw Error(ErrorCode::InvalidInput, "curves",
                  "plane curve needs (d+1)(d+2)/2 coefficients in graded order");
    }
    BiPoly F(d, d);
    std::size_t idx = 0;
    for (int k = 0; k <= d; ++k)
      for (int b = 0; b <= k; ++b) F.at(k - b, b) = coef[idx++];
    d = F.total_degree();
    if (d < 3) throw Error(ErrorCode::UnsupportedDegree, "curves", "plane curve degree must be at least 3");
    if (F.at(0, d) == cd{}) {
      throw Error(ErrorCode::UnsupportedDegree, "curves",
                  "coefficient of y^d must be nonzero (x-projection must be a d-sheeted cover)");
    }
    curve.F_ = F;
    curve.Fx_ = F.dx();
    curve.Fy_ = F.dy();
    check_plane_infinity(F, d);
    curve.branch_ = plane_branch_points(F, curve.Fx_, curve.Fy_);
    curve.sheets_ = d;
    curve.genus_ = (d - 1) * (d - 2) / 2;
  }
  curve.Fx_ = curve.F_.dx();
  curve.Fy_ = curve.F_.dy();
  return curve;
}

std::vector<cd> CurveModel::fiber(cd x) const {
  std::vector<cd> ys;
  if (superelliptic()) {
    const cd value = f_(x);
    const cd base = value == cd{} ? cd{} : std::pow(value, 1.0 / sheets_);
    for (int k = 0; k < sheets_; ++k) ys.push_back(base * std::polar(1.0, 2.0 * std::numbers::pi * k / sheets_));
    return ys;
  }
  const Poly p = F_.in_y(x);
  ys = polynomial_roots(p);
  const Poly dp = p.derivative();
  for (auto& y : ys) {
    for (int it = 0; it < 2; ++it) {
      const cd slope = dp(y);
      if (slope == cd{}) break;
      const cd step = p(y) / slope;
      if (!(std::abs(step) < 1e-8 * (1.0 + std::abs(y)))) break;
      y -= step;
    }
  }
  sort_points(ys);
  return ys;
}

std::string RawDifferential::describe(Family family) const {
  if (family != Family::PlaneSmooth) return superelliptic_describe(a, b);
  std::string s;
  if (a > 0) s += a == 1 ? "x " : "x^" + std::to_string(a) + " ";
  if (b > 0) s += b == 1 ? "y " : "y^" + std::to_string(b) + " ";
  return s + "dx/F_y";
}

RawDifferential make_differential(const CurveModel& curve, int a, int b) {
  RawDifferential diff;
  diff.a = a;
  diff.b = b;
  if (curve.superelliptic()) {
    const int n = curve.sheets();
    if (b < 1 || b > n - 1) {
      throw Error(ErrorCode::BasisVerificationFailed, "curves",
                  "x^a dx/y^b has a pole over the branch points unless 1 <= b <= n-1");
    }
    diff.numerator = BiPoly(a, n - 1 - b);
    diff.numerator.at(a, n - 1 - b) = static_cast<double>(n);
  } else {
    diff.numerator = BiPoly(a, b);
    diff.numerator.at(a, b) = 1.0;
  }
  return diff;
}

namespace {

std::size_t first_nonzero(const Series& s, double scale) {
  for (std::size_t k = 0; k < Series::kLength; ++k)
    if (std::abs(s[k]) > 1e-9 * scale) return k;
  return Series::kLength;
}

double series_scale(const Series& s) {
  double m = 0.0;
  for (std::size_t k = 0; k < Series::kLength; ++k) m = std::max(m, std::abs(s[k]));
  return std::max(m, 1e-300);
}

int superelliptic_infinity_order(const CurveModel& curve, const RawDifferential& diff) {
  const int n = curve.sheets();
  const Poly& f = curve.branch_polynomial();
  const int d = f.degree();
  const int m = std::gcd(n, d);
  const int e = n / m;
  // x = t^-e; f(x) = x^d * rev(t^e) with rev(u) = sum c_{d-k} u^k.
  std::vector<cd> rev(f.coefficients().rbegin(), f.coefficients().rend());
  Series u;
  u[static_cast<std::size_t>(e)] = 1.0;
  const Series unit = Poly(rev)(u).pow(-static_cast<double>(diff.b) / n);
  const std::size_t lead = first_nonzero(unit, series_scale(unit));
  return diff.b * d / m - e * diff.a - e - 1 + static_cast<int>(lead);
}

int plane_infinity_order(const CurveModel& curve, const RawDifferential& diff) {
  const BiPoly& F = curve.equation();
  const int d = F.total_degree();
  BiPoly G(d, d);  // G(u, v) = u^d F(1/u, v/u)
  for (int a = 0; a <= F.max_a(); ++a)
    for (int b = 0; b <= F.max_b(); ++b)
      if (F.at(a, b) != cd{}) G.at(d - a - b, b) = F.at(a, b);
  const BiPoly Gu = G.dx();
  const BiPoly Gv = G.dy();
  std::vector<cd> top(static_cast<std::size_t>(d + 1));
  for (int b = 0; b <= d; ++b) top[static_cast<std::size_t>(b)] = F.at(d - b, b);
  const int k = d - 3 - diff.a - diff.b;
  int order = 1 << 20;
  for (const cd t : polynomial_roots(Poly(top))) {
    const double gv_rel = std::abs(Gv(0.0, t)) / std::max(Gv.magnitude(0.0, t), 1e-300);
    Series U, V, S;
    int local = 0;
    if (gv_rel > 1e-8) {
      U = Series::variable(0.0);
      V = Series(t);
      for (int it = 0; it < 4; ++it) V = V - G(U, V) / Gv(U, V);
      Series vb(1.0);
      for (int j = 0; j < diff.b; ++j) vb = vb * V;
      S = -(vb / Gv(U, V));
      local = k + static_cast<int>(first_nonzero(S, series_scale(S)));
    } else {
      V = Series::variable(t);
      U = Series(0.0);
      for (int it = 0; it < 4; ++it) U = U - G(U, V) / Gu(U, V);
      Series vb(1.0);
      for (int j = 0; j < diff.b; ++j) vb = vb * V;
      S = vb / Gu(U, V);
      const int u_order = static_cast<int>(first_nonzero(U, series_scale(U)));
      local = k * u_order + static_cast<int>(first_nonzero(S, series_scale(S)));
    }
    order = std::min(order, local);
  }
  return order;
}

}  // namespace

int verify_differential(const CurveModel& curve, const RawDifferential& diff) {
  // Finite branch points: the coefficient in the y-chart must be finite.
  for (const cd e : curve.branch_points()) {
    const auto ys = curve.fiber(e);
    cd yr = ys.front();
    double best = 1e300;
    for (const cd y : ys) {
      const double rel = std::abs(curve.equation_dy()(e, y)) / std::max(curve.equation_dy().magnitude(e, y), 1e-300);
      if (rel < best) {
        best = rel;
        yr = y;
      }
    }
    ChartPoint p;
    p.x = e;
    p.y = curve.superelliptic() ? cd{} : yr;
    p.kind = ChartKind::YChart;
    const Jet j = jet_at(curve, p, diff, 2);
    for (const cd v : j.d) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw Error(ErrorCode::BasisVerificationFailed, "curves",
                    diff.describe(curve.family()) + " is not finite at a branch point");
      }
    }
  }
  const int order = curve.superelliptic() ? superelliptic_infinity_order(curve, diff) : plane_infinity_order(curve, diff);
  if (order < 0) {
    throw Error(ErrorCode::BasisVerificationFailed, "curves",
                diff.describe(curve.family()) + " has a pole of order " + std::to_string(-order) + " at infinity");
  }
  return order;
}

std::vector<RawDifferential> differential_basis(const CurveModel& curve) {
  std::vector<RawDifferential> basis;
  if (curve.superelliptic()) {
    const int n = curve.sheets();
    const int d = curve.branch_polynomial().degree();
    const int m = std::gcd(n, d);
    for (int b = 1; b < n; ++b) {
      // x^a dx/y^b is regular at infinity iff n(a+1) + m <= b d.
      for (int a = 0; n * (a + 1) + m <= b * d; ++a) basis.push_back(make_differential(curve, a, b));
    }
  } else {
    const int d = curve.equation().total_degree();
    for (int k = 0; k <= d - 3; ++k)
      for (int b = 0; b <= k; ++b) basis.push_back(make_differential(curve, k - b, b));
  }
  for (const auto& diff : basis) verify_differential(curve, diff);
  if (static_cast<int>(basis.size()) != curve.genus()) {
    throw Error(ErrorCode::BasisVerificationFailed, "curves",
                "basis has " + std::to_string(basis.size()) + " elements for genus " + std::to_string(curve.genus()));
  }
  return basis;
}

LocalChart local_chart(const CurveModel& curve, const ChartPoint& point) {
  if (point.at_infinity) {
    throw Error(ErrorCode::ChartInvalid, "curves", "unsupported_chart: no chart implemented at infinity");
  }
  const BiPoly& F = curve.equation();
  const BiPoly& Fx = curve.equation_dx();
  const BiPoly& Fy = curve.equation_dy();
  cd x0 = point.x;
  cd y0 = point.y;
  const double mag = std::max(F.magnitude(x0, y0), 1e-300);
  if (std::abs(F(x0, y0)) > kOnCurveTol * mag) {
    throw Error(ErrorCode::PointNotOnCurve, "curves", "defining equation not satisfied at chart point");
  }
  LocalChart chart;
  chart.point = point;
  if (point.kind == ChartKind::XChart) {
    if (std::abs(Fy(x0, y0)) <= kChartTol * std::max(Fy.magnitude(x0, y0), 1e-300)) {
      throw Error(ErrorCode::ChartInvalid, "curves", "XChart requested at a ramification point of the x-projection");
    }
    for (int it = 0; it < 2; ++it) y0 -= F(x0, y0) / Fy(x0, y0);
    chart.x = Series::variable(x0, point.scale);
    chart.y = Series(y0);
    for (int it = 0; it < 4; ++it) chart.y = chart.y - F(chart.x, chart.y) / Fy(chart.x, chart.y);
    chart.measure = chart.x.derivative() / Fy(chart.x, chart.y);
  } else {
    if (std::abs(Fx(x0, y0)) <= kChartTol * std::max(Fx.magnitude(x0, y0), 1e-300)) {
      throw Error(ErrorCode::ChartInvalid, "curves", "YChart requested where F_x vanishes");
    }
    for (int it = 0; it < 2; ++it) x0 -= F(x0, y0) / Fx(x0, y0);
    chart.y = Series::variable(y0, point.scale);
    chart.x = Series(x0);
    for (int it = 0; it < 4; ++it) chart.x = chart.x - F(chart.x, chart.y) / Fx(chart.x, chart.y);
    chart.measure = -(chart.y.derivative() / Fx(chart.x, chart.y));
  }
  return chart;
}

Series coefficient_series(const LocalChart& chart, const BiPoly& numerator) {
  return numerator(chart.x, chart.y) * chart.measure;
}

Jet jet_from_series(const Series& s, int order) {
  Jet j;
  for (int k = 0; k <= order && k < 4; ++k) j.d[static_cast<std::size_t>(k)] = s.derivative_at_zero(static_cast<std::size_t>(k));
  return j;
}

Jet jet_at(const CurveModel& curve, const ChartPoint& point, const RawDifferential& diff, int order) {
  if (order < 0 || order > 3) throw Error(ErrorCode::InvalidInput, "curves", "jet order must be in [0, 3]");
  return jet_from_series(coefficient_series(local_chart(curve, point), diff.numerator), order);
}

ChartPoint auto_chart(const CurveModel& curve, cd x, cd y, int sheet) {
  ChartPoint p;
  p.x = x;
  p.y = y;
  p.sheet = sheet;
  const double fy = std::abs(curve.equation_dy()(x, y)) / std::max(curve.equation_dy().magnitude(x, y), 1e-300);
  const double fx = std::abs(curve.equation_dx()(x, y)) / std::max(curve.equation_dx().magnitude(x, y), 1e-300);
  p.kind = (fy >= 1e-6 || fy >= fx) ? ChartKind::XChart : ChartKind::YChart;
  return p;
}

ChartPoint point_on_sheet(const CurveModel& curve, cd x, int sheet) {
  const auto ys = curve.fiber(x);
  const int n = static_cast<int>(ys.size());
  const int s = ((sheet % n) + n) % n;
  return auto_chart(curve, x, ys[static_cast<std::size_t>(s)], s);
}

std::vector<SpecialPoint> special_points(const CurveModel& curve) {
  std::vector<SpecialPoint> out;
  if (!curve.superelliptic()) return out;
  const SpecialKind kind = curve.hyperelliptic() ? SpecialKind::Weierstrass : SpecialKind::TrigonalRamification;
  const std::string prefix = curve.hyperelliptic() ? "W" : "R";
  int k = 0;
  for (const cd e : curve.branch_points()) {
    SpecialPoint sp;
    sp.kind = kind;
    sp.point.x = e;
    sp.point.y = 0.0;
    sp.point.kind = ChartKind::YChart;
    sp.point.label = prefix + std::to_string(k++);
    out.push_back(sp);
  }
  const int d = curve.branch_polynomial().degree();
  if (d % curve.sheets() != 0) {
    SpecialPoint sp;
    sp.kind = kind;
    sp.supported = false;
    sp.point.at_infinity = true;
    sp.point.label = prefix + "inf";
    out.push_back(sp);
  }
  return out;
}

double branch_distance(const CurveModel& curve, cd x) {
  double best = 1e300;
  for (const cd e : curve.branch_points()) best = std::min(best, std::abs(x - e));
  return best;
}

std::vector<ChartPoint> sample_points(const CurveModel& curve, std::size_t count, std::uint64_t seed,
                                     double min_distance) {
  double radius = 1.0;
  for (const cd e : curve.branch_points()) radius = std::max(radius, std::abs(e));
  radius *= 1.5;
  std::mt19937_64 gen(seed);
  auto uniform = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  std::vector<ChartPoint> pts;
  pts.reserve(count);
  while (pts.size() < count) {
    const double r = radius * std::sqrt(uniform());
    const double theta = 2.0 * std::numbers::pi * uniform();
    const int sheet = static_cast<int>(uniform() * curve.sheets());
    const cd x = std::polar(r, theta);
    if (branch_distance(curve, x) < min_distance * std::max(1.0, radius / 1.5)) continue;
    ChartPoint p = point_on_sheet(curve, x, sheet);
    p.label = "s" + std::to_string(pts.size());
    pts.push_back(p);
  }
  return pts;
}

}  // namespace siegel
