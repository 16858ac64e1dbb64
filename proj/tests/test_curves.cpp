#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "siegel/curves.hpp"
#include "siegel/error.hpp"

using namespace siegel;

namespace {

CurveModel hyper(std::vector<cd> f) { return build_curve(make_spec(Family::Hyperelliptic, f)); }
CurveModel trigonal(std::vector<cd> f) { return build_curve(make_spec(Family::CyclicTrigonal, f)); }

std::vector<cd> monic_minus_one(int degree) {
  std::vector<cd> f(static_cast<std::size_t>(degree + 1));
  f.front() = -1.0;
  f.back() = 1.0;
  return f;
}

CurveModel fermat(int d) {
  std::vector<cd> c(static_cast<std::size_t>((d + 1) * (d + 2) / 2));
  c[0] = 1.0;
  const std::size_t top = static_cast<std::size_t>(d * (d + 1) / 2);
  c[top] = 1.0;                                // x^d
  c[top + static_cast<std::size_t>(d)] = 1.0;  // y^d
  return build_curve(make_spec(Family::PlaneSmooth, c));
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;  // sentinel: nothing thrown
}

}  // namespace

TEST_CASE("genus of the standard examples") {
  CHECK(hyper(monic_minus_one(5)).genus() == 2);
  CHECK(trigonal(monic_minus_one(6)).genus() == 4);
  CHECK(fermat(5).genus() == 6);
  CHECK(fermat(4).genus() == 3);
}

TEST_CASE("superelliptic genus agrees with Riemann-Hurwitz") {
  // Over each of the d finite roots the n sheets meet in one point
  // (ramification n-1); over infinity there are gcd(n,d) points, each
  // ramified to order n/gcd(n,d).
  for (int n : {2, 3}) {
    for (int d = 3; d <= 12; ++d) {
      const int m = std::gcd(n, d);
      const int ramification = d * (n - 1) + m * (n / m - 1);
      const int two_g_minus_two = -2 * n + ramification;
      CHECK(superelliptic_genus(n, d) * 2 - 2 == two_g_minus_two);
    }
  }
}

TEST_CASE("input validation") {
  CHECK(code_of([] { hyper({0.0, 0.0, -1.0, 1.0}); }) == ErrorCode::RepeatedRoot);
  CHECK(code_of([] { hyper({1.0, 1.0}); }) == ErrorCode::UnsupportedDegree);
  // y^3 = x^3 + x^2 is singular at the origin.
  std::vector<cd> c(10);
  c[3] = -1.0;  // x^2 sits at index 3 (k=2, b=0)
  c[6] = -1.0;  // x^3
  c[9] = 1.0;   // y^3
  CHECK(code_of([&] { build_curve(make_spec(Family::PlaneSmooth, c)); }) == ErrorCode::SingularPlaneCurve);
  // missing y^d term
  std::vector<cd> e(10);
  e[0] = 1.0;
  e[6] = 1.0;
  e[7] = 1.0;
  CHECK(code_of([&] { build_curve(make_spec(Family::PlaneSmooth, e)); }) == ErrorCode::UnsupportedDegree);
  CHECK(code_of([] { parse_decimal("1.5e"); }) == ErrorCode::InvalidInput);
  CHECK(parse_decimal("-0.25") == -0.25);
}

TEST_CASE("holomorphic bases") {
  const auto g2 = hyper(monic_minus_one(5));
  const auto b2 = differential_basis(g2);
  REQUIRE(b2.size() == 2);
  CHECK(b2[0].describe(g2.family()) == "dx/y");
  CHECK(b2[1].describe(g2.family()) == "x dx/y");

  const auto t4 = trigonal(monic_minus_one(6));
  const auto b4 = differential_basis(t4);
  REQUIRE(b4.size() == 4);
  CHECK(b4[0].describe(t4.family()) == "dx/y");
  CHECK(b4[1].describe(t4.family()) == "dx/y^2");
  CHECK(b4[2].describe(t4.family()) == "x dx/y^2");
  CHECK(b4[3].describe(t4.family()) == "x^2 dx/y^2");

  const auto q = fermat(5);
  CHECK(differential_basis(q).size() == 6);

  for (int g = 2; g <= 6; ++g) {
    CHECK(differential_basis(hyper(monic_minus_one(2 * g + 1))).size() == static_cast<std::size_t>(g));
    CHECK(differential_basis(hyper(monic_minus_one(2 * g + 2))).size() == static_cast<std::size_t>(g));
  }
  CHECK(differential_basis(trigonal(monic_minus_one(10))).size() == 9);
}

TEST_CASE("orders at infinity on y^2 = x^5 - 1") {
  // With x = t^-2, y ~ t^-5 one gets x^a dx/y ~ -2 t^(2-2a) dt.
  const auto c = hyper(monic_minus_one(5));
  CHECK(verify_differential(c, make_differential(c, 0, 1)) == 2);
  CHECK(verify_differential(c, make_differential(c, 1, 1)) == 0);
  CHECK(code_of([&] { verify_differential(c, make_differential(c, 2, 1)); }) == ErrorCode::BasisVerificationFailed);
}

TEST_CASE("jets on y^2 = 1 - x^6") {
  const auto c = hyper({1.0, 0, 0, 0, 0, 0, -1.0});
  const auto basis = differential_basis(c);
  ChartPoint p;
  p.x = 0.0;
  p.y = 1.0;
  const Jet j0 = jet_at(c, p, basis[0]);
  CHECK(std::abs(j0.value() - 1.0) < 1e-14);
  CHECK(std::abs(j0.first()) < 1e-14);
  CHECK(std::abs(j0.second()) < 1e-14);
  const Jet j1 = jet_at(c, p, basis[1]);
  CHECK(std::abs(j1.value()) < 1e-14);
  CHECK(std::abs(j1.first() - 1.0) < 1e-14);
  CHECK(std::abs(j1.second()) < 1e-14);

  // Weierstrass point (1, 0), z = y: dx = -z/(3x^5) dz, so dx/y = -dz/(3x^5).
  ChartPoint w;
  w.x = 1.0;
  w.y = 0.0;
  w.kind = ChartKind::YChart;
  const Jet jw = jet_at(c, w, basis[0]);
  CHECK(std::abs(jw.value() + 1.0 / 3.0) < 1e-14);

  ChartPoint bad = w;
  bad.kind = ChartKind::XChart;
  CHECK(code_of([&] { jet_at(c, bad, basis[0]); }) == ErrorCode::ChartInvalid);
  ChartPoint off = p;
  off.y = 1.1;
  CHECK(code_of([&] { jet_at(c, off, basis[0]); }) == ErrorCode::PointNotOnCurve);
}

TEST_CASE("jet weights under chart rescaling") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::vector<CurveModel> curves = {hyper(monic_minus_one(7)), trigonal(monic_minus_one(6)), fermat(5)};
  for (const auto& curve : curves) {
    const auto basis = differential_basis(curve);
    for (const auto& p : sample_points(curve, 5, 11)) {
      const cd c(u(rng), u(rng));
      for (const auto& diff : basis) {
        const Jet a = jet_at(curve, p, diff);
        const Jet b = jet_at(curve, p.rescaled(c), diff);
        const double scale = 1.0 + std::abs(a.value()) + std::abs(a.first()) + std::abs(a.second());
        CHECK(std::abs(b.value() - c * a.value()) <= 1e-10 * scale);
        CHECK(std::abs(b.first() - c * c * a.first()) <= 1e-10 * scale);
        CHECK(std::abs(b.second() - c * c * c * a.second()) <= 1e-10 * scale);
      }
    }
  }
}

TEST_CASE("sheet consistency between nearby base points") {
  const std::vector<CurveModel> curves = {hyper(monic_minus_one(7)), trigonal(monic_minus_one(6)), fermat(5)};
  for (const auto& curve : curves) {
    const auto basis = differential_basis(curve);
    for (const auto& p : sample_points(curve, 4, 3)) {
      const cd step(1e-3, -7e-4);
      const LocalChart chart = local_chart(curve, p);
      const cd y2 = chart.y.evaluate(step);
      ChartPoint q = p;
      q.x = p.x + step;
      q.y = y2;
      for (const auto& diff : basis) {
        const cd predicted = coefficient_series(chart, diff.numerator).evaluate(step);
        const Jet jq = jet_at(curve, q, diff, 0);
        CHECK(std::abs(jq.value() - predicted) <= 1e-8 * (1.0 + std::abs(predicted)));
      }
    }
  }
}

TEST_CASE("ramification charts on a plane quintic") {
  const auto q = fermat(5);
  REQUIRE(q.branch_points().size() == 5);
  for (const cd e : q.branch_points()) CHECK(std::abs(std::pow(e, 5) + 1.0) < 1e-12);
}

TEST_CASE("special points") {
  const auto g2 = hyper(monic_minus_one(5));
  const auto s = special_points(g2);
  REQUIRE(s.size() == 6);
  int finite = 0;
  for (const auto& sp : s) {
    if (sp.supported) {
      ++finite;
      CHECK(std::abs(std::pow(sp.point.x, 5) - 1.0) < 1e-12);
    } else {
      CHECK(sp.point.at_infinity);
    }
  }
  CHECK(finite == 5);
  CHECK(special_points(trigonal(monic_minus_one(6))).size() == 6);
  CHECK(special_points(fermat(5)).empty());
}

TEST_CASE("sample points are deterministic and keep away from branch points") {
  const auto c = trigonal(monic_minus_one(6));
  const auto a = sample_points(c, 30, 42);
  const auto b = sample_points(c, 30, 42);
  REQUIRE(a.size() == 30);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].y == b[i].y);
    CHECK(branch_distance(c, a[i].x) >= 1e-2);
  }
}
