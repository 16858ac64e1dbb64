#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "siegel/error.hpp"
#include "siegel/kernel.hpp"

using namespace siegel;
using std::numbers::pi;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

Eigen::MatrixXcd random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cd(n(rng), n(rng));
  return m;
}

}  // namespace

TEST_CASE("inverse distance over the unit disk") {
  QuadratureSpec spec;
  spec.disk_radius = 1.0;
  spec.singularities = {0.0};
  const auto r = integrate_plane([](cd x) -> cd { return 1.0 / std::abs(x); }, spec);
  CHECK(std::abs(r.values[0] - 2.0 * pi) < 1e-9);
}

TEST_CASE("gaussian over the plane") {
  QuadratureSpec spec;
  const auto r = integrate_plane([](cd x) -> cd { return std::exp(-std::norm(x)); }, spec);
  CHECK(std::abs(r.values[0] - pi) < 1e-9);
}

TEST_CASE("two logarithmic-type singularities against a polar oracle") {
  // In polar coordinates the angular integral of 1/|r^2 e^{2i phi} - 1| is
  // a complete elliptic integral; the radial one has a log singularity at 1.
  auto radial = [](double r) { return r * oracle::ring_inverse_distance(r * r); };
  const double truth = oracle::integrate_log_end(radial, 0.0, 1.0) + oracle::integrate_log_start(radial, 1.0, 2.0);
  QuadratureSpec spec;
  spec.disk_radius = 2.0;
  spec.singularities = {1.0, -1.0};
  const auto r = integrate_plane([](cd x) -> cd { return 1.0 / std::abs(x * x - 1.0); }, spec);
  CHECK(std::abs(r.values[0].real() - truth) <= 1e-5 * truth);
  CHECK(r.error <= 1e-6 * truth);
}

TEST_CASE("linearity and determinism") {
  QuadratureSpec spec;
  spec.singularities = {cd(0.5, 0.2), cd(-0.7, 0.1)};
  auto f = [](cd x) -> cd { return 1.0 / std::sqrt(std::abs((x - cd(0.5, 0.2)) * (x + cd(0.7, -0.1)))) / (1.0 + std::norm(x) * std::norm(x)); };
  const cd c(2.5, -1.25);
  const auto a = integrate_plane(f, spec);
  const auto b = integrate_plane([&](cd x) { return c * f(x); }, spec);
  const auto again = integrate_plane(f, spec);
  CHECK(std::abs(b.values[0] - c * a.values[0]) <= 1e-12 * std::abs(c * a.values[0]));
  CHECK(again.values[0] == a.values[0]);
  CHECK(again.error == a.error);
}

TEST_CASE("vector integrands integrate componentwise") {
  QuadratureSpec spec;
  spec.disk_radius = 1.0;
  spec.singularities = {0.0};
  const PlaneIntegrand f = [](cd x, std::span<cd> out) {
    out[0] = 1.0 / std::abs(x);
    out[1] = std::norm(x);
  };
  const auto r = integrate_plane(f, 2, spec);
  CHECK(std::abs(r.values[0] - 2.0 * pi) < 1e-9);
  CHECK(std::abs(r.values[1] - pi / 2.0) < 1e-9);
}

TEST_CASE("too strong singularity is reported") {
  QuadratureSpec spec;
  spec.disk_radius = 1.0;
  spec.singularities = {0.0};
  spec.singular_power = 1;
  spec.max_depth = 25;
  CHECK(code_of([&] { integrate_plane([](cd x) -> cd { return std::pow(std::abs(x), -2.5); }, spec); }) ==
        ErrorCode::SingularityTooStrong);
  QuadratureSpec tight;
  tight.max_cells = 50;
  tight.rel_tol = 1e-14;
  CHECK(code_of([&] { integrate_plane([](cd x) -> cd { return std::exp(-std::norm(x - 3.0) * 40.0); }, tight); }) ==
        ErrorCode::NoConvergence);
}

TEST_CASE("principal value of a double pole against a polar oracle") {
  const cd c(0.3, 0.1);
  auto g = [](cd x) { return std::exp(-std::norm(x)); };
  // PV = int_0^inf (1/r) A(r) dr, A(r) = int e^{-2i theta} g(c + r e^{i theta}) d theta;
  // A is O(r^2) so the radial integrand is regular. Trapezoid in theta.
  auto angular = [&](double r) {
    const int m = 256;
    cd acc{};
    for (int k = 0; k < m; ++k) {
      const double th = 2.0 * pi * k / m;
      acc += std::polar(1.0, -2.0 * th) * g(c + std::polar(r, th));
    }
    return acc * (2.0 * pi / m) / r;
  };
  const double re = oracle::integrate_1d([&](double r) { return angular(r).real(); }, 0.0, 9.0, 90);
  const double im = oracle::integrate_1d([&](double r) { return angular(r).imag(); }, 0.0, 9.0, 90);
  QuadratureSpec spec;
  spec.singularities = {cd(2.0, 0.0)};  // gives the layout a length scale only
  const PlaneIntegrand f = [&](cd x, std::span<cd> out) { out[0] = g(x) / ((x - c) * (x - c)); };
  const auto pv = integrate_plane_pv(f, 1, spec, c);
  CHECK(std::abs(pv.values[0] - cd(re, im)) <= 1e-6);
  CHECK(pv.extrapolation_error <= 1e-6);
}

TEST_CASE("rectangle rule") {
  const auto r = integrate_rectangle([](double x, double y) { return std::exp(x) * std::cos(y); }, 0.0, 1.0, 0.0, 2.0,
                                     1e-13);
  CHECK(std::abs(r.values[0].real() - (std::exp(1.0) - 1.0) * std::sin(2.0)) < 1e-13);
}

TEST_CASE("nullspace examples") {
  Eigen::MatrixXcd ones(2, 2);
  ones << 1.0, 1.0, 1.0, 1.0;
  const auto n1 = nullspace(ones);
  REQUIRE(n1.basis.cols() == 1);
  const cd ratio = n1.basis(0, 0) / n1.basis(1, 0);
  CHECK(std::abs(ratio + 1.0) < 1e-12);
  CHECK(std::abs(n1.basis.col(0).norm() - 1.0) < 1e-12);

  const auto n2 = nullspace(Eigen::MatrixXcd::Identity(3, 3));
  CHECK(n2.basis.cols() == 0);
  CHECK(n2.decision.rank == 3);

  std::mt19937_64 rng(5);
  const Eigen::MatrixXcd a = random_matrix(10, 4, rng);
  const Eigen::MatrixXcd b = random_matrix(4, 6, rng);
  const Eigen::MatrixXcd m = a * b;
  const auto n3 = nullspace(m);
  REQUIRE(n3.basis.cols() == 2);
  CHECK(n3.decision.rank == 4);
  CHECK(n3.decision.gap >= 1e4);
  const Eigen::MatrixXcd gram = n3.basis.adjoint() * n3.basis;
  CHECK((gram - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);
  CHECK((m * n3.basis).norm() <= n3.decision.singular_values[3] * 1e-8);
  // The nullspace of AB is the nullspace of B (A has full column rank).
  CHECK((b * n3.basis).norm() < 1e-10);

  // Unitary invariance.
  const Eigen::MatrixXcd q = random_matrix(6, 6, rng).householderQr().householderQ();
  const auto n4 = nullspace(m * q);
  CHECK(n4.basis.cols() == 2);
  CHECK((m * q * n4.basis).norm() <= n4.decision.singular_values[3] * 1e-8);
}

TEST_CASE("ambiguous rank is refused") {
  // Evenly decaying spectrum down to the rounding floor: no clean gap.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(6, 6);
  for (int i = 0; i < 6; ++i) m(i, i) = std::pow(10.0, -3.0 * i);
  CHECK(code_of([&] { nullspace(m); }) == ErrorCode::AmbiguousRank);
  const auto d = numerical_rank(m);
  CHECK(d.ambiguous);
}

TEST_CASE("cholesky examples") {
  CHECK((cholesky_hpd(Eigen::MatrixXcd::Identity(3, 3)) - Eigen::MatrixXcd::Identity(3, 3)).norm() == 0.0);
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  const auto l = cholesky_hpd(d);
  CHECK(std::abs(l(0, 0) - 2.0) < 1e-15);
  CHECK(std::abs(l(1, 1) - 3.0) < 1e-15);
  std::mt19937_64 rng(9);
  const Eigen::MatrixXcd a = random_matrix(5, 5, rng);
  const Eigen::MatrixXcd h = a * a.adjoint() + Eigen::MatrixXcd::Identity(5, 5);
  const auto lh = cholesky_hpd(h);
  CHECK((lh * lh.adjoint() - h).norm() <= 1e-12 * h.norm());
  Eigen::MatrixXcd indefinite = Eigen::MatrixXcd::Identity(2, 2);
  indefinite(1, 1) = -1.0;
  CHECK(code_of([&] { cholesky_hpd(indefinite); }) == ErrorCode::NotPositiveDefinite);
}
