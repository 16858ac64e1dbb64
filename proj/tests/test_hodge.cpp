#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "siegel/hodge.hpp"
#include "support.hpp"

using namespace siegel;
using support::code_of;
using std::numbers::pi;

namespace {

Eigen::MatrixXcd random_unitary(int g, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::MatrixXcd m(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) m(i, j) = cd(n(rng), n(rng));
  return m.householderQr().householderQ();
}

const HodgeFrame& frame_g3() {
  static const HodgeFrame f = build_frame(support::hyper(7));
  return f;
}

}  // namespace

TEST_CASE("Gram matrix of y^2 = 1 - x^6 is diagonal") {
  const auto c = build_curve(make_spec(Family::Hyperelliptic, {1.0, 0, 0, 0, 0, 0, -1.0}));
  const auto basis = differential_basis(c);
  const auto g = gram_matrix(c, basis, gram_quadrature_spec(c, 1e-8));
  CHECK(std::abs(g.gram(0, 1)) <= 1e-6 * g.gram.norm());
  CHECK((g.gram - g.gram.adjoint()).norm() <= 1e-10 * g.gram.norm());

  // eta -> 2 eta scales its diagonal entry by 4.
  auto doubled = basis;
  auto& num = doubled[1].numerator;
  for (int a = 0; a <= num.max_a(); ++a)
    for (int b = 0; b <= num.max_b(); ++b) num.at(a, b) *= 2.0;
  // The closed sheet sum reads the exponents, so go through the generic path.
  const auto g2 = gram_matrix(c, doubled, gram_quadrature_spec(c, 1e-8), GramMethod::Generic);
  CHECK(std::abs(g2.gram(1, 1) - 4.0 * g.gram(1, 1)) <= 1e-7 * std::abs(g2.gram(1, 1)));
  CHECK(std::abs(g2.gram(0, 0) - g.gram(0, 0)) <= 1e-7 * std::abs(g.gram(0, 0)));
}

TEST_CASE("Gram matrix of y^2 = x^5 - 1 against a polar oracle") {
  // G_aa = 4 int |x|^(2a) / |x^5 - 1| dA = 4 int_0^inf r^(2a+1) K(r^5) dr, with
  // K the angular integral of 1/|rho e^(i phi) - 1|; the tail uses r = 1/s.
  auto truth = [](int a) {
    auto inner = [a](double r) { return std::pow(r, 2 * a + 1) * oracle::ring_inverse_distance(std::pow(r, 5)); };
    auto outer = [a](double s) {
      return std::pow(s, -2 * a - 3) * oracle::ring_inverse_distance(std::pow(s, -5));
    };
    return 4.0 * (oracle::integrate_log_end(inner, 0.0, 1.0) + oracle::integrate_log_end(outer, 0.0, 1.0));
  };
  const auto c = support::hyper(5);
  const auto g = gram_matrix(c, differential_basis(c), gram_quadrature_spec(c, 1e-7));
  for (int a = 0; a < 2; ++a) {
    const double t = truth(a);
    CHECK(std::abs(g.gram(a, a).real() - t) <= 1e-4 * t);
  }
  // x -> zeta x (zeta^5 = 1) forces the off-diagonal entry to vanish.
  CHECK(std::abs(g.gram(0, 1)) <= 1e-6 * g.gram.norm());
}

TEST_CASE("orthonormal frame") {
  CHECK((orthonormal_frame(Eigen::MatrixXcd::Identity(3, 3)) - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-15);
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  const auto t = orthonormal_frame(d);
  CHECK(std::abs(t(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(t(1, 1) - 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(t(0, 1)) < 1e-15);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  Eigen::MatrixXcd a(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = cd(n(rng), n(rng));
  const Eigen::MatrixXcd g = a * a.adjoint() + Eigen::MatrixXcd::Identity(4, 4);
  const auto tg = orthonormal_frame(g);
  CHECK((tg * g * tg.adjoint() - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-8);
}

TEST_CASE("frame invariants") {
  const HodgeFrame& f = frame_g3();
  CHECK((f.transform * f.gram * f.transform.adjoint() - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-8);
  for (const auto& p : sample_points(*f.curve, 6, 1)) {
    CHECK(alpha(f, p, p).real() > 0.0);
    CHECK(std::abs(alpha(f, p, p).imag()) < 1e-15);
  }
  const auto pts = sample_points(*f.curve, 4, 2);
  for (const auto& p : pts)
    for (const auto& q : pts) CHECK(std::abs(alpha(f, p, q) - std::conj(alpha(f, q, p))) < 1e-14);
}

TEST_CASE("alpha at the centre of y^2 = 1 - x^6 from the Gram diagonal") {
  const auto c = build_curve(make_spec(Family::Hyperelliptic, {1.0, 0, 0, 0, 0, 0, -1.0}));
  const auto f = build_frame(c);
  ChartPoint p;
  p.x = 0.0;
  p.y = 1.0;
  // f_1 = 1, f_2 = 0 in the raw basis and G is diagonal, so alpha = 1 / G_11.
  CHECK(std::abs(alpha(f, p, p).real() - 1.0 / f.gram(0, 0).real()) <= 1e-6 / f.gram(0, 0).real());
}

TEST_CASE("Schiffer matrices") {
  const HodgeFrame& f = frame_g3();
  for (const auto& p : sample_points(*f.curve, 5, 4)) {
    const auto xi = schiffer_matrix(f, p);
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(xi.a);
    CHECK(svd.singularValues()(1) <= 1e-10 * svd.singularValues()(0));
    CHECK((xi.a - xi.a.transpose()).norm() <= 1e-15 * xi.a.norm());
    const cd c(0.7, -1.3);
    CHECK((schiffer_matrix(f, p.rescaled(c)).a - c * c * xi.a).norm() <= 1e-10 * xi.a.norm());
    const Eigen::VectorXcd v = f.values(p);
    CHECK(std::abs(xi.a.trace() - 2.0 * pi * (v.array() * v.array()).sum()) <= 1e-12 * xi.a.norm());
    // |xi_P| = 2 sqrt2 pi alpha_{P,P}
    const double a = alpha(f, p, p).real();
    CHECK(std::abs(std::sqrt(sym_inner(xi.a, xi.a).real()) - 2.0 * std::sqrt(2.0) * pi * a) <= 1e-12 * a);
  }
}

TEST_CASE("symmetric product") {
  Eigen::MatrixXcd e12 = Eigen::MatrixXcd::Zero(3, 3);
  e12(0, 1) = e12(1, 0) = 0.5;
  CHECK(std::abs(sym_inner(e12, e12) - 1.0) < 1e-15);
  Eigen::MatrixXcd e11 = Eigen::MatrixXcd::Zero(3, 3);
  e11(0, 0) = 1.0;
  CHECK(std::abs(sym_inner(e11, e11) - 2.0) < 1e-15);

  std::mt19937_64 rng(8);
  std::normal_distribution<double> n;
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXcd a(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a(i, j) = cd(n(rng), n(rng));
    a = (a + a.transpose()).eval();
    CHECK(sym_inner(a, a).real() > 0.0);
  }

  const HodgeFrame& f = frame_g3();
  const auto pts = sample_points(*f.curve, 6, 5);
  for (const auto& p : pts) {
    for (const auto& q : pts) {
      const cd al = alpha(f, p, q);
      const cd lhs = sym_inner(schiffer_matrix(f, p).a, schiffer_matrix(f, q).a);
      CHECK(std::abs(lhs - 8.0 * pi * pi * al * al) <= 1e-8 * (8.0 * pi * pi * std::norm(al) + 1.0));
    }
  }
}

TEST_CASE("unitary change of frame") {
  const HodgeFrame& f = frame_g3();
  std::mt19937_64 rng(12);
  const HodgeFrame r = f.rotated(random_unitary(3, rng));
  for (const auto& p : sample_points(*f.curve, 5, 6)) {
    CHECK(std::abs(alpha(r, p, p) - alpha(f, p, p)) <= 1e-8 * alpha(f, p, p).real());
  }
}

TEST_CASE("Gram cache round trip is bit exact") {
  const auto dir = std::filesystem::temp_directory_path() / "siegel-gram-cache-test";
  std::filesystem::remove_all(dir);
  const auto c = support::hyper(5);
  FrameOptions o;
  o.cache_dir = dir.string();
  const HodgeFrame cold = build_frame(c, o);
  CHECK_FALSE(cold.from_cache);
  const HodgeFrame warm = build_frame(c, o);
  CHECK(warm.from_cache);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(warm.gram(i, j) == cold.gram(i, j));
  CHECK(warm.gram_error == cold.gram_error);
  CHECK(warm.hash() == cold.hash());
  std::filesystem::remove_all(dir);
}
