#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "siegel/quadrics.hpp"
#include "support.hpp"

using namespace siegel;
using support::code_of;

namespace {

struct Built {
  HodgeFrame frame;
  QuadricSpace q;
};

Built build(const CurveModel& c, std::uint64_t seed = 1) {
  Built b{support::cached_frame(c), {}};
  b.q = i2_basis(b.frame, sample_points(c, 4 * b.frame.genus(), seed));
  return b;
}

const Built& quintic() {
  static const Built b = build(support::fermat(5));
  return b;
}

const Built& hyp3() {
  static const Built b = build(support::hyper(7));
  return b;
}

const Built& tri4() {
  static const Built b = build(support::trigonal(6));
  return b;
}

}  // namespace

TEST_CASE("dimension of I2") {
  CHECK(build(support::hyper(5)).q.dimension() == 0);
  CHECK(tri4().q.dimension() == 1);
  CHECK(hyp3().q.dimension() == 1);
  CHECK(quintic().q.dimension() == 6);
  CHECK(build(support::hyper(9)).q.dimension() == 3);
  for (const Built* b : {&tri4(), &hyp3(), &quintic()}) CHECK(b->q.matches_expected());
}

TEST_CASE("rank of the multiplication map") {
  const auto g2 = support::hyper(5);
  const auto f2 = support::cached_frame(g2);
  CHECK(multiplication_image_rank(f2, sample_points(g2, 8, 1)).rank == 3);
  CHECK(multiplication_image_rank(hyp3().frame, sample_points(*hyp3().frame.curve, 12, 1)).rank == 5);
  const auto d = multiplication_image_rank(quintic().frame, sample_points(*quintic().frame.curve, 24, 1));
  CHECK(d.rank == 15);
  CHECK(d.gap >= 1e4);
}

TEST_CASE("hyperelliptic quadric is the raw relation x^0 x^2 = x^1 x^1") {
  // On y^2 = x^7 - 1 with eta_a = x^a dx / y the only relation is
  // eta_0 eta_2 - eta_1^2. In raw coordinates the frame quadric is T^T a T.
  const Built& b = hyp3();
  const Eigen::MatrixXcd raw = b.frame.transform.transpose() * b.q.a[0] * b.frame.transform;
  Eigen::MatrixXcd rel = Eigen::MatrixXcd::Zero(3, 3);
  rel(0, 2) = rel(2, 0) = 0.5;
  rel(1, 1) = -1.0;
  const cd scale = raw(1, 1) / rel(1, 1);
  CHECK((raw - scale * rel).norm() <= 1e-8 * raw.norm());
}

TEST_CASE("quadrics vanish on the canonical curve") {
  for (const Built* b : {&tri4(), &hyp3(), &quintic()}) {
    const CurveModel& c = *b->frame.curve;
    for (const auto& p : sample_points(c, 50, 99)) {
      const auto jets = b->frame.jets(p, 1);
      const int g = b->frame.genus();
      Eigen::VectorXcd f(g), f1(g);
      for (int i = 0; i < g; ++i) {
        f(i) = jets[static_cast<std::size_t>(i)].value();
        f1(i) = jets[static_cast<std::size_t>(i)].first();
      }
      const double al = f.squaredNorm();
      for (const auto& a : b->q.a) {
        CHECK(std::abs(quadric_form(a, f, f)) <= 1e-6 * al * a.norm());
        CHECK(std::abs(quadric_form(a, f1, f)) <= 1e-5 * std::sqrt(al * f1.squaredNorm()) * a.norm());
      }
    }
  }
}

TEST_CASE("orthonormal in the induced metric") {
  const auto& q = quintic().q;
  for (int k = 0; k < q.dimension(); ++k) {
    CHECK((q.a[k] - q.a[k].transpose()).norm() < 1e-14);
    for (int l = 0; l < q.dimension(); ++l) {
      const cd ip = sym_inner(q.a[k], q.a[l]);
      CHECK(std::abs(ip - (k == l ? 1.0 : 0.0)) < 1e-8);
    }
  }
}

TEST_CASE("independent of the sample seed") {
  for (const Built* b : {&tri4(), &hyp3(), &quintic()}) {
    const CurveModel& c = *b->frame.curve;
    const auto other = i2_basis(b->frame, sample_points(c, 4 * b->frame.genus(), 777));
    CHECK(principal_angle(b->q, other) <= 1e-6);
  }
}

TEST_CASE("unknown vectors map to unit quadrics") {
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(6);
  u(1) = 1.0;
  CHECK(std::abs(sym_inner(quadric_from_unknowns(u, 3), quadric_from_unknowns(u, 3)) - 1.0) < 1e-15);
  u.setConstant(cd(1.0, 2.0));
  u /= u.norm();
  CHECK(std::abs(sym_inner(quadric_from_unknowns(u, 3), quadric_from_unknowns(u, 3)) - 1.0) < 1e-14);
}

TEST_CASE("too few points") {
  CHECK(code_of([] { i2_basis(hyp3().frame, sample_points(*hyp3().frame.curve, 11, 1)); }) == ErrorCode::TooFewPoints);
}
