#include "siegel/quadrics.hpp"

#include <cmath>
#include <numbers>

#include "siegel/error.hpp"

namespace siegel {

int expected_multiplication_rank(const CurveModel& curve) {
  const int g = curve.genus();
  if (g == 2) return 3;
  return curve.hyperelliptic() ? 2 * g - 1 : 3 * g - 3;
}

int expected_i2_dimension(const CurveModel& curve) {
  const int g = curve.genus();
  return g * (g + 1) / 2 - expected_multiplication_rank(curve);
}

Eigen::MatrixXcd multiplication_matrix(const HodgeFrame& frame, const std::vector<ChartPoint>& points) {
  const int g = frame.genus();
  const int cols = g * (g + 1) / 2;
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(points.size()), cols);
  for (std::size_t r = 0; r < points.size(); ++r) {
    const Eigen::VectorXcd f = frame.values(points[r]);
    const double a = f.squaredNorm();
    int c = 0;
    for (int i = 0; i < g; ++i)
      for (int j = i; j < g; ++j) {
        const double w = i == j ? 1.0 : std::sqrt(2.0);
        m(static_cast<Eigen::Index>(r), c++) = w * f(i) * f(j) / a;
      }
  }
  return m;
}

Eigen::MatrixXcd quadric_from_unknowns(const Eigen::VectorXcd& u, int g) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(g, g);
  int c = 0;
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) {
      if (i == j) {
        a(i, i) = u(c) / std::sqrt(2.0);
      } else {
        a(i, j) = u(c) / 2.0;
        a(j, i) = a(i, j);
      }
      ++c;
    }
  return a;
}

cd quadric_form(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  return (u.transpose() * a * v)(0, 0);
}

RankDecision multiplication_image_rank(const HodgeFrame& frame, const std::vector<ChartPoint>& points,
                                       double gap_threshold) {
  return numerical_rank(multiplication_matrix(frame, points), gap_threshold);
}

QuadricSpace i2_basis(const HodgeFrame& frame, const std::vector<ChartPoint>& points, double gap_threshold) {
  const int g = frame.genus();
  if (static_cast<int>(points.size()) < 4 * g) {
    throw Error(ErrorCode::TooFewPoints, "quadrics",
                "need at least 4g = " + std::to_string(4 * g) + " sample points, got " + std::to_string(points.size()));
  }
  QuadricSpace space;
  space.points = points;
  space.expected_dimension = expected_i2_dimension(*frame.curve);
  const Nullspace ns = nullspace(multiplication_matrix(frame, points), gap_threshold);
  space.decision = ns.decision;
  for (Eigen::Index k = 0; k < ns.basis.cols(); ++k) space.a.push_back(quadric_from_unknowns(ns.basis.col(k), g));
  return space;
}

double principal_angle(const QuadricSpace& s, const QuadricSpace& t) {
  if (s.dimension() != t.dimension()) return std::numbers::pi / 2;
  if (s.dimension() == 0) return 0.0;
  const Eigen::Index g = s.a.front().rows();
  auto stack = [g](const QuadricSpace& q) {
    Eigen::MatrixXcd m(g * g, q.dimension());
    for (int k = 0; k < q.dimension(); ++k) m.col(k) = Eigen::Map<const Eigen::VectorXcd>(q.a[static_cast<std::size_t>(k)].data(), g * g) * std::sqrt(2.0);
    return m;
  };
  // sin of the largest angle = norm of the part of t outside span(s).
  const Eigen::MatrixXcd bs = stack(s);
  const Eigen::MatrixXcd bt = stack(t);
  const Eigen::MatrixXcd outside = bt - bs * (bs.adjoint() * bt);
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(outside);
  return std::asin(std::min(1.0, svd.singularValues()(0)));
}

}  // namespace siegel
