#pragma once

#include <Eigen/Dense>
#include <vector>

#include "siegel/hodge.hpp"
#include "siegel/kernel.hpp"

namespace siegel {

/// Orthonormal basis of I_2(K): quadrics Q = sum a_ij omega_i omega_j with
/// a symmetric and <Q, Q'> = 2 sum a conj(a') = delta.
struct QuadricSpace {
  std::vector<Eigen::MatrixXcd> a;
  int expected_dimension = 0;
  /// Rank decision for the multiplication map evaluated at the points.
  RankDecision decision;
  std::vector<ChartPoint> points;

  int dimension() const { return static_cast<int>(a.size()); }
  bool matches_expected() const { return dimension() == expected_dimension; }
};

/// dim I_2 predicted by the exact sequence: g(g+1)/2 - (3g-3), or
/// g(g+1)/2 - (2g-1) on the hyperelliptic locus.
int expected_i2_dimension(const CurveModel& curve);
int expected_multiplication_rank(const CurveModel& curve);

/// Rows: points, columns: unknowns u_ii = a_ii, u_ij = sqrt2 a_ij (i<j);
/// each row divided by alpha_{P,P}.
Eigen::MatrixXcd multiplication_matrix(const HodgeFrame& frame, const std::vector<ChartPoint>& points);

/// Throws TooFewPoints (< 4g points) or AmbiguousRank.
QuadricSpace i2_basis(const HodgeFrame& frame, const std::vector<ChartPoint>& points, double gap_threshold = 1e4);

RankDecision multiplication_image_rank(const HodgeFrame& frame, const std::vector<ChartPoint>& points,
                                       double gap_threshold = 1e4);

/// Symmetric matrix for an unknown vector in the ordering used above, scaled
/// so that a unit vector gives a unit quadric.
Eigen::MatrixXcd quadric_from_unknowns(const Eigen::VectorXcd& u, int g);

/// sum a_ij u_i v_j.
cd quadric_form(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

/// Largest principal angle (radians) between two quadric spaces.
double principal_angle(const QuadricSpace& s, const QuadricSpace& t);

}  // namespace siegel
