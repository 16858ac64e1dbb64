#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "siegel/gauss2.hpp"
#include "siegel/hodge.hpp"
#include "siegel/quadrics.hpp"

namespace siegel {

/// Psi^{Q_k}_P(S) as a 2K-coefficient at S.
using PsiProvider = std::function<cd(int k, const ChartPoint& p, const ChartPoint& s)>;

/// Provider that only knows the diagonal S = P (value mu_2(Q_k)(P)/2);
/// anything else throws OffDiagonalUnsupported.
PsiProvider diagonal_psi(const HodgeFrame& frame, const QuadricSpace& quadrics);

/// 4 pi^2 alpha_{R,T} f_j(R) conj(f_l(T)).
cd hodge_curvature(const HodgeFrame& frame, int j, int l, const ChartPoint& r, const ChartPoint& t);

/// -64 pi^4 alpha_{S,T} alpha_{P,T} alpha_{P,P'} alpha_{S,P'}.
cd ambient_curvature(const HodgeFrame& frame, const ChartPoint& p, const ChartPoint& pp, const ChartPoint& s,
                     const ChartPoint& t);

/// 4 pi^2 sum_k Psi^k_P(S) conj(Psi^k_{P'}(T)).
cd sigma_inner(const QuadricSpace& quadrics, const PsiProvider& psi, const ChartPoint& p, const ChartPoint& pp,
               const ChartPoint& s, const ChartPoint& t);

/// <R(xi_P, xi_P') xi_S, xi_T> = ambient - sigma.
cd full_curvature(const HodgeFrame& frame, const QuadricSpace& quadrics, const PsiProvider& psi, const ChartPoint& p,
                  const ChartPoint& pp, const ChartPoint& s, const ChartPoint& t);

/// H(xi_P) = -1 - sum|mu_2(Q_k)(P)|^2 / (64 pi^2 alpha^4).
double sectional_H(const HodgeFrame& frame, const QuadricSpace& quadrics, const ChartPoint& p);
double sectional_H(double mu2_norm_sq, double alpha);

struct ProfileRow {
  std::string id;
  ChartPoint point;
  double alpha = 0.0;
  double mu2_norm_sq = 0.0;
  double h = 0.0;
  double gap = 0.0;  // -1 - H
  bool ok = true;
  std::string message;  // diagnostic for flagged rows
};

struct CurvatureReport {
  std::string curve_id;
  std::string frame_hash;
  int genus = 0;
  int i2_dimension = 0;
  std::vector<ProfileRow> rows;
  /// Rows with |H + 1| <= near_tolerance.
  int near_minus_one = 0;
  double near_tolerance = 1e-3;
  int flagged = 0;
};

/// Sweep H over points; failures at a point are recorded in its row.
CurvatureReport profile_F(const HodgeFrame& frame, const QuadricSpace& quadrics, const std::vector<ChartPoint>& points,
                          const std::vector<std::string>& ids = {}, double near_tolerance = 1e-3);

/// Columns point_id, x_re, x_im, sheet, alpha, mu2_norm_sq, H, gap_to_minus_one.
void write_curvature_csv(std::ostream& out, const CurvatureReport& report);

/// Rank of xi viewed as a symmetric map H^0(K) -> H^0(K)*.
RankDecision variation_rank(const Eigen::MatrixXcd& xi, double gap_threshold = 1e4);

/// -tr(A Abar A Abar) / tr(A Abar)^2; -1 on rank one, -1/g on the identity.
double siegel_sectional(const Eigen::MatrixXcd& a);

/// Rows per point: the components (sum_i a^k_ij f_i(P))_j / sqrt(alpha) and
/// mu_2(Q_k)(P) / alpha^2; columns: quadrics.
Eigen::MatrixXcd rho_matrix(const HodgeFrame& frame, const QuadricSpace& quadrics,
                            const std::vector<ChartPoint>& points);

}  // namespace siegel
