#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "siegel/hodge.hpp"
#include "siegel/quadrics.hpp"

namespace siegel {

/// Frame jets at one point, as vectors over the orthonormal frame.
struct FrameJets {
  ChartPoint point;
  Eigen::VectorXcd f, f1, f2;
  double alpha = 0.0;  // alpha_{P,P}
};

FrameJets frame_jets(const HodgeFrame& frame, const ChartPoint& p);

struct Mu2Evaluation {
  int quadric = 0;
  ChartPoint point;
  cd value;       // sum a_ij f_i'' f_j
  cd alternate;   // -sum a_ij f_i' f_j'
  double discrepancy = 0.0;
};

Mu2Evaluation mu2_eval(const QuadricSpace& quadrics, int k, const FrameJets& jets);
Mu2Evaluation mu2_eval(const HodgeFrame& frame, const QuadricSpace& quadrics, int k, const ChartPoint& p);

/// mu_2(Q_k)(P) for every basis quadric.
std::vector<cd> mu2_values(const QuadricSpace& quadrics, const FrameJets& jets);

/// sum_k |mu_2(Q_k)(P)|^2 (chart weight 8).
double mu2_norm_sq(const QuadricSpace& quadrics, const FrameJets& jets);
double mu2_norm_sq(const HodgeFrame& frame, const QuadricSpace& quadrics, const ChartPoint& p);

/// Rank of [mu_2(Q_k)(P_m) / alpha_{P_m}^2]; throws TooFewPoints below 8g points.
RankDecision mu2_rank(const HodgeFrame& frame, const QuadricSpace& quadrics, const std::vector<ChartPoint>& points,
                      double gap_threshold = 1e4);

struct Mu2Row {
  std::string id;
  ChartPoint point;
  double alpha = 0.0;
  double norm_sq = 0.0;
};

/// Columns point_id, x_re, x_im, sheet, alpha, mu2_norm_sq, mu2_norm_sq_normalized.
void write_mu2_csv(std::ostream& out, const std::vector<Mu2Row>& rows);

}  // namespace siegel
