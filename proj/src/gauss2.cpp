#include "siegel/gauss2.hpp"

#include <cmath>

#include "siegel/error.hpp"
#include "siegel/util.hpp"

namespace siegel {

FrameJets frame_jets(const HodgeFrame& frame, const ChartPoint& p) {
  const auto jets = frame.jets(p, 2);
  const int g = frame.genus();
  FrameJets out;
  out.point = p;
  out.f.resize(g);
  out.f1.resize(g);
  out.f2.resize(g);
  for (int i = 0; i < g; ++i) {
    out.f(i) = jets[static_cast<std::size_t>(i)].value();
    out.f1(i) = jets[static_cast<std::size_t>(i)].first();
    out.f2(i) = jets[static_cast<std::size_t>(i)].second();
  }
  out.alpha = out.f.squaredNorm();
  return out;
}

Mu2Evaluation mu2_eval(const QuadricSpace& quadrics, int k, const FrameJets& j) {
  if (k < 0 || k >= quadrics.dimension()) throw Error(ErrorCode::InvalidInput, "gauss2", "quadric index out of range");
  const auto& a = quadrics.a[static_cast<std::size_t>(k)];
  Mu2Evaluation e;
  e.quadric = k;
  e.point = j.point;
  e.value = quadric_form(a, j.f2, j.f);
  e.alternate = -quadric_form(a, j.f1, j.f1);
  e.discrepancy = std::abs(e.value - e.alternate);
  return e;
}

Mu2Evaluation mu2_eval(const HodgeFrame& frame, const QuadricSpace& quadrics, int k, const ChartPoint& p) {
  return mu2_eval(quadrics, k, frame_jets(frame, p));
}

std::vector<cd> mu2_values(const QuadricSpace& quadrics, const FrameJets& j) {
  std::vector<cd> v;
  v.reserve(quadrics.a.size());
  for (const auto& a : quadrics.a) v.push_back(quadric_form(a, j.f2, j.f));
  return v;
}

double mu2_norm_sq(const QuadricSpace& quadrics, const FrameJets& j) {
  double acc = 0.0;
  for (const cd v : mu2_values(quadrics, j)) acc += std::norm(v);
  return acc;
}

double mu2_norm_sq(const HodgeFrame& frame, const QuadricSpace& quadrics, const ChartPoint& p) {
  return mu2_norm_sq(quadrics, frame_jets(frame, p));
}

RankDecision mu2_rank(const HodgeFrame& frame, const QuadricSpace& quadrics, const std::vector<ChartPoint>& points,
                      double gap_threshold) {
  const int g = frame.genus();
  if (static_cast<int>(points.size()) < 8 * g) {
    throw Error(ErrorCode::TooFewPoints, "gauss2",
                "need at least 8g = " + std::to_string(8 * g) + " sample points, got " + std::to_string(points.size()));
  }
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(points.size()), quadrics.dimension());
  for (std::size_t r = 0; r < points.size(); ++r) {
    const FrameJets j = frame_jets(frame, points[r]);
    const auto v = mu2_values(quadrics, j);
    // mu_2 has chart weight 4 and alpha weight 2: the ratio is chart-free.
    for (int k = 0; k < quadrics.dimension(); ++k) m(static_cast<Eigen::Index>(r), k) = v[static_cast<std::size_t>(k)] / (j.alpha * j.alpha);
  }
  return numerical_rank(m, gap_threshold);
}

void write_mu2_csv(std::ostream& out, const std::vector<Mu2Row>& rows) {
  out << "point_id,x_re,x_im,sheet,alpha,mu2_norm_sq,mu2_norm_sq_normalized\n";
  for (const auto& r : rows) {
    out << r.id << "," << format17(r.point.x.real()) << "," << format17(r.point.x.imag()) << "," << r.point.sheet << ","
        << format17(r.alpha) << "," << format17(r.norm_sq) << "," << format17(r.norm_sq / std::pow(r.alpha, 4)) << "\n";
  }
}

}  // namespace siegel
