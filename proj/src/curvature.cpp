#include "siegel/curvature.hpp"

#include <cmath>
#include <numbers>

#include "siegel/error.hpp"
#include "siegel/util.hpp"

namespace siegel {

namespace {
constexpr double kPi = std::numbers::pi;
}

PsiProvider diagonal_psi(const HodgeFrame& frame, const QuadricSpace& quadrics) {
  return [&frame, &quadrics](int k, const ChartPoint& p, const ChartPoint& s) -> cd {
    if (!p.same_point_and_chart(s)) {
      throw Error(ErrorCode::OffDiagonalUnsupported, "curvature",
                  "off-diagonal Psi needs a second-kind differential at " + p.label);
    }
    return 0.5 * mu2_eval(frame, quadrics, k, p).value;
  };
}

cd hodge_curvature(const HodgeFrame& frame, int j, int l, const ChartPoint& r, const ChartPoint& t) {
  const int g = frame.genus();
  if (j < 0 || l < 0 || j >= g || l >= g) throw Error(ErrorCode::InvalidInput, "curvature", "frame index out of range");
  const Eigen::VectorXcd fr = frame.values(r);
  const Eigen::VectorXcd ft = r.same_point_and_chart(t) ? fr : frame.values(t);
  const cd a = fr.dot(ft);  // Eigen's dot conjugates its first argument
  return 4.0 * kPi * kPi * std::conj(a) * fr(j) * std::conj(ft(l));
}

cd ambient_curvature(const HodgeFrame& frame, const ChartPoint& p, const ChartPoint& pp, const ChartPoint& s,
                     const ChartPoint& t) {
  const Eigen::VectorXcd fp = frame.values(p), fpp = frame.values(pp), fs = frame.values(s), ft = frame.values(t);
  auto al = [](const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) { return (u.array() * v.conjugate().array()).sum(); };
  return -64.0 * std::pow(kPi, 4) * al(fs, ft) * al(fp, ft) * al(fp, fpp) * al(fs, fpp);
}

cd sigma_inner(const QuadricSpace& quadrics, const PsiProvider& psi, const ChartPoint& p, const ChartPoint& pp,
               const ChartPoint& s, const ChartPoint& t) {
  if (quadrics.dimension() == 0) return 0.0;
  if (!psi) throw Error(ErrorCode::OffDiagonalUnsupported, "curvature", "no Psi provider");
  CompensatedSum re, im;
  for (int k = 0; k < quadrics.dimension(); ++k) {
    const cd term = psi(k, p, s) * std::conj(psi(k, pp, t));
    re.add(term.real());
    im.add(term.imag());
  }
  return 4.0 * kPi * kPi * cd(re.value(), im.value());
}

cd full_curvature(const HodgeFrame& frame, const QuadricSpace& quadrics, const PsiProvider& psi, const ChartPoint& p,
                  const ChartPoint& pp, const ChartPoint& s, const ChartPoint& t) {
  return ambient_curvature(frame, p, pp, s, t) - sigma_inner(quadrics, psi, p, pp, s, t);
}

double sectional_H(double mu2_norm_sq, double alpha) {
  return -1.0 - mu2_norm_sq / (64.0 * kPi * kPi * std::pow(alpha, 4));
}

double sectional_H(const HodgeFrame& frame, const QuadricSpace& quadrics, const ChartPoint& p) {
  const FrameJets j = frame_jets(frame, p);
  return sectional_H(mu2_norm_sq(quadrics, j), j.alpha);
}

CurvatureReport profile_F(const HodgeFrame& frame, const QuadricSpace& quadrics, const std::vector<ChartPoint>& points,
                          const std::vector<std::string>& ids, double near_tolerance) {
  CurvatureReport rep;
  rep.curve_id = frame.curve->canonical_key();
  rep.frame_hash = frame.hash();
  rep.genus = frame.genus();
  rep.i2_dimension = quadrics.dimension();
  rep.near_tolerance = near_tolerance;
  for (std::size_t i = 0; i < points.size(); ++i) {
    ProfileRow row;
    row.point = points[i];
    row.id = i < ids.size() ? ids[i] : (points[i].label.empty() ? "p" + std::to_string(i) : points[i].label);
    try {
      const FrameJets j = frame_jets(frame, points[i]);
      row.alpha = j.alpha;
      row.mu2_norm_sq = mu2_norm_sq(quadrics, j);
      row.h = sectional_H(row.mu2_norm_sq, row.alpha);
      row.gap = -1.0 - row.h;
      if (!std::isfinite(row.h)) throw Error(ErrorCode::ChartInvalid, "curvature", "non-finite H");
      if (std::abs(row.h + 1.0) <= near_tolerance) ++rep.near_minus_one;
    } catch (const Error& e) {
      row.ok = false;
      row.message = e.what();
      row.alpha = row.mu2_norm_sq = row.h = row.gap = std::nan("");
      ++rep.flagged;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

void write_curvature_csv(std::ostream& out, const CurvatureReport& report) {
  out << "point_id,x_re,x_im,sheet,alpha,mu2_norm_sq,H,gap_to_minus_one\n";
  for (const auto& r : report.rows) {
    out << r.id << "," << format17(r.point.x.real()) << "," << format17(r.point.x.imag()) << "," << r.point.sheet << ","
        << format17(r.alpha) << "," << format17(r.mu2_norm_sq) << "," << format17(r.h) << "," << format17(r.gap)
        << "\n";
  }
}

RankDecision variation_rank(const Eigen::MatrixXcd& xi, double gap_threshold) {
  if (xi.rows() != xi.cols()) throw Error(ErrorCode::InvalidInput, "curvature", "variation must be square");
  if ((xi - xi.transpose()).norm() > 1e-10 * std::max(1.0, xi.norm())) {
    throw Error(ErrorCode::InvalidInput, "curvature", "variation must be symmetric");
  }
  return numerical_rank(xi, gap_threshold);
}

double siegel_sectional(const Eigen::MatrixXcd& a) {
  if (a.size() == 0 || a.norm() == 0.0) throw Error(ErrorCode::ZeroDirection, "curvature", "zero direction");
  // Scale first so that the fourth powers stay in range.
  const Eigen::MatrixXcd b = a / a.norm();
  const Eigen::MatrixXcd bb = b * b.conjugate();
  const double num = (bb * bb).trace().real();
  const double den = bb.trace().real();
  return -num / (den * den);
}

Eigen::MatrixXcd rho_matrix(const HodgeFrame& frame, const QuadricSpace& quadrics,
                            const std::vector<ChartPoint>& points) {
  const int g = frame.genus();
  const int q = quadrics.dimension();
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(points.size()) * (g + 1), q);
  Eigen::Index row = 0;
  for (const auto& p : points) {
    const FrameJets j = frame_jets(frame, p);
    const auto mu = mu2_values(quadrics, j);
    const double s = std::sqrt(j.alpha);
    for (int k = 0; k < q; ++k) {
      const Eigen::VectorXcd c = quadrics.a[static_cast<std::size_t>(k)] * j.f;
      m.block(row, k, g, 1) = c / s;
      m(row + g, k) = mu[static_cast<std::size_t>(k)] / (j.alpha * j.alpha);
    }
    row += g + 1;
  }
  return m;
}

}  // namespace siegel
