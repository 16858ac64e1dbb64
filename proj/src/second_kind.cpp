#include "siegel/second_kind.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <tuple>

#include "siegel/error.hpp"
#include "siegel/gauss2.hpp"

namespace siegel {

namespace {

Series shifted_poly(const std::vector<cd>& a, const Series& d) {
  Series acc;
  for (std::size_t k = a.size(); k-- > 0;) acc = acc * d + Series(a[k]);
  return acc;
}

cd shifted_poly(const std::vector<cd>& a, cd d) {
  cd acc{};
  for (std::size_t k = a.size(); k-- > 0;) acc = acc * d + a[k];
  return acc;
}

std::vector<cd> poly_mul(const std::vector<cd>& a, const std::vector<cd>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<cd> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<cd> poly_sub(std::vector<cd> a, const std::vector<cd>& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

// Coefficients of p(x0 + z) in z.
std::vector<cd> taylor_at(const Poly& p, cd x0) {
  std::vector<cd> c = p.coefficients();
  for (std::size_t k = 0; k + 1 < c.size(); ++k)
    for (std::size_t j = c.size() - 1; j > k; --j) c[j - 1] += x0 * c[j];
  return c;
}

ChartPoint unit_chart(const ChartPoint& p, cd y) {
  ChartPoint u;
  u.x = p.x;
  u.y = y;
  u.kind = ChartKind::XChart;
  u.label = p.label;
  return u;
}

// A(X)/Y + B(X) along a chart.
Series u_series(const EtaForm& eta, const LocalChart& chart) {
  const Series d = chart.x - Series(eta.point.x);
  return shifted_poly(eta.a, d) * chart.y.inverse() + Series(eta.b0) + chart.x * eta.b1;
}

}  // namespace

EtaForm eta_form(const HodgeFrame& frame, const ChartPoint& p, const EtaOptions& options) {
  const CurveModel& curve = *frame.curve;
  if (curve.family() != Family::Hyperelliptic) {
    throw Error(ErrorCode::InvalidInput, "second_kind", "eta_P is implemented for hyperelliptic curves only");
  }
  if (p.at_infinity) throw Error(ErrorCode::WeierstrassPoleUnsupported, "second_kind", "pole at infinity");
  const Poly& f = curve.branch_polynomial();
  if (std::abs(p.y) <= 1e-6 * std::sqrt(std::max(f.magnitude(p.x), 1e-300)) || p.kind == ChartKind::YChart) {
    throw Error(ErrorCode::WeierstrassPoleUnsupported, "second_kind", "pole at a Weierstrass point");
  }
  const int g = frame.genus();
  EtaForm eta;
  eta.point = p;

  const LocalChart at_p = local_chart(curve, unit_chart(p, p.y));
  const LocalChart at_sigma = local_chart(curve, unit_chart(p, -p.y));
  const Series inv_p = at_p.y.inverse();
  const Series inv_s = at_sigma.y.inverse();

  // Unknowns: a_0..a_{g+1}, b0, b1. Rows: z^0, z^1 of u at P and at
  // sigma(P), then b1 = 0 (dx / x has a pole at infinity).
  const int n = g + 4;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(5, n);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(5);
  rhs(0) = -1.0;
  for (int k = 0; k <= g + 1; ++k) {
    Series zk(1.0);
    for (int i = 0; i < k; ++i) zk = zk * Series::variable();
    const Series up = zk * inv_p;
    const Series us = zk * inv_s;
    m(0, k) = up[0];
    m(1, k) = up[1];
    m(2, k) = us[0];
    m(3, k) = us[1];
  }
  m(0, g + 2) = m(2, g + 2) = 1.0;
  m(0, g + 3) = m(2, g + 3) = p.x;
  m(1, g + 3) = m(3, g + 3) = 1.0;
  m(4, g + 3) = 1.0;
  const Eigen::VectorXcd sol = m.completeOrthogonalDecomposition().solve(rhs);
  eta.a.assign(sol.data(), sol.data() + g + 2);
  eta.b0 = sol(g + 2);
  eta.b1 = sol(g + 3);

  const Series up = u_series(eta, at_p);
  const Series us = u_series(eta, at_sigma);
  eta.principal = up[0];
  eta.residue = up[1];
  eta.sigma_principal = us[0];
  eta.sigma_residue = us[1];
  const double bad = std::max({std::abs(eta.principal + 1.0), std::abs(eta.residue), std::abs(eta.sigma_principal),
                               std::abs(eta.sigma_residue)});
  if (bad > 1e-8) {
    throw Error(ErrorCode::InvalidInput, "second_kind", "jet conditions not met (defect " + std::to_string(bad) + ")");
  }

  const auto pv = psi_pairings(frame, eta, options.rel_tol, options.pv_tol);
  const Eigen::Map<const Eigen::VectorXcd> raw(pv.values.data(), g);
  eta.c = frame.transform.conjugate() * raw;
  eta.pv_quadrature_error = pv.quadrature_error;
  eta.pv_extrapolation_error = pv.extrapolation_error;

  if (options.certify) {
    // (1,0) part of psi - sum c_i omega_i, from an independent tighter run.
    const auto check = psi_pairings(frame, eta, options.rel_tol / 10.0, options.pv_tol);
    const Eigen::Map<const Eigen::VectorXcd> raw2(check.values.data(), g);
    eta.projection_residual = (frame.transform.conjugate() * raw2 - eta.c).norm();
  }
  return eta;
}

PrincipalValueResult psi_pairings(const HodgeFrame& frame, const EtaForm& eta, double rel_tol, double pv_tol) {
  const CurveModel& curve = *frame.curve;
  const Poly& f = curve.branch_polynomial();
  const BiPoly& fy = curve.equation_dy();
  const auto& basis = frame.basis;
  const cd x0 = eta.point.x;
  const PlaneIntegrand integrand = [&](cd x, std::span<cd> out) {
    const cd root = std::sqrt(f(x));
    const cd z2 = (x - x0) * (x - x0);
    const cd av = shifted_poly(eta.a, x - x0);
    const cd bv = eta.b0 + eta.b1 * x;
    for (const cd y : {root, -root}) {
      const cd psi = (av / y + bv) / z2;
      const cd w = fy(x, y);
      for (std::size_t l = 0; l < basis.size(); ++l) out[l] += 2.0 * psi * std::conj(basis[l].numerator(x, y) / w);
    }
  };
  QuadratureSpec spec = gram_quadrature_spec(curve, rel_tol);
  spec.tolerance_from_magnitude = true;
  return integrate_plane_pv(integrand, basis.size(), spec, x0, pv_tol);
}

cd psi_coefficient(const CurveModel& curve, const EtaForm& eta, const ChartPoint& s) {
  const LocalChart chart = local_chart(curve, s);
  const cd x0 = eta.point.x;
  const cd y0 = eta.point.y;
  const cd d = chart.x[0] - x0;
  const cd xp = chart.x.derivative()[0];
  const cd ys = chart.y[0];
  if (std::abs(d) <= 0.5 * branch_distance(curve, x0) && std::abs(ys + y0) < std::abs(ys - y0)) {
    // Near sigma(P) A/y + B is a difference of nearly equal terms. Use
    // (A + By)(A - By) = A^2 - B^2 f instead: a polynomial in z = x - x0,
    // the same on both sheets, divisible by z^2 since A + By = O(z^2) here.
    const std::vector<cd> b = {eta.b0 + eta.b1 * x0, eta.b1};
    const std::vector<cd> n =
        poly_sub(poly_mul(eta.a, eta.a), poly_mul(poly_mul(b, b), taylor_at(curve.branch_polynomial(), x0)));
    const std::vector<cd> q(n.begin() + std::min<std::size_t>(2, n.size()), n.end());
    const cd minus = shifted_poly(eta.a, d) - shifted_poly(b, d) * ys;
    return shifted_poly(q, d) / (ys * minus) * xp;
  }
  if (std::abs(d) <= 1e-12 * (1.0 + std::abs(x0))) {
    throw Error(ErrorCode::InvalidInput, "second_kind", "psi has its pole at this point; use the diagonal limit");
  }
  // At a ramification point Y and X' both vanish.
  const cd ratio = std::abs(ys) > 0.0 ? xp / ys : chart.x.derivative()[1] / chart.y[1];
  const cd av = shifted_poly(eta.a, d);
  const cd bv = eta.b0 + eta.b1 * chart.x[0];
  return (av * ratio + bv * xp) / (d * d);
}

cd eta_coefficient(const HodgeFrame& frame, const EtaForm& eta, const ChartPoint& s) {
  const cd psi = psi_coefficient(*frame.curve, eta, s);
  const Eigen::VectorXcd fs = frame.values(s);
  return eta.point.scale * (psi - (eta.c.array() * fs.array()).sum());
}

cd psi_eval(const HodgeFrame& frame, const QuadricSpace& quadrics, const EtaForm& eta, int k, const ChartPoint& s) {
  if (k < 0 || k >= quadrics.dimension()) throw Error(ErrorCode::InvalidInput, "second_kind", "quadric index out of range");
  if (s.same_point_and_chart(eta.point)) return 0.5 * mu2_eval(frame, quadrics, k, eta.point).value;
  const Eigen::VectorXcd fp = frame.values(eta.point);
  const Eigen::VectorXcd fs = frame.values(s);
  return -eta_coefficient(frame, eta, s) * quadric_form(quadrics.a[static_cast<std::size_t>(k)], fp, fs);
}

PsiProvider hyperelliptic_psi(const HodgeFrame& frame, const QuadricSpace& quadrics, const EtaOptions& options) {
  using Key = std::tuple<double, double, double, double, int, double, double>;
  auto cache = std::make_shared<std::map<Key, std::shared_ptr<const EtaForm>>>();
  return [&frame, &quadrics, options, cache](int k, const ChartPoint& p, const ChartPoint& s) -> cd {
    if (p.same_point_and_chart(s)) return 0.5 * mu2_eval(frame, quadrics, k, p).value;
    const Key key{p.x.real(), p.x.imag(), p.y.real(), p.y.imag(), static_cast<int>(p.kind), p.scale.real(),
                  p.scale.imag()};
    auto it = cache->find(key);
    if (it == cache->end()) {
      it = cache->emplace(key, std::make_shared<const EtaForm>(eta_form(frame, p, options))).first;
    }
    return psi_eval(frame, quadrics, *it->second, k, s);
  };
}

}  // namespace siegel
