#pragma once

#include <Eigen/Dense>
#include <vector>

#include "siegel/curvature.hpp"
#include "siegel/hodge.hpp"
#include "siegel/quadrics.hpp"

namespace siegel {

/// eta_P on a hyperelliptic curve, built from the rational differential
///   psi = (A(x) / y + B(x)) dx / (x - x0)^2
/// minus the holomorphic part sum_i c_i omega_i of its class.
///
/// Everything below is for the unit chart x - x0 at P; the chart of the
/// stored point enters only through its scale.
struct EtaForm {
  ChartPoint point;
  /// A(x) = sum_k a[k] (x - x0)^k, deg A <= g + 1.
  std::vector<cd> a;
  cd b0{}, b1{};  // B(x) = b0 + b1 x
  /// Coefficients in the orthonormal frame.
  Eigen::VectorXcd c;
  /// Laurent coefficients of psi at P (z^-2, z^-1) and at sigma(P).
  cd principal{}, residue{};
  cd sigma_principal{}, sigma_residue{};
  /// Frame norm of the (1,0) part left after subtracting sum c_i omega_i
  /// (recomputed with a tighter quadrature); negative if not checked.
  double projection_residual = -1.0;
  double pv_quadrature_error = 0.0;
  double pv_extrapolation_error = 0.0;
};

struct EtaOptions {
  double rel_tol = 1e-9;
  double pv_tol = 1e-6;
  bool certify = true;
};

/// Throws WeierstrassPoleUnsupported for y(P) = 0 (or P at infinity),
/// InvalidInput for non-hyperelliptic curves, PVNoConvergence.
EtaForm eta_form(const HodgeFrame& frame, const ChartPoint& p, const EtaOptions& options = {});

/// Raw pairings p_l = 2 PV int sum_sheets psi conj(h_l) dA against the raw
/// basis, together with the quadrature certificate.
PrincipalValueResult psi_pairings(const HodgeFrame& frame, const EtaForm& eta, double rel_tol, double pv_tol);

/// Coefficient of psi at S in the chart of S (S not above x0 on P's sheet).
cd psi_coefficient(const CurveModel& curve, const EtaForm& eta, const ChartPoint& s);

/// Coefficient G_P(S) of eta_P at S; eta_P is normalized as -1/w^2 in the
/// chart of P.
cd eta_coefficient(const HodgeFrame& frame, const EtaForm& eta, const ChartPoint& s);

/// Psi^{Q_k}_P(S) = -G_P(S) sum a_ij f_i(P) f_j(S); for S = P the limit
/// mu_2(Q_k)(P) / 2.
cd psi_eval(const HodgeFrame& frame, const QuadricSpace& quadrics, const EtaForm& eta, int k, const ChartPoint& s);

/// Provider building eta_P on demand (memoized per point); diagonal
/// arguments never need eta.
PsiProvider hyperelliptic_psi(const HodgeFrame& frame, const QuadricSpace& quadrics, const EtaOptions& options = {});

}  // namespace siegel
