#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "siegel/series.hpp"

namespace siegel {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct QuadratureSpec {
  double rel_tol = 1e-7;
  double abs_floor = 1e-14;
  std::size_t max_cells = 400000;
  int max_depth = 40;
  /// Points where the integrand may blow up integrably.
  std::vector<cd> singularities;
  /// Radius splitting the plane into inner disk and inverted exterior;
  /// 0 picks 4x the largest singularity modulus.
  double outer_radius = 0.0;
  /// Integrate over the disk |x| < disk_radius only (no exterior).
  std::optional<double> disk_radius;
  /// Radial grading exponents: x - e ~ s^p near singularities, |x| ~ s^-q
  /// in the exterior.
  int singular_power = 2;
  int outer_power = 2;
  /// Measure rel_tol against int sum_k |f_k| rather than |int f|; for
  /// integrals that cancel (to zero, e.g. by symmetry).
  bool tolerance_from_magnitude = false;
};

struct QuadratureResult {
  std::vector<cd> values;
  double error = 0.0;
  std::size_t cells = 0;
  std::size_t evaluations = 0;
};

/// Integrand writing `components` values at x into out (zero-initialized).
using PlaneIntegrand = std::function<void(cd x, std::span<cd> out)>;

/// Adaptive integral over C (or a disk) of a vector-valued function with
/// respect to Lebesgue measure dA = dRe(x) dIm(x).
QuadratureResult integrate_plane(const PlaneIntegrand& f, std::size_t components, const QuadratureSpec& spec);

/// Scalar convenience wrapper.
QuadratureResult integrate_plane(const std::function<cd(cd)>& f, const QuadratureSpec& spec);

struct PrincipalValueResult {
  std::vector<cd> values;
  /// Quadrature error of the individual runs.
  double quadrature_error = 0.0;
  /// Difference between successive Richardson extrapolants.
  double extrapolation_error = 0.0;
  std::vector<double> epsilons;
  std::vector<std::vector<cd>> raw;
};

/// Principal value: the limit of the integral over C minus the disk
/// |x - center| < eps, extrapolated from eps = 1e-2, 1e-3, 1e-4 (error
/// expansion in eps^2). Throws PVNoConvergence when the extrapolants
/// disagree by more than pv_tol relative.
PrincipalValueResult integrate_plane_pv(const PlaneIntegrand& f, std::size_t components, const QuadratureSpec& spec,
                                        cd center, double pv_tol = 1e-6);

/// Adaptive integral over a rectangle [x0,x1] x [y0,y1] of a real function.
QuadratureResult integrate_rectangle(const std::function<double(double, double)>& f, double x0, double x1, double y0,
                                     double y1, double rel_tol, double abs_floor = 1e-15,
                                     std::size_t max_cells = 200000);

struct RankDecision {
  std::vector<double> singular_values;
  int rank = 0;
  /// sigma_rank / sigma_{rank+1}, with a floor at the working precision.
  double gap = 0.0;
  double threshold = 1e4;
  bool ambiguous = false;
};

RankDecision numerical_rank(const Eigen::MatrixXcd& m, double gap_threshold = 1e4);

struct Nullspace {
  Eigen::MatrixXcd basis;  // orthonormal columns
  RankDecision decision;
};

/// Orthonormal basis of the numerical kernel. Throws AmbiguousRank when the
/// gap is below the threshold and allow_ambiguous is false.
Nullspace nullspace(const Eigen::MatrixXcd& m, double gap_threshold = 1e4, bool allow_ambiguous = false);

/// Lower-triangular L with L L* = G. Throws NotPositiveDefinite.
Eigen::MatrixXcd cholesky_hpd(const Eigen::MatrixXcd& g);

}  // namespace siegel
