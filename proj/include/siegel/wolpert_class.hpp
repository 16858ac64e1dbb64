#pragma once

#include <cstddef>

namespace siegel {

struct ClassComputation {
  double integral = 0.0;
  double error = 0.0;
  double constant = 0.0;  // c = integral / (1/12)
  double metric_scale = 1.0;
  std::size_t cells = 0;
};

/// int_D metric_scale / (4 y^2) dx dy over D = {|x| < 1/2, x^2 + y^2 > 1};
/// the i dz ^ dzbar = 2 dx dy factor is folded into the 1/4.
/// half = true restricts to 0 < x < 1/2.
ClassComputation fundamental_domain_integral(double tolerance = 1e-12, double metric_scale = 1.0, bool half = false);

/// The lambda pairing <lambda, E> = 1/12 is taken as given.
inline constexpr double kLambdaPairing = 1.0 / 12.0;

/// c with [omega] = c lambda. Throws NoConvergence.
ClassComputation class_constant(double tolerance = 1e-12, double metric_scale = 1.0);

/// Hyperbolic area int_D y^-2 dx dy by direct quadrature.
double fundamental_domain_area(double tolerance = 1e-12);

}  // namespace siegel
