#include "siegel/wolpert_class.hpp"

#include <cmath>

#include "siegel/error.hpp"
#include "siegel/kernel.hpp"

namespace siegel {

namespace {

// y = sqrt(1 - x^2) + (1 - t)/t maps t in (0, 1] onto the vertical ray
// above the unit circle; dy = dt / t^2.
QuadratureResult over_domain(double weight, double x1, double tolerance) {
  auto f = [weight](double x, double t) {
    const double y = std::sqrt(1.0 - x * x) + (1.0 - t) / t;
    return weight / (y * y * t * t);
  };
  return integrate_rectangle(f, -0.5, x1, 0.0, 1.0, tolerance, 1e-16);
}

}  // namespace

ClassComputation fundamental_domain_integral(double tolerance, double metric_scale, bool half) {
  if (!(tolerance >= 1e-14)) throw Error(ErrorCode::InvalidInput, "wolpert_class", "tolerance too small");
  ClassComputation c;
  c.metric_scale = metric_scale;
  QuadratureResult r = half ? over_domain(metric_scale / 4.0, 0.0, tolerance)
                            : over_domain(metric_scale / 4.0, 0.5, tolerance);
  c.integral = r.values[0].real();
  c.error = r.error;
  c.cells = r.cells;
  c.constant = c.integral / kLambdaPairing;
  return c;
}

ClassComputation class_constant(double tolerance, double metric_scale) {
  return fundamental_domain_integral(tolerance, metric_scale, false);
}

double fundamental_domain_area(double tolerance) { return over_domain(1.0, 0.5, tolerance).values[0].real(); }

}  // namespace siegel
