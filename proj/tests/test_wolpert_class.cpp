#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "siegel/wolpert_class.hpp"

using namespace siegel;
using std::numbers::pi;

TEST_CASE("fundamental domain integral") {
  const auto c = fundamental_domain_integral();
  CHECK(std::abs(c.integral - pi / 12.0) <= 1e-8);
  CHECK(c.error <= 1e-8);
  CHECK(std::abs(fundamental_domain_integral(1e-12, 1.0, true).integral - pi / 24.0) <= 1e-8);
}

TEST_CASE("hyperbolic area against a one-dimensional reduction") {
  // int_D y^-2 = int_{-1/2}^{1/2} dx / sqrt(1 - x^2).
  const double area = oracle::integrate_1d([](double x) { return 1.0 / std::sqrt(1.0 - x * x); }, -0.5, 0.5);
  CHECK(std::abs(area - 2.0 * std::asin(0.5)) < 1e-14);
  CHECK(std::abs(fundamental_domain_area() - area) <= 1e-10);
  CHECK(std::abs(fundamental_domain_integral().integral - area / 4.0) <= 1e-10);
}

TEST_CASE("class constant") {
  const auto c = class_constant();
  CHECK(std::abs(c.constant - pi) <= 1e-7);
  CHECK(std::abs(class_constant(1e-12, 2.0).constant - 2.0 * pi) <= 2e-7);
  const auto loose = class_constant(1e-6);
  CHECK(std::abs(loose.constant - c.constant) <= loose.error / kLambdaPairing + 1e-15);
}
