#include "siegel/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "siegel/error.hpp"

namespace siegel {

Poly::Poly(std::vector<cd> ascending) : coef_(std::move(ascending)) {
  while (!coef_.empty() && coef_.back() == cd{}) coef_.pop_back();
}

cd Poly::operator()(cd x) const {
  cd acc{};
  for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Series Poly::operator()(const Series& x) const {
  Series acc;
  for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) acc = acc * x + Series(*it);
  return acc;
}

Poly Poly::derivative() const {
  std::vector<cd> d;
  for (std::size_t k = 1; k < coef_.size(); ++k) d.push_back(static_cast<double>(k) * coef_[k]);
  return Poly(std::move(d));
}

double Poly::magnitude(cd x) const {
  double acc = 0.0;
  const double ax = std::abs(x);
  for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) acc = acc * ax + std::abs(*it);
  return acc;
}

std::vector<cd> polynomial_roots(const Poly& p) {
  const int n = p.degree();
  if (n < 1) return {};
  const auto& c = p.coefficients();
  if (n == 1) return {-c[0] / c[1]};
  // Rescale y = rho u so that the monic coefficients are O(1); without it
  // the companion matrix is hopeless for large or tiny root moduli.
  double rho = 0.0;
  for (int k = 0; k < n; ++k) {
    const double ck = std::abs(c[static_cast<std::size_t>(k)] / c.back());
    if (ck > 0.0) rho = std::max(rho, std::pow(ck, 1.0 / (n - k)));
  }
  if (rho == 0.0) return std::vector<cd>(static_cast<std::size_t>(n), cd{});
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) {
    companion(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back() / std::pow(rho, n - i);
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NoConvergence, "curves", "companion eigenvalue iteration failed");
  }
  std::vector<cd> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  for (auto& r : roots) r *= rho;
  const Poly dp = p.derivative();
  for (auto& r : roots) {
    // Polish only while Newton clearly helps; clustered roots are left alone.
    for (int it = 0; it < 3; ++it) {
      const cd fr = p(r);
      const cd dfr = dp(r);
      if (dfr == cd{}) break;
      const cd step = fr / dfr;
      if (!(std::abs(step) < 1e-6 * (1.0 + std::abs(r)))) break;
      const cd next = r - step;
      if (std::abs(p(next)) > std::abs(fr)) break;
      r = next;
    }
  }
  return roots;
}

BiPoly::BiPoly(int max_a, int max_b)
    : max_a_(max_a),
      max_b_(max_b),
      c_(static_cast<std::size_t>(max_a + 1) * static_cast<std::size_t>(max_b + 1)) {}

cd BiPoly::at(int a, int b) const {
  if (a < 0 || b < 0 || a > max_a_ || b > max_b_) return {};
  return c_[index(a, b)];
}

int BiPoly::total_degree() const {
  int d = -1;
  for (int a = 0; a <= max_a_; ++a)
    for (int b = 0; b <= max_b_; ++b)
      if (at(a, b) != cd{}) d = std::max(d, a + b);
  return d;
}

int BiPoly::degree_y() const {
  int d = -1;
  for (int a = 0; a <= max_a_; ++a)
    for (int b = 0; b <= max_b_; ++b)
      if (at(a, b) != cd{}) d = std::max(d, b);
  return d;
}

cd BiPoly::operator()(cd x, cd y) const {
  cd acc{};
  for (int b = max_b_; b >= 0; --b) {
    cd row{};
    for (int a = max_a_; a >= 0; --a) row = row * x + c_[index(a, b)];
    acc = acc * y + row;
  }
  return acc;
}

Series BiPoly::operator()(const Series& x, const Series& y) const {
  Series acc;
  for (int b = max_b_; b >= 0; --b) {
    Series row;
    for (int a = max_a_; a >= 0; --a) row = row * x + Series(c_[index(a, b)]);
    acc = acc * y + row;
  }
  return acc;
}

double BiPoly::magnitude(cd x, cd y) const {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  double acc = 0.0;
  for (int b = max_b_; b >= 0; --b) {
    double row = 0.0;
    for (int a = max_a_; a >= 0; --a) row = row * ax + std::abs(c_[index(a, b)]);
    acc = acc * ay + row;
  }
  return acc;
}

BiPoly BiPoly::dx() const {
  BiPoly r(std::max(max_a_ - 1, 0), max_b_);
  for (int a = 1; a <= max_a_; ++a)
    for (int b = 0; b <= max_b_; ++b) r.at(a - 1, b) = static_cast<double>(a) * at(a, b);
  return r;
}

BiPoly BiPoly::dy() const {
  BiPoly r(max_a_, std::max(max_b_ - 1, 0));
  for (int a = 0; a <= max_a_; ++a)
    for (int b = 1; b <= max_b_; ++b) r.at(a, b - 1) = static_cast<double>(b) * at(a, b);
  return r;
}

Poly BiPoly::in_y(cd x) const {
  std::vector<cd> coef(static_cast<std::size_t>(max_b_ + 1));
  for (int b = 0; b <= max_b_; ++b) {
    cd row{};
    for (int a = max_a_; a >= 0; --a) row = row * x + c_[index(a, b)];
    coef[static_cast<std::size_t>(b)] = row;
  }
  return Poly(std::move(coef));
}

}  // namespace siegel
