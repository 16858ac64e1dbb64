#pragma once

#include <complex>
#include <vector>

#include "siegel/series.hpp"

namespace siegel {

/// Dense univariate polynomial, coefficients in ascending degree.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<cd> ascending);

  int degree() const { return static_cast<int>(coef_.size()) - 1; }
  const std::vector<cd>& coefficients() const { return coef_; }
  cd leading() const { return coef_.empty() ? cd{} : coef_.back(); }

  cd operator()(cd x) const;
  Series operator()(const Series& x) const;
  Poly derivative() const;

  /// sum_k |c_k| |x|^k, the natural scale for relative residual checks.
  double magnitude(cd x) const;

 private:
  std::vector<cd> coef_;  // trailing zeros stripped
};

/// Roots via companion-matrix eigenvalues followed by Newton polishing.
std::vector<cd> polynomial_roots(const Poly& p);

/// Dense bivariate polynomial sum c_ab x^a y^b.
class BiPoly {
 public:
  BiPoly() = default;
  BiPoly(int max_a, int max_b);

  int max_a() const { return max_a_; }
  int max_b() const { return max_b_; }
  int total_degree() const;
  /// Largest b with a nonzero coefficient.
  int degree_y() const;

  cd& at(int a, int b) { return c_[index(a, b)]; }
  cd at(int a, int b) const;

  cd operator()(cd x, cd y) const;
  Series operator()(const Series& x, const Series& y) const;
  double magnitude(cd x, cd y) const;

  BiPoly dx() const;
  BiPoly dy() const;

  /// F(x, .) as a univariate polynomial in y.
  Poly in_y(cd x) const;

 private:
  std::size_t index(int a, int b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(max_b_ + 1) + static_cast<std::size_t>(b);
  }
  int max_a_ = -1;
  int max_b_ = -1;
  std::vector<cd> c_;
};

}  // namespace siegel
