#pragma once

#include <array>
#include <complex>
#include <cstddef>

namespace siegel {

using cd = std::complex<double>;

/// Truncated power series sum_{k<kLength} c_k z^k over complex doubles.
///
/// All arithmetic is exact to the truncation order; nothing here uses
/// finite differences. Division and fractional powers require a nonzero
/// constant term.
class Series {
 public:
  static constexpr std::size_t kLength = 8;

  Series() { c_.fill(cd{}); }
  Series(cd constant) : Series() { c_[0] = constant; }  // NOLINT(implicit)

  static Series variable(cd at = {}, cd slope = 1.0) {
    Series s(at);
    s.c_[1] = slope;
    return s;
  }

  cd& operator[](std::size_t k) { return c_[k]; }
  const cd& operator[](std::size_t k) const { return c_[k]; }

  Series& operator+=(const Series& o) {
    for (std::size_t k = 0; k < kLength; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Series& operator-=(const Series& o) {
    for (std::size_t k = 0; k < kLength; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Series& operator*=(cd s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator-(Series a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend Series operator*(Series a, cd s) { return a *= s; }
  friend Series operator*(cd s, Series a) { return a *= s; }

  friend Series operator*(const Series& a, const Series& b) {
    Series r;
    for (std::size_t i = 0; i < kLength; ++i) {
      if (a.c_[i] == cd{}) continue;
      for (std::size_t j = 0; i + j < kLength; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }

  Series inverse() const;
  friend Series operator/(const Series& a, const Series& b) { return a * b.inverse(); }

  /// Principal-branch power f^alpha (constant term f0^alpha), Miller recurrence.
  Series pow(double alpha) const;
  /// Same recurrence, with the caller choosing the constant term branch.
  Series pow(double alpha, cd leading) const;

  Series derivative() const {
    Series r;
    for (std::size_t k = 1; k < kLength; ++k) r.c_[k - 1] = static_cast<double>(k) * c_[k];
    return r;
  }

  /// Divide by z^m, discarding the first m coefficients (which the caller
  /// must have checked are negligible) and zero-filling the tail.
  Series shifted_down(std::size_t m) const {
    Series r;
    for (std::size_t k = m; k < kLength; ++k) r.c_[k - m] = c_[k];
    return r;
  }

  /// k-th derivative at 0.
  cd derivative_at_zero(std::size_t k) const;

  cd evaluate(cd z) const {
    cd acc{};
    for (std::size_t k = kLength; k-- > 0;) acc = acc * z + c_[k];
    return acc;
  }

 private:
  std::array<cd, kLength> c_;
};

}  // namespace siegel
