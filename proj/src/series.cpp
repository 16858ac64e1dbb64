#include "siegel/series.hpp"

#include <cmath>

#include "siegel/error.hpp"

namespace siegel {

Series Series::inverse() const {
  if (c_[0] == cd{}) {
    throw Error(ErrorCode::InvalidInput, "curves", "series inverse with vanishing constant term");
  }
  Series r;
  r.c_[0] = 1.0 / c_[0];
  for (std::size_t k = 1; k < kLength; ++k) {
    cd acc{};
    for (std::size_t j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
    r.c_[k] = -acc * r.c_[0];
  }
  return r;
}

Series Series::pow(double alpha) const { return pow(alpha, std::pow(c_[0], alpha)); }

Series Series::pow(double alpha, cd leading) const {
  if (c_[0] == cd{}) {
    throw Error(ErrorCode::InvalidInput, "curves", "series power with vanishing constant term");
  }
  Series r;
  r.c_[0] = leading;
  for (std::size_t k = 1; k < kLength; ++k) {
    cd acc{};
    for (std::size_t j = 1; j <= k; ++j) {
      acc += ((alpha + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * c_[j] * r.c_[k - j];
    }
    r.c_[k] = acc / (static_cast<double>(k) * c_[0]);
  }
  return r;
}

cd Series::derivative_at_zero(std::size_t k) const {
  double factorial = 1.0;
  for (std::size_t j = 2; j <= k; ++j) factorial *= static_cast<double>(j);
  return factorial * c_[k];
}

}  // namespace siegel
