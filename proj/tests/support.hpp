#pragma once

// Small builders shared by the test files.

#include <functional>
#include <vector>

#include "siegel/curves.hpp"
#include "siegel/error.hpp"

namespace support {

using siegel::cd;

inline std::vector<cd> monic_minus_one(int degree) {
  std::vector<cd> f(static_cast<std::size_t>(degree + 1));
  f.front() = -1.0;
  f.back() = 1.0;
  return f;
}

inline siegel::CurveModel hyper(int degree) {
  return siegel::build_curve(siegel::make_spec(siegel::Family::Hyperelliptic, monic_minus_one(degree)));
}

inline siegel::CurveModel trigonal(int degree) {
  return siegel::build_curve(siegel::make_spec(siegel::Family::CyclicTrigonal, monic_minus_one(degree)));
}

// x^d + y^d + 1 = 0
inline siegel::CurveModel fermat(int d) {
  std::vector<cd> c(static_cast<std::size_t>((d + 1) * (d + 2) / 2));
  c[0] = 1.0;
  const std::size_t top = static_cast<std::size_t>(d * (d + 1) / 2);
  c[top] = 1.0;
  c[top + static_cast<std::size_t>(d)] = 1.0;
  return siegel::build_curve(siegel::make_spec(siegel::Family::PlaneSmooth, c));
}

inline siegel::ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const siegel::Error& e) {
    return e.code();
  }
  return siegel::ErrorCode::Io;  // nothing thrown
}

}  // namespace support

#include "siegel/hodge.hpp"

namespace support {

// Frames for the expensive curves go through a cache shared by the test
// binaries (the cache is bit exact, see test_hodge).
inline siegel::HodgeFrame cached_frame(const siegel::CurveModel& curve) {
  siegel::FrameOptions o;
#ifdef SIEGEL_TEST_CACHE
  o.cache_dir = SIEGEL_TEST_CACHE;
#endif
  return siegel::build_frame(curve, o);
}

}  // namespace support
