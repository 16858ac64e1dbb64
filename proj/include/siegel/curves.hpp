#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "siegel/polynomial.hpp"
#include "siegel/series.hpp"

namespace siegel {

enum class Family { Hyperelliptic, CyclicTrigonal, PlaneSmooth };

const char* to_string(Family family) noexcept;
Family family_from_string(const std::string& name);

/// A complex number as it appeared in a config file.
struct DecimalComplex {
  std::string re = "0";
  std::string im = "0";
};

/// Input description of a curve.
///
/// Hyperelliptic (y^2 = f) and CyclicTrigonal (y^3 = f) take the coefficients
/// of f in ascending degree. PlaneSmooth takes the coefficients of F(x, y) in
/// graded order: total degree k = 0..d, and within each k the monomials
/// x^(k-b) y^b for b = 0..k.
struct CurveSpec {
  Family family = Family::Hyperelliptic;
  std::vector<DecimalComplex> coefficients;
  std::string label;
};

CurveSpec make_spec(Family family, const std::vector<cd>& coefficients, std::string label = {});

double parse_decimal(const std::string& text);

class CurveModel {
 public:
  Family family() const { return family_; }
  int genus() const { return genus_; }
  /// Degree of the x-projection (number of sheets).
  int sheets() const { return sheets_; }
  bool superelliptic() const { return family_ != Family::PlaneSmooth; }
  bool hyperelliptic() const { return family_ == Family::Hyperelliptic; }

  /// Defining polynomial F(x, y) = 0.
  const BiPoly& equation() const { return F_; }
  const BiPoly& equation_dx() const { return Fx_; }
  const BiPoly& equation_dy() const { return Fy_; }
  /// f(x) for y^n = f(x); empty for plane curves.
  const Poly& branch_polynomial() const { return f_; }
  /// Finite x-values over which the projection ramifies.
  const std::vector<cd>& branch_points() const { return branch_; }

  const std::string& label() const { return label_; }
  /// Canonical text identifying the curve, used for content hashing.
  const std::string& canonical_key() const { return key_; }
  const CurveSpec& spec() const { return spec_; }

  /// Points of the fiber over x in a deterministic sheet order.
  std::vector<cd> fiber(cd x) const;

 private:
  friend CurveModel build_curve(const CurveSpec& spec);

  Family family_ = Family::Hyperelliptic;
  int genus_ = 0;
  int sheets_ = 0;
  BiPoly F_, Fx_, Fy_;
  Poly f_;
  std::vector<cd> branch_;
  std::string label_;
  std::string key_;
  CurveSpec spec_;
};

/// Validates the input and computes the genus; throws RepeatedRoot,
/// SingularPlaneCurve or UnsupportedDegree.
CurveModel build_curve(const CurveSpec& spec);

/// Genus of y^n = f(x) with f squarefree of degree d.
int superelliptic_genus(int n, int d);

/// A holomorphic differential numerator(x, y) dx / F_y(x, y).
///
/// For superelliptic curves (a, b) means x^a y^-b dx; for plane curves it
/// means x^a y^b dx / F_y.
struct RawDifferential {
  int a = 0;
  int b = 0;
  BiPoly numerator;
  std::string describe(Family family) const;
};

RawDifferential make_differential(const CurveModel& curve, int a, int b);

/// Standard basis of H^0(K), each element verified pole-free.
std::vector<RawDifferential> differential_basis(const CurveModel& curve);

/// Throws BasisVerificationFailed if the differential has a pole at a branch
/// point or at infinity. Returns the minimal order of vanishing found at
/// infinity.
int verify_differential(const CurveModel& curve, const RawDifferential& diff);

enum class ChartKind { XChart, YChart };

/// A point of the curve with a local coordinate.
///
/// The chart coordinate w is related to the base coordinate z (x - x0 for
/// XChart, y - y0 for YChart) by z = scale * w.
struct ChartPoint {
  cd x{};
  cd y{};
  ChartKind kind = ChartKind::XChart;
  cd scale{1.0};
  bool at_infinity = false;
  int sheet = 0;
  std::string label;

  ChartPoint rescaled(cd c) const {
    ChartPoint p = *this;
    p.scale *= c;
    return p;
  }
  bool same_point_and_chart(const ChartPoint& o) const {
    return x == o.x && y == o.y && kind == o.kind && scale == o.scale && at_infinity == o.at_infinity;
  }
};

/// Local parametrization (x(w), y(w)) and the series m(w) with
/// dx / F_y = m(w) dw.
struct LocalChart {
  ChartPoint point;
  Series x;
  Series y;
  Series measure;
};

LocalChart local_chart(const CurveModel& curve, const ChartPoint& point);

/// Coefficient series f(w) of numerator(x, y) dx / F_y in the chart.
Series coefficient_series(const LocalChart& chart, const BiPoly& numerator);

/// Value and derivatives f, f', f'', f''' at the chart point.
struct Jet {
  std::array<cd, 4> d{};
  cd value() const { return d[0]; }
  cd first() const { return d[1]; }
  cd second() const { return d[2]; }
};

Jet jet_at(const CurveModel& curve, const ChartPoint& point, const RawDifferential& diff, int order = 2);
Jet jet_from_series(const Series& s, int order);

/// Point over x on the given sheet, XChart unless the projection ramifies
/// there (then YChart).
ChartPoint point_on_sheet(const CurveModel& curve, cd x, int sheet);

/// Chooses the better-conditioned of XChart / YChart for (x, y).
ChartPoint auto_chart(const CurveModel& curve, cd x, cd y, int sheet = 0);

enum class SpecialKind { Weierstrass, TrigonalRamification };

struct SpecialPoint {
  ChartPoint point;
  SpecialKind kind = SpecialKind::Weierstrass;
  bool supported = true;  // false: no chart implemented (points at infinity)
};

std::vector<SpecialPoint> special_points(const CurveModel& curve);

/// Deterministic generic points: uniform in a disk covering the branch
/// points, at least min_distance away from every branch point.
std::vector<ChartPoint> sample_points(const CurveModel& curve, std::size_t count, std::uint64_t seed,
                                     double min_distance = 1e-2);

/// Distance from x to the nearest finite branch point.
double branch_distance(const CurveModel& curve, cd x);

}  // namespace siegel
