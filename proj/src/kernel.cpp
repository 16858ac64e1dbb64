#include "siegel/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "siegel/error.hpp"

namespace siegel {

namespace {

// Gauss-Kronrod 15 point abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule1D {
  std::array<double, 15> node{};
  std::array<double, 15> wk{};
  std::array<double, 15> wg{};
};

Rule1D make_rule() {
  Rule1D r;
  for (int pos = 0; pos < 15; ++pos) {
    const int k = pos < 7 ? pos : 14 - pos;
    const double sign = pos < 7 ? -1.0 : 1.0;
    r.node[static_cast<std::size_t>(pos)] = sign * kXgk[static_cast<std::size_t>(k)];
    r.wk[static_cast<std::size_t>(pos)] = kWgk[static_cast<std::size_t>(k)];
    r.wg[static_cast<std::size_t>(pos)] = (k % 2 == 1) ? kWg[static_cast<std::size_t>((k - 1) / 2)] : 0.0;
  }
  return r;
}

const Rule1D& rule() {
  static const Rule1D r = make_rule();
  return r;
}

double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

// 1 inside radius/2, 0 outside radius, C-infinity in between.
double bump(double r, double radius) { return 1.0 - smooth_step(2.0 * r / radius - 1.0); }

enum class RegionKind { Singular, Annulus, Remainder, Outer, Rectangle };

struct Region {
  RegionKind kind = RegionKind::Remainder;
  cd center{};
  double radius = 1.0;  // bump radius, disk radius, or rectangle width
  double inner = 0.0;   // annulus inner radius / rectangle height
  int power = 1;
  std::size_t bump_index = 0;
  cd origin{};  // rectangle corner
};

struct Layout {
  std::vector<Region> regions;
  std::vector<cd> bump_centers;
  std::vector<double> bump_radii;
};

struct MappedPoint {
  cd x;
  double jac = 0.0;
};

MappedPoint map_point(const Region& reg, double s, double t) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  switch (reg.kind) {
    case RegionKind::Singular: {
      const double r = reg.radius * std::pow(s, reg.power);
      return {reg.center + std::polar(r, two_pi * t),
              two_pi * reg.radius * reg.radius * reg.power * std::pow(s, 2 * reg.power - 1)};
    }
    case RegionKind::Annulus: {
      const double r = reg.radius * std::pow(reg.inner / reg.radius, 1.0 - s);
      return {reg.center + std::polar(r, two_pi * t), two_pi * r * r * std::log(reg.radius / reg.inner)};
    }
    case RegionKind::Remainder: {
      const double r = reg.radius * s;
      return {std::polar(r, two_pi * t), two_pi * reg.radius * reg.radius * s};
    }
    case RegionKind::Outer: {
      const double r = reg.radius * std::pow(s, -reg.power);
      return {std::polar(r, two_pi * t),
              two_pi * reg.radius * reg.radius * reg.power * std::pow(s, -2 * reg.power - 1)};
    }
    case RegionKind::Rectangle:
      return {reg.origin + cd(s * reg.radius, t * reg.inner), reg.radius * reg.inner};
  }
  return {};
}

double region_weight(const Layout& layout, const Region& reg, cd x) {
  switch (reg.kind) {
    case RegionKind::Singular:
    case RegionKind::Annulus:
      return bump(std::abs(x - reg.center), reg.radius);
    case RegionKind::Remainder: {
      double w = 1.0;
      for (std::size_t k = 0; k < layout.bump_centers.size(); ++k) {
        w -= bump(std::abs(x - layout.bump_centers[k]), layout.bump_radii[k]);
      }
      return std::max(w, 0.0);
    }
    case RegionKind::Outer:
    case RegionKind::Rectangle:
      return 1.0;
  }
  return 0.0;
}

struct Cell {
  std::size_t region = 0;
  double s0 = 0, s1 = 1, t0 = 0, t1 = 1;
  int depth = 0;
  bool active = true;
  double error = 0.0;
  // Directional error indicators (Gauss in one direction only).
  double error_s = 0.0;
  double error_t = 0.0;
  double magnitude = 0.0;  // Kronrod estimate of int sum_k |f_k|
  std::vector<cd> value;
};

class Engine {
 public:
  Engine(const Layout& layout, const PlaneIntegrand& f, std::size_t components)
      : layout_(layout),
        f_(f),
        components_(components),
        kron_(components),
        gauss_(components),
        gauss_s_(components),
        gauss_t_(components),
        buf_(components) {}

  void evaluate(Cell& c) {
    const Rule1D& r = rule();
    const Region& reg = layout_.regions[c.region];
    const double hs = 0.5 * (c.s1 - c.s0);
    const double ms = 0.5 * (c.s1 + c.s0);
    const double ht = 0.5 * (c.t1 - c.t0);
    const double mt = 0.5 * (c.t1 + c.t0);
    std::fill(kron_.begin(), kron_.end(), cd{});
    std::fill(gauss_.begin(), gauss_.end(), cd{});
    std::fill(gauss_s_.begin(), gauss_s_.end(), cd{});
    std::fill(gauss_t_.begin(), gauss_t_.end(), cd{});
    double mag = 0.0;
    for (std::size_t i = 0; i < 15; ++i) {
      const double s = ms + hs * r.node[i];
      for (std::size_t j = 0; j < 15; ++j) {
        const double t = mt + ht * r.node[j];
        const MappedPoint mp = map_point(reg, s, t);
        const double w = region_weight(layout_, reg, mp.x);
        if (w == 0.0) continue;
        // Deep graded nodes can round onto the singularity itself; the
        // graded integrand vanishes there, so such nodes contribute nothing.
        if (reg.kind == RegionKind::Singular && std::abs(mp.x - reg.center) <= 1e-14 * (1.0 + std::abs(reg.center))) {
          continue;
        }
        std::fill(buf_.begin(), buf_.end(), cd{});
        f_(mp.x, buf_);
        ++evaluations_;
        const double scale = w * mp.jac;
        const double wk = r.wk[i] * r.wk[j] * scale;
        const double wg = r.wg[i] * r.wg[j] * scale;
        const double ws = r.wg[i] * r.wk[j] * scale;
        const double wt = r.wk[i] * r.wg[j] * scale;
        for (std::size_t k = 0; k < components_; ++k) {
          if (!std::isfinite(buf_[k].real()) || !std::isfinite(buf_[k].imag())) {
            throw Error(ErrorCode::NoConvergence, "kernel",
                        "integrand is not finite at x = " + std::to_string(mp.x.real()) + " + " +
                            std::to_string(mp.x.imag()) + "i (depth " + std::to_string(c.depth) + ")");
          }
          kron_[k] += wk * buf_[k];
          mag += wk * std::abs(buf_[k]);
          gauss_[k] += wg * buf_[k];
          gauss_s_[k] += ws * buf_[k];
          gauss_t_[k] += wt * buf_[k];
        }
      }
    }
    const double area = hs * ht;
    c.magnitude = mag * area;
    c.value.resize(components_);
    double err2 = 0.0, errs2 = 0.0, errt2 = 0.0;
    for (std::size_t k = 0; k < components_; ++k) {
      c.value[k] = kron_[k] * area;
      err2 += std::norm((kron_[k] - gauss_[k]) * area);
      errs2 += std::norm((kron_[k] - gauss_s_[k]) * area);
      errt2 += std::norm((kron_[k] - gauss_t_[k]) * area);
    }
    c.error = std::sqrt(err2);
    c.error_s = std::sqrt(errs2);
    c.error_t = std::sqrt(errt2);
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  const Layout& layout_;
  const PlaneIntegrand& f_;
  std::size_t components_;
  std::vector<cd> kron_, gauss_, gauss_s_, gauss_t_, buf_;
  std::size_t evaluations_ = 0;
};

double vector_norm(const std::vector<cd>& v) {
  double acc = 0.0;
  for (const cd x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

struct Seed {
  std::size_t region;
  int ns, nt;
};

QuadratureResult run_adaptive(const Layout& layout, const std::vector<Seed>& seeds, const PlaneIntegrand& f,
                              std::size_t components, double rel_tol, double abs_floor, std::size_t max_cells,
                              int max_depth, bool from_magnitude) {
  Engine engine(layout, f, components);
  std::vector<Cell> cells;
  using Entry = std::pair<double, std::size_t>;
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> queue(worse);
  std::vector<cd> total(components);
  double total_err = 0.0;
  double total_mag = 0.0;

  auto push = [&](Cell c) {
    engine.evaluate(c);
    for (std::size_t k = 0; k < components; ++k) total[k] += c.value[k];
    total_err += c.error;
    total_mag += c.magnitude;
    queue.emplace(c.error, cells.size());
    cells.push_back(std::move(c));
  };

  for (const Seed& seed : seeds) {
    for (int i = 0; i < seed.ns; ++i)
      for (int j = 0; j < seed.nt; ++j) {
        Cell c;
        c.region = seed.region;
        c.s0 = static_cast<double>(i) / seed.ns;
        c.s1 = static_cast<double>(i + 1) / seed.ns;
        c.t0 = static_cast<double>(j) / seed.nt;
        c.t1 = static_cast<double>(j + 1) / seed.nt;
        push(std::move(c));
      }
  }

  std::size_t since_refresh = 0;
  while (!queue.empty()) {
    const double tol = std::max(abs_floor, rel_tol * (from_magnitude ? total_mag : vector_norm(total)));
    if (total_err <= tol) {
      // Recompute the running sums exactly before accepting.
      total_err = 0.0;
      for (const Cell& c : cells)
        if (c.active) total_err += c.error;
      if (total_err <= tol) break;
    }
    if (cells.size() + 4 > max_cells) {
      throw Error(ErrorCode::NoConvergence, "kernel",
                  "cell budget exhausted (" + std::to_string(max_cells) + " cells, error " +
                      std::to_string(total_err) + " vs tolerance " + std::to_string(tol) + ")");
    }
    const std::size_t id = queue.top().second;
    queue.pop();
    Cell parent = cells[id];
    if (parent.depth >= max_depth) {
      const RegionKind kind = layout.regions[parent.region].kind;
      if (kind == RegionKind::Singular && parent.s0 == 0.0) {
        throw Error(ErrorCode::SingularityTooStrong, "kernel",
                    "refinement at a listed singularity does not converge");
      }
      throw Error(ErrorCode::NoConvergence, "kernel", "maximum subdivision depth reached");
    }
    cells[id].active = false;
    for (std::size_t k = 0; k < components; ++k) total[k] -= parent.value[k];
    total_err -= parent.error;
    total_mag -= parent.magnitude;
    // Halve only the direction that carries the error unless both do.
    const bool split_s = parent.error_s >= 0.25 * parent.error_t;
    const bool split_t = parent.error_t >= 0.25 * parent.error_s;
    const double sm = 0.5 * (parent.s0 + parent.s1);
    const double tm = 0.5 * (parent.t0 + parent.t1);
    std::vector<std::array<double, 4>> parts;
    if (split_s && split_t) {
      parts = {{parent.s0, sm, parent.t0, tm},
               {sm, parent.s1, parent.t0, tm},
               {parent.s0, sm, tm, parent.t1},
               {sm, parent.s1, tm, parent.t1}};
    } else if (split_s) {
      parts = {{parent.s0, sm, parent.t0, parent.t1}, {sm, parent.s1, parent.t0, parent.t1}};
    } else {
      parts = {{parent.s0, parent.s1, parent.t0, tm}, {parent.s0, parent.s1, tm, parent.t1}};
    }
    for (const auto& q : parts) {
      Cell c;
      c.region = parent.region;
      c.s0 = q[0];
      c.s1 = q[1];
      c.t0 = q[2];
      c.t1 = q[3];
      c.depth = parent.depth + 1;
      push(std::move(c));
    }
    if (++since_refresh == 4096) {
      since_refresh = 0;
      std::fill(total.begin(), total.end(), cd{});
      total_err = 0.0;
      total_mag = 0.0;
      for (const Cell& c : cells) {
        if (!c.active) continue;
        for (std::size_t k = 0; k < components; ++k) total[k] += c.value[k];
        total_err += c.error;
        total_mag += c.magnitude;
      }
    }
  }

  QuadratureResult result;
  result.values.resize(components);
  std::vector<CompensatedSum> re(components), im(components);
  CompensatedSum err;
  std::size_t active = 0;
  for (const Cell& c : cells) {
    if (!c.active) continue;
    ++active;
    err.add(c.error);
    for (std::size_t k = 0; k < components; ++k) {
      re[k].add(c.value[k].real());
      im[k].add(c.value[k].imag());
    }
  }
  for (std::size_t k = 0; k < components; ++k) result.values[k] = {re[k].value(), im[k].value()};
  result.error = err.value();
  result.cells = active;
  result.evaluations = engine.evaluations();
  return result;
}

struct PlaneLayout {
  Layout layout;
  std::vector<Seed> seeds;
};

PlaneLayout plane_layout(const QuadratureSpec& spec, std::optional<cd> pv_center, double pv_eps) {
  PlaneLayout pl;
  std::vector<cd> centers = spec.singularities;
  if (pv_center) centers.push_back(*pv_center);
  double max_mod = 0.0;
  for (const cd e : centers) max_mod = std::max(max_mod, std::abs(e));
  double R = 0.0;
  if (spec.disk_radius) {
    R = *spec.disk_radius;
    if (!(R > max_mod)) {
      throw Error(ErrorCode::InvalidInput, "kernel", "listed singularities must lie inside the integration disk");
    }
  } else {
    R = spec.outer_radius > 0.0 ? spec.outer_radius : std::max(1.0, 4.0 * max_mod);
    if (!(R > max_mod)) {
      throw Error(ErrorCode::InvalidInput, "kernel", "outer radius must exceed every singularity modulus");
    }
  }
  for (std::size_t k = 0; k < centers.size(); ++k) {
    double rho = 0.5 * (R - std::abs(centers[k]));
    for (std::size_t j = 0; j < centers.size(); ++j) {
      if (j == k) continue;
      const double d = std::abs(centers[k] - centers[j]);
      if (d == 0.0) throw Error(ErrorCode::InvalidInput, "kernel", "duplicate singularity");
      rho = std::min(rho, 0.5 * d);
    }
    Region reg;
    reg.center = centers[k];
    reg.radius = rho;
    reg.bump_index = k;
    const bool annulus = pv_center && k + 1 == centers.size();
    if (annulus) {
      if (!(pv_eps < 0.5 * rho)) {
        throw Error(ErrorCode::InvalidInput, "kernel", "exclusion radius does not fit inside the local patch");
      }
      reg.kind = RegionKind::Annulus;
      reg.inner = pv_eps;
      pl.seeds.push_back({pl.layout.regions.size(), 4, 4});
    } else {
      reg.kind = RegionKind::Singular;
      reg.power = spec.singular_power;
      pl.seeds.push_back({pl.layout.regions.size(), 1, 4});
    }
    pl.layout.regions.push_back(reg);
    pl.layout.bump_centers.push_back(centers[k]);
    pl.layout.bump_radii.push_back(rho);
  }
  Region rem;
  rem.kind = RegionKind::Remainder;
  rem.radius = R;
  pl.seeds.push_back({pl.layout.regions.size(), 4, 8});
  pl.layout.regions.push_back(rem);
  if (!spec.disk_radius) {
    Region out;
    out.kind = RegionKind::Outer;
    out.radius = R;
    out.power = spec.outer_power;
    pl.seeds.push_back({pl.layout.regions.size(), 2, 8});
    pl.layout.regions.push_back(out);
  }
  return pl;
}

}  // namespace

QuadratureResult integrate_plane(const PlaneIntegrand& f, std::size_t components, const QuadratureSpec& spec) {
  if (!(spec.rel_tol > 0.0)) throw Error(ErrorCode::InvalidInput, "kernel", "tolerance must be positive");
  const PlaneLayout pl = plane_layout(spec, std::nullopt, 0.0);
  return run_adaptive(pl.layout, pl.seeds, f, components, spec.rel_tol, spec.abs_floor, spec.max_cells,
                      spec.max_depth, spec.tolerance_from_magnitude);
}

QuadratureResult integrate_plane(const std::function<cd(cd)>& f, const QuadratureSpec& spec) {
  const PlaneIntegrand wrapped = [&f](cd x, std::span<cd> out) { out[0] = f(x); };
  return integrate_plane(wrapped, 1, spec);
}

PrincipalValueResult integrate_plane_pv(const PlaneIntegrand& f, std::size_t components, const QuadratureSpec& spec,
                                        cd center, double pv_tol) {
  if (!(spec.rel_tol > 0.0)) throw Error(ErrorCode::InvalidInput, "kernel", "tolerance must be positive");
  // The exclusion radii must sit well inside the local patch around center.
  double room = 1e300;
  for (const cd e : spec.singularities) room = std::min(room, 0.5 * std::abs(e - center));
  double eps0 = std::min(1e-2, room / 4.0);
  PrincipalValueResult out;
  out.epsilons = {eps0, eps0 * 1e-1, eps0 * 1e-2};
  for (const double eps : out.epsilons) {
    const PlaneLayout pl = plane_layout(spec, center, eps);
    QuadratureResult r;
    try {
      r = run_adaptive(pl.layout, pl.seeds, f, components, spec.rel_tol, spec.abs_floor, spec.max_cells,
                       spec.max_depth, spec.tolerance_from_magnitude);
    } catch (const Error& e) {
      throw Error(ErrorCode::PVNoConvergence, "kernel", e.what());
    }
    out.quadrature_error = std::max(out.quadrature_error, r.error);
    out.raw.push_back(std::move(r.values));
  }
  std::vector<cd> r1(components), r2(components);
  double diff2 = 0.0;
  for (std::size_t k = 0; k < components; ++k) {
    r1[k] = (100.0 * out.raw[1][k] - out.raw[0][k]) / 99.0;
    r2[k] = (100.0 * out.raw[2][k] - out.raw[1][k]) / 99.0;
    diff2 += std::norm(r2[k] - r1[k]);
  }
  out.values = r2;
  out.extrapolation_error = std::sqrt(diff2);
  const double scale = std::max(vector_norm(r2), 1.0);
  if (out.extrapolation_error > pv_tol * scale + 10.0 * out.quadrature_error) {
    throw Error(ErrorCode::PVNoConvergence, "kernel",
                "principal value extrapolants disagree by " + std::to_string(out.extrapolation_error));
  }
  return out;
}

QuadratureResult integrate_rectangle(const std::function<double(double, double)>& f, double x0, double x1, double y0,
                                     double y1, double rel_tol, double abs_floor, std::size_t max_cells) {
  if (!(rel_tol > 0.0)) throw Error(ErrorCode::InvalidInput, "kernel", "tolerance must be positive");
  Layout layout;
  Region reg;
  reg.kind = RegionKind::Rectangle;
  reg.origin = cd(x0, y0);
  reg.radius = x1 - x0;
  reg.inner = y1 - y0;
  layout.regions.push_back(reg);
  const PlaneIntegrand wrapped = [&f](cd x, std::span<cd> out) { out[0] = f(x.real(), x.imag()); };
  return run_adaptive(layout, {{0, 2, 2}}, wrapped, 1, rel_tol, abs_floor, max_cells, 40, false);
}

RankDecision numerical_rank(const Eigen::MatrixXcd& m, double gap_threshold) {
  RankDecision d;
  d.threshold = gap_threshold;
  if (m.size() == 0) {
    d.gap = std::numeric_limits<double>::infinity();
    return d;
  }
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  d.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double top = d.singular_values.front();
  if (!(top > 0.0)) {
    d.gap = std::numeric_limits<double>::infinity();
    return d;
  }
  const double floor =
      top * static_cast<double>(std::max(m.rows(), m.cols())) * std::numeric_limits<double>::epsilon();
  double best = 0.0;
  const int n = static_cast<int>(d.singular_values.size());
  for (int r = 1; r <= n; ++r) {
    const double next = r < n ? d.singular_values[static_cast<std::size_t>(r)] : 0.0;
    const double ratio = d.singular_values[static_cast<std::size_t>(r - 1)] / std::max(next, floor);
    if (ratio > best) {
      best = ratio;
      d.rank = r;
    }
  }
  d.gap = best;
  d.ambiguous = best < gap_threshold;
  return d;
}

Nullspace nullspace(const Eigen::MatrixXcd& m, double gap_threshold, bool allow_ambiguous) {
  Nullspace out;
  out.decision = numerical_rank(m, gap_threshold);
  if (out.decision.ambiguous && !allow_ambiguous) {
    throw Error(ErrorCode::AmbiguousRank, "kernel",
                "spectral gap " + std::to_string(out.decision.gap) + " below threshold " +
                    std::to_string(gap_threshold));
  }
  const Eigen::Index cols = m.cols();
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const Eigen::Index dim = cols - out.decision.rank;
  out.basis = svd.matrixV().rightCols(dim);
  return out;
}

Eigen::MatrixXcd cholesky_hpd(const Eigen::MatrixXcd& g) {
  if (g.rows() != g.cols()) throw Error(ErrorCode::InvalidInput, "kernel", "matrix must be square");
  const double scale = std::max(g.norm(), 1e-300);
  if ((g - g.adjoint()).norm() > 1e-10 * scale) {
    throw Error(ErrorCode::NotPositiveDefinite, "kernel", "matrix is not Hermitian");
  }
  const Eigen::MatrixXcd h = 0.5 * (g + g.adjoint());
  const Eigen::LLT<Eigen::MatrixXcd> llt(h);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite, "kernel", "Cholesky factorization failed");
  }
  Eigen::MatrixXcd l = llt.matrixL();
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    if (!(l(i, i).real() > 0.0)) throw Error(ErrorCode::NotPositiveDefinite, "kernel", "nonpositive pivot");
  }
  return l;
}

}  // namespace siegel
