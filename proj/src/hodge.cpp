#include "siegel/hodge.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <numeric>
#include <sstream>

#include "siegel/error.hpp"
#include "siegel/util.hpp"

namespace siegel {

namespace {

using Pairs = std::vector<std::pair<int, int>>;

Pairs upper_pairs(int g) {
  Pairs p;
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) p.emplace_back(i, j);
  return p;
}

Eigen::MatrixXcd hermitian_from_pairs(int g, const Pairs& pairs, const std::vector<cd>& v) {
  Eigen::MatrixXcd m(g, g);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    m(i, j) = v[k];
    m(j, i) = std::conj(v[k]);
  }
  for (int i = 0; i < g; ++i) m(i, i) = m(i, i).real();
  return m;
}

}  // namespace

QuadratureSpec gram_quadrature_spec(const CurveModel& curve, double rel_tol) {
  QuadratureSpec spec;
  spec.rel_tol = rel_tol;
  spec.singularities = curve.branch_points();
  // Gradings that turn the branch-type behaviour into integer powers of s:
  // near a branch point |h|^2 ~ r^(-2 + 2/e) with e dividing the sheet count,
  // and at infinity the sheets are cyclically permuted in groups of
  // n / gcd(n, deg f) (plane curves here are unramified at infinity).
  spec.singular_power = curve.sheets();
  spec.outer_power = curve.superelliptic() ? curve.sheets() / std::gcd(curve.sheets(), curve.branch_polynomial().degree()) : 1;
  return spec;
}

GramResult gram_matrix(const CurveModel& curve, const std::vector<RawDifferential>& basis,
                       const QuadratureSpec& spec, GramMethod method) {
  const int g = static_cast<int>(basis.size());
  const Pairs pairs = upper_pairs(g);
  PlaneIntegrand integrand;
  std::vector<cd> h(static_cast<std::size_t>(g));

  if (curve.superelliptic() && method == GramMethod::Auto) {
    // Sheets differ by n-th roots of unity, so sum_k y_k^-b conj(y_k^-b')
    // vanishes unless b = b' and then equals n |f|^(-2b/n).
    const int n = curve.sheets();
    const Poly& f = curve.branch_polynomial();
    int max_a = 0;
    for (const auto& d : basis) max_a = std::max(max_a, d.a);
    integrand = [&, n, max_a](cd x, std::span<cd> out) {
      const double af = std::abs(f(x));
      std::vector<cd> xp(static_cast<std::size_t>(max_a + 1));
      xp[0] = 1.0;
      for (int a = 1; a <= max_a; ++a) xp[static_cast<std::size_t>(a)] = xp[static_cast<std::size_t>(a - 1)] * x;
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& di = basis[static_cast<std::size_t>(pairs[k].first)];
        const auto& dj = basis[static_cast<std::size_t>(pairs[k].second)];
        if (di.b != dj.b) continue;
        const double w = 2.0 * n * std::pow(af, -2.0 * di.b / n);
        out[k] = w * xp[static_cast<std::size_t>(di.a)] * std::conj(xp[static_cast<std::size_t>(dj.a)]);
      }
    };
  } else {
    integrand = [&](cd x, std::span<cd> out) {
      const BiPoly& fy = curve.equation_dy();
      for (const cd y : curve.fiber(x)) {
        const cd inv = 1.0 / fy(x, y);
        for (int i = 0; i < g; ++i) h[static_cast<std::size_t>(i)] = basis[static_cast<std::size_t>(i)].numerator(x, y) * inv;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
          out[k] += 2.0 * h[static_cast<std::size_t>(pairs[k].first)] * std::conj(h[static_cast<std::size_t>(pairs[k].second)]);
        }
      }
    };
  }
  const QuadratureResult q = integrate_plane(integrand, pairs.size(), spec);
  GramResult r;
  r.gram = hermitian_from_pairs(g, pairs, q.values);
  r.error = q.error;
  r.tolerance = spec.rel_tol;
  r.cells = q.cells;
  r.evaluations = q.evaluations;
  return r;
}

Eigen::MatrixXcd orthonormal_frame(const Eigen::MatrixXcd& g) {
  const Eigen::MatrixXcd l = cholesky_hpd(g);
  const Eigen::Index n = g.rows();
  const Eigen::MatrixXcd t = l.triangularView<Eigen::Lower>().solve(Eigen::MatrixXcd::Identity(n, n));
  const double defect = (t * g * t.adjoint() - Eigen::MatrixXcd::Identity(n, n)).norm();
  if (defect > 1e-8) {
    throw Error(ErrorCode::NotPositiveDefinite, "hodge",
                "orthonormalization defect " + format17(defect) + " exceeds 1e-8");
  }
  return t;
}

GramCache::GramCache(std::string directory) : dir_(std::move(directory)) {}

std::string GramCache::path_for(const std::string& key) const {
  return (std::filesystem::path(dir_) / ("gram-" + hex64(fnv1a64(key)) + ".json")).string();
}

std::optional<GramResult> GramCache::load(const std::string& key) const {
  std::ifstream in(path_for(key));
  if (!in) return std::nullopt;
  nlohmann::json doc;
  try {
    in >> doc;
    if (doc.at("key").get<std::string>() != key) return std::nullopt;
    const int g = doc.at("genus").get<int>();
    GramResult r;
    r.gram.resize(g, g);
    const auto& entries = doc.at("gram");
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) {
        const auto& e = entries.at(static_cast<std::size_t>(i * g + j));
        r.gram(i, j) = cd(std::stod(e.at(0).get<std::string>()), std::stod(e.at(1).get<std::string>()));
      }
    r.error = std::stod(doc.at("error").get<std::string>());
    r.tolerance = std::stod(doc.at("tolerance").get<std::string>());
    r.cells = doc.at("cells").get<std::size_t>();
    r.evaluations = doc.at("evaluations").get<std::size_t>();
    return r;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entries are recomputed
  }
}

void GramCache::store(const std::string& key, const GramResult& r) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  nlohmann::json doc;
  doc["key"] = key;
  doc["genus"] = r.gram.rows();
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < r.gram.rows(); ++i)
    for (Eigen::Index j = 0; j < r.gram.cols(); ++j)
      entries.push_back({format17(r.gram(i, j).real()), format17(r.gram(i, j).imag())});
  doc["gram"] = entries;
  doc["error"] = format17(r.error);
  doc["tolerance"] = format17(r.tolerance);
  doc["cells"] = r.cells;
  doc["evaluations"] = r.evaluations;
  const std::string path = path_for(key);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorCode::Io, "hodge", "cannot write cache entry " + tmp);
    out << doc.dump(1) << "\n";
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::Io, "hodge", "cannot move cache entry into place: " + path);
}

std::string gram_cache_key(const CurveModel& curve, const std::vector<RawDifferential>& basis,
                           const QuadratureSpec& spec, GramMethod method) {
  std::ostringstream k;
  k << curve.canonical_key() << "|basis=";
  for (const auto& d : basis) k << d.describe(curve.family()) << ";";
  k << "|rel_tol=" << format17(spec.rel_tol) << "|abs_floor=" << format17(spec.abs_floor)
    << "|powers=" << spec.singular_power << "," << spec.outer_power << "|max_cells=" << spec.max_cells
    << "|method=" << (method == GramMethod::Auto ? "auto" : "generic") << "|layout=1";
  return k.str();
}

HodgeFrame build_frame(const CurveModel& curve, const FrameOptions& options) {
  HodgeFrame frame;
  frame.curve = std::make_shared<const CurveModel>(curve);
  frame.basis = differential_basis(curve);
  std::optional<GramCache> cache;
  if (!options.cache_dir.empty()) cache.emplace(options.cache_dir);

  double tol = options.rel_tol;
  for (int attempt = 0;; ++attempt) {
    const QuadratureSpec spec = gram_quadrature_spec(curve, tol);
    const std::string key = gram_cache_key(curve, frame.basis, spec, options.method);
    std::optional<GramResult> r;
    if (cache) r = cache->load(key);
    frame.from_cache = r.has_value();
    if (!r) {
      r = gram_matrix(curve, frame.basis, spec, options.method);
      if (cache) cache->store(key, *r);
    }
    frame.gram = r->gram;
    frame.gram_error = r->error;
    frame.gram_tolerance = tol;
    frame.cells = r->cells;
    frame.cache_key = key;
    frame.refinements = attempt;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(frame.gram, Eigen::EigenvaluesOnly);
    const double trace = frame.gram.trace().real();
    if (eig.eigenvalues().minCoeff() >= options.min_eigen_ratio * trace) break;
    if (attempt >= options.max_refinements) {
      throw Error(ErrorCode::NotPositiveDefinite, "hodge",
                  "Gram matrix smallest eigenvalue " + format17(eig.eigenvalues().minCoeff()) +
                      " is below " + format17(options.min_eigen_ratio) + " x trace after " +
                      std::to_string(attempt) + " refinements");
    }
    tol /= 10.0;
  }
  frame.transform = orthonormal_frame(frame.gram);
  return frame;
}

std::string HodgeFrame::hash() const {
  std::ostringstream k;
  k << curve->canonical_key() << "|";
  for (Eigen::Index i = 0; i < gram.rows(); ++i)
    for (Eigen::Index j = 0; j < gram.cols(); ++j) k << format17(gram(i, j).real()) << "," << format17(gram(i, j).imag()) << ";";
  return hex64(fnv1a64(k.str()));
}

std::vector<Jet> HodgeFrame::jets(const ChartPoint& p, int order) const {
  const LocalChart chart = local_chart(*curve, p);
  const int g = genus();
  std::vector<Series> raw;
  raw.reserve(basis.size());
  for (const auto& d : basis) raw.push_back(coefficient_series(chart, d.numerator));
  std::vector<Jet> out;
  out.reserve(basis.size());
  for (int i = 0; i < g; ++i) {
    Series s;
    for (int k = 0; k < g; ++k) s += raw[static_cast<std::size_t>(k)] * transform(i, k);
    out.push_back(jet_from_series(s, order));
  }
  return out;
}

Eigen::VectorXcd HodgeFrame::values(const ChartPoint& p) const {
  const auto j = jets(p, 0);
  Eigen::VectorXcd v(genus());
  for (int i = 0; i < genus(); ++i) v(i) = j[static_cast<std::size_t>(i)].value();
  return v;
}

HodgeFrame HodgeFrame::rotated(const Eigen::MatrixXcd& unitary) const {
  HodgeFrame r = *this;
  r.transform = unitary * transform;
  return r;
}

cd alpha(const HodgeFrame& frame, const ChartPoint& p, const ChartPoint& q) {
  const Eigen::VectorXcd fp = frame.values(p);
  const Eigen::VectorXcd fq = p.same_point_and_chart(q) ? fp : frame.values(q);
  cd acc{};
  for (Eigen::Index i = 0; i < fp.size(); ++i) acc += fp(i) * std::conj(fq(i));
  return acc;
}

SchifferMatrix schiffer_matrix(const HodgeFrame& frame, const ChartPoint& p) {
  const Eigen::VectorXcd f = frame.values(p);
  SchifferMatrix s;
  s.point = p;
  s.a = 2.0 * std::numbers::pi * f * f.transpose();
  return s;
}

cd sym_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return 2.0 * (a.array() * b.conjugate().array()).sum();
}

}  // namespace siegel
