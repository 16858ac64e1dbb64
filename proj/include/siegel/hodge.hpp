#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "siegel/curves.hpp"
#include "siegel/kernel.hpp"

namespace siegel {

struct GramResult {
  Eigen::MatrixXcd gram;
  double error = 0.0;  // quadrature error estimate (Frobenius)
  double tolerance = 0.0;
  std::size_t cells = 0;
  std::size_t evaluations = 0;
};

enum class GramMethod {
  Auto,     // closed sheet sum for y^n = f, generic otherwise
  Generic,  // numerical fiber at every node
};

/// G_ij = i int eta_i ^ conj(eta_j) = 2 int_C sum_sheets h_i conj(h_j) dA.
GramResult gram_matrix(const CurveModel& curve, const std::vector<RawDifferential>& basis,
                       const QuadratureSpec& spec, GramMethod method = GramMethod::Auto);

/// Quadrature spec used for Gram matrices of this curve at the given tolerance.
QuadratureSpec gram_quadrature_spec(const CurveModel& curve, double rel_tol);

/// T with T G T* = I, T = L^-1 for G = L L*.
Eigen::MatrixXcd orthonormal_frame(const Eigen::MatrixXcd& g);

/// Content-addressed on-disk store of Gram matrices.
class GramCache {
 public:
  explicit GramCache(std::string directory);
  std::optional<GramResult> load(const std::string& key) const;
  void store(const std::string& key, const GramResult& result) const;
  std::string path_for(const std::string& key) const;
  const std::string& directory() const { return dir_; }

 private:
  std::string dir_;
};

struct FrameOptions {
  double rel_tol = 1e-7;
  int max_refinements = 3;
  /// Smallest eigenvalue of G relative to its trace below which the
  /// tolerance is tightened.
  double min_eigen_ratio = 1e-6;
  GramMethod method = GramMethod::Auto;
  std::string cache_dir;  // empty: no cache
};

struct HodgeFrame {
  std::shared_ptr<const CurveModel> curve;
  std::vector<RawDifferential> basis;
  Eigen::MatrixXcd gram;
  Eigen::MatrixXcd transform;  // rows express omega_i in the raw basis
  double gram_error = 0.0;
  double gram_tolerance = 0.0;
  std::size_t cells = 0;
  int refinements = 0;
  bool from_cache = false;
  std::string cache_key;

  int genus() const { return static_cast<int>(basis.size()); }
  /// Hash of the curve, basis and Gram entries.
  std::string hash() const;

  /// Jets f_i, f_i', f_i'' of the orthonormal frame at P (in P's chart).
  std::vector<Jet> jets(const ChartPoint& p, int order = 2) const;
  /// Orthonormal-frame coefficients f_i(P).
  Eigen::VectorXcd values(const ChartPoint& p) const;
  /// Same frame post-composed with a unitary U (f -> U f).
  HodgeFrame rotated(const Eigen::MatrixXcd& unitary) const;
};

HodgeFrame build_frame(const CurveModel& curve, const FrameOptions& options = {});

/// Key identifying a Gram computation (curve, basis, quadrature).
std::string gram_cache_key(const CurveModel& curve, const std::vector<RawDifferential>& basis,
                           const QuadratureSpec& spec, GramMethod method);

/// alpha_{P,P'} = sum_i f_i(P) conj(f_i(P')).
cd alpha(const HodgeFrame& frame, const ChartPoint& p, const ChartPoint& q);

struct SchifferMatrix {
  ChartPoint point;
  Eigen::MatrixXcd a;  // 2 pi f(P) f(P)^T
};

SchifferMatrix schiffer_matrix(const HodgeFrame& frame, const ChartPoint& p);

/// 2 sum_ij A_ij conj(B_ij): the product on symmetric tensors induced by
/// the orthonormal frame.
cd sym_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace siegel
