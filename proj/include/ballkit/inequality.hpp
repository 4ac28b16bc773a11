#pragma once

// Checkers for the r-ball body inequalities. Each checker evaluates both
// sides of one comparison (exactly in the plane, by Monte Carlo otherwise)
// and returns an InequalityReport.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ballkit/arcgon.hpp"
#include "ballkit/ballbody.hpp"
#include "ballkit/geom_core.hpp"

namespace ballkit {

enum class EvalPath { Exact2d, MonteCarlo };

/// "exact2d" or "mc".
std::string_view path_name(EvalPath p);

struct ReportParams {
  std::optional<std::size_t> trial;
  std::optional<int> d;
  std::optional<int> k;
  std::optional<int> l;
  std::optional<double> r;
  std::optional<double> lambda;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> seed;
};

struct InequalityReport {
  std::string name;
  ReportParams params;
  double lhs = 0.0;
  double rhs = 0.0;
  double stderr_lhs = 0.0;
  double stderr_rhs = 0.0;
  bool pass = false;
  EvalPath path = EvalPath::Exact2d;
  // Set by the contraction experiments only.
  std::optional<double> vP;
  std::optional<double> vQ;
  std::optional<bool> theorem_applicable;

  double slack() const { return rhs - lhs; }
};

/// lhs <= rhs + 3 (se_lhs + se_rhs) + 1e-9 max(1, |rhs|).
bool within_margin(double lhs, double rhs, double se_lhs, double se_rhs);

InequalityReport make_report(std::string name, ReportParams params, double lhs, double rhs,
                             double se_lhs, double se_rhs, EvalPath path);

struct EvalOptions {
  std::optional<EvalPath> path;  // unset: exact when d = 2, Monte Carlo otherwise
  McConfig mc;
  /// Boundary points of A^r standing in for A^r when conv_r(A) is needed
  /// away from the plane. A finite sample S of A^r gives S^r, a superset of
  /// conv_r(A), so hull volumes are biased upward.
  std::size_t hull_samples = 4096;
};

/// Intrinsic volumes of A^r and of conv_r(A).
struct DualPair {
  IntrinsicVolumes dual;
  IntrinsicVolumes hull;
  EvalPath path = EvalPath::Exact2d;
};

/// Throws HullUndefinedError when cr(A) > r.
DualPair dual_pair(const PointSet& a, double r, const EvalOptions& opts = {});

/// R with V_l(conv_r A) = V_l(B[o, R]). Throws HullUndefinedError when
/// cr(A) > r and DegenerateError when cr(A) = 0.
Estimate intrinsic_radius(const PointSet& a, double r, int l, const EvalOptions& opts = {});

/// V_k(A^r) <= V_k(B[o, r - R_{r,l}(A)]) for 1 <= k <= l <= d.
InequalityReport check_blaschke_santalo(const PointSet& a, double r, int k, int l,
                                        const EvalOptions& opts = {});

/// V_k(conv_r A) V_k(A^r) <= (r/2)^{2k} V_k(B_1)^2.
InequalityReport check_volume_product(const PointSet& a, double r, int k,
                                      const EvalOptions& opts = {});
/// Same comparison for a planar r-ball body K, with K^r from s_dual.
InequalityReport check_volume_product(const ArcGon& body, double r, int k);

/// x^k (r - x)^k V_k(B_1)^2, the volume product of the radius-x ball.
double ball_volume_product(int d, int k, double x, double r);

/// V_k(A^r)^{1/k} + V_k(conv_r A)^{1/k} <= V_k(B[o, r])^{1/k}.
InequalityReport check_bm_chain(const PointSet& a, double r, int k, const EvalOptions& opts = {});

/// (V_l / V_l(B_1))^k <= (V_k / V_k(B_1))^l for k <= l.
InequalityReport check_alexandrov(const IntrinsicVolumes& v, int k, int l);
/// The body form V_k(B[o, R_{r,l}(A)]) <= V_k(conv_r A).
InequalityReport check_alexandrov(const PointSet& a, double r, int k, int l,
                                  const EvalOptions& opts = {});

/// max over n_dirs directions of |h_{A^r}(u) + h_{conv_r A}(-u) - r| against
/// 1e-7 r in the plane, or 10 tol (tol = mc.tol, default 1e-8 r) otherwise.
InequalityReport check_minkowski_identity(const PointSet& a, double r, std::size_t n_dirs = 360,
                                          const EvalOptions& opts = {});

/// (1 + sqrt(2d / (d + 1)))^d: from this many points on, the packing and
/// Jung bounds alone force V_k(P^r) <= V_k(Q^r).
double kp_threshold(int d);

/// cr(S) <= sqrt(2d / (d + 1)) diam(S) / 2. Needs at least two points.
InequalityReport check_jung(const PointSet& s);

/// Every link of the uniform-contraction argument for V_k(P^r) <= V_k(Q^r).
/// Throws DomainError unless (P, Q, lambda) is a uniform contraction.
std::vector<InequalityReport> check_kp_chain(const PointSet& p, const PointSet& q, double lambda,
                                             double r, int k, const EvalOptions& opts = {},
                                             std::uint64_t seed = 0);

/// N points uniform in B[o, rho] with rho = r U(0.2, 0.95); cr < r.
PointSet random_configuration(std::size_t d, std::size_t n, double r, std::uint64_t seed);

/// n points equally spaced on the circle of radius `radius` about the origin.
PointSet circle_sample(std::size_t n, double radius);

/// Vertices of the regular simplex in E^d with unit edge length.
PointSet regular_simplex(std::size_t d);

}  // namespace ballkit
