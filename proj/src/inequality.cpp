#include "ballkit/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "ballkit/contraction.hpp"
#include "ballkit/errors.hpp"
#include "ballkit/rng.hpp"

namespace ballkit {

std::string_view path_name(EvalPath p) { return p == EvalPath::Exact2d ? "exact2d" : "mc"; }

bool within_margin(double lhs, double rhs, double se_lhs, double se_rhs) {
  return lhs <= rhs + 3.0 * (se_lhs + se_rhs) + 1e-9 * std::max(1.0, std::abs(rhs));
}

InequalityReport make_report(std::string name, ReportParams params, double lhs, double rhs,
                             double se_lhs, double se_rhs, EvalPath path) {
  InequalityReport rep;
  rep.name = std::move(name);
  rep.params = params;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.stderr_lhs = se_lhs;
  rep.stderr_rhs = se_rhs;
  rep.pass = within_margin(lhs, rhs, se_lhs, se_rhs);
  rep.path = path;
  return rep;
}

namespace {

// Standard error of f(V) from that of V, by a one-sigma finite difference;
// stays finite where f has an infinite slope (roots at V = 0).
template <class F>
double propagate(const F& f, double v, double se) {
  if (se == 0.0) return 0.0;
  return std::abs(f(v + se) - f(v));
}

double root(double v, double p) { return std::pow(std::max(v, 0.0), p); }

EvalPath resolve_path(const PointSet& a, const EvalOptions& opts) {
  const EvalPath path = opts.path.value_or(a.dim() == 2 ? EvalPath::Exact2d : EvalPath::MonteCarlo);
  if (path == EvalPath::Exact2d && a.dim() != 2) {
    throw DomainError("the exact path is only available in the plane");
  }
  return path;
}

void require_index(int k, int d, const char* what) {
  if (k < 1 || k > d) {
    throw DomainError(std::string(what) + " must lie in [1, " + std::to_string(d) + "]");
  }
}

void require_hull(double cr, double r) {
  if (!(r > 0.0)) throw DomainError("r must be positive");
  if (cr > r * (1.0 + kGeomTol)) {
    throw HullUndefinedError("cr(A) = " + std::to_string(cr) + " exceeds r = " + std::to_string(r));
  }
}

ReportParams params_for(const PointSet& a, double r, const EvalOptions& opts, EvalPath path) {
  ReportParams p;
  p.d = static_cast<int>(a.dim());
  p.r = r;
  p.n = a.size();
  if (path == EvalPath::MonteCarlo) p.seed = opts.mc.seed;
  return p;
}

McConfig reseeded(const McConfig& cfg, std::uint64_t index) {
  McConfig out = cfg;
  out.seed = derive_seed(cfg.seed, Stream::Membership, index);
  return out;
}

IntrinsicVolumes ball_volumes(std::size_t d, double radius) {
  IntrinsicVolumes v = IntrinsicVolumes::zeros(d);
  for (std::size_t l = 0; l <= d; ++l) {
    v.values[l] = ball_intrinsic_volume(static_cast<int>(d), static_cast<int>(l), radius);
  }
  return v;
}

// Stand-in for conv_r(A) away from the plane: S^r for an exact boundary
// sample S of A^r, plus any extra points of A^r supplied by the caller.
BallBodySpec sampled_hull(const BallBodySpec& dual, std::size_t n, std::uint64_t seed,
                          const std::vector<Point>& extra = {}) {
  const PointSet s = boundary_sample(dual, n, seed);
  std::vector<Point> pts(s.begin(), s.end());
  pts.insert(pts.end(), extra.begin(), extra.end());
  return BallBodySpec(PointSet(dual.dim(), std::move(pts)), dual.radius());
}

bool dual_is_point(double cr, double r) { return cr >= r * (1.0 - kGeomTol); }

}  // namespace

DualPair dual_pair(const PointSet& a, double r, const EvalOptions& opts) {
  const EvalPath path = resolve_path(a, opts);
  const double cr = circumradius(a);
  require_hull(cr, r);
  DualPair out;
  out.path = path;
  if (path == EvalPath::Exact2d) {
    out.dual = measures(r_dual(a, r));
    out.hull = measures(r_hull(a, r).body);
    return out;
  }
  const BallBodySpec dual(a, r);
  if (dual_is_point(cr, r)) {
    // A^r is the single point at the circumcenter and conv_r(A) its r-ball.
    out.dual = IntrinsicVolumes::zeros(a.dim());
    out.dual.values[0] = 1.0;
    out.hull = ball_volumes(a.dim(), r);
    return out;
  }
  out.dual = steiner_fit(dual, opts.mc).volumes;
  const BallBodySpec hull =
      sampled_hull(dual, opts.hull_samples, derive_seed(opts.mc.seed, Stream::Membership, 0));
  out.hull = steiner_fit(hull, reseeded(opts.mc, 1)).volumes;
  return out;
}

namespace {

Estimate radius_from(const IntrinsicVolumes& hull, int l) {
  const int d = static_cast<int>(hull.dim);
  const double unit = unit_ball_intrinsic_volume(d, l);
  const auto f = [&](double v) { return root(v / unit, 1.0 / l); };
  return {f(hull[l]), propagate(f, hull[l], hull.error(l))};
}

void require_nondegenerate(double cr) {
  if (cr == 0.0) throw DegenerateError("cr(A) = 0: the body conv_r(A) is a single point");
}

}  // namespace

Estimate intrinsic_radius(const PointSet& a, double r, int l, const EvalOptions& opts) {
  require_index(l, static_cast<int>(a.dim()), "l");
  const double cr = circumradius(a);
  require_hull(cr, r);
  require_nondegenerate(cr);
  return radius_from(dual_pair(a, r, opts).hull, l);
}

InequalityReport check_blaschke_santalo(const PointSet& a, double r, int k, int l,
                                        const EvalOptions& opts) {
  const int d = static_cast<int>(a.dim());
  require_index(k, d, "k");
  require_index(l, d, "l");
  if (k > l) throw DomainError("need k <= l");
  const double cr = circumradius(a);
  require_hull(cr, r);
  require_nondegenerate(cr);
  const DualPair pair = dual_pair(a, r, opts);
  const Estimate radius = radius_from(pair.hull, l);
  const auto bound = [&](double big_r) { return ball_intrinsic_volume(d, k, std::max(0.0, r - big_r)); };
  ReportParams params = params_for(a, r, opts, pair.path);
  params.k = k;
  params.l = l;
  return make_report("blaschke_santalo", params, pair.dual[k], bound(radius.value),
                     pair.dual.error(k), propagate(bound, radius.value, radius.std_error),
                     pair.path);
}

double ball_volume_product(int d, int k, double x, double r) {
  const double unit = unit_ball_intrinsic_volume(d, k);
  return std::pow(x, k) * std::pow(r - x, k) * unit * unit;
}

InequalityReport check_volume_product(const PointSet& a, double r, int k, const EvalOptions& opts) {
  const int d = static_cast<int>(a.dim());
  require_index(k, d, "k");
  const DualPair pair = dual_pair(a, r, opts);
  const double h = pair.hull[k];
  const double v = pair.dual[k];
  const double se = std::hypot(h * pair.dual.error(k), v * pair.hull.error(k));
  ReportParams params = params_for(a, r, opts, pair.path);
  params.k = k;
  return make_report("volume_product", params, h * v, ball_volume_product(d, k, r / 2.0, r), se,
                     0.0, pair.path);
}

InequalityReport check_volume_product(const ArcGon& body, double r, int k) {
  require_index(k, 2, "k");
  if (body.is_empty()) throw DomainError("volume product of the empty set");
  const ArcGon dual = s_dual(body, r).body;
  ReportParams params;
  params.d = 2;
  params.k = k;
  params.r = r;
  return make_report("volume_product", params, measures(body)[k] * measures(dual)[k],
                     ball_volume_product(2, k, r / 2.0, r), 0.0, 0.0, EvalPath::Exact2d);
}

InequalityReport check_bm_chain(const PointSet& a, double r, int k, const EvalOptions& opts) {
  const int d = static_cast<int>(a.dim());
  require_index(k, d, "k");
  const double cr = circumradius(a);
  require_hull(cr, r);
  require_nondegenerate(cr);
  const DualPair pair = dual_pair(a, r, opts);
  const auto f = [&](double v) { return root(v, 1.0 / k); };
  const double lhs = f(pair.dual[k]) + f(pair.hull[k]);
  const double se = propagate(f, pair.dual[k], pair.dual.error(k)) +
                    propagate(f, pair.hull[k], pair.hull.error(k));
  ReportParams params = params_for(a, r, opts, pair.path);
  params.k = k;
  return make_report("brunn_minkowski", params, lhs, f(ball_intrinsic_volume(d, k, r)), se, 0.0,
                     pair.path);
}

InequalityReport check_alexandrov(const IntrinsicVolumes& v, int k, int l) {
  const int d = static_cast<int>(v.dim);
  require_index(k, d, "k");
  require_index(l, d, "l");
  if (k > l) throw DomainError("need k <= l");
  const double uk = unit_ball_intrinsic_volume(d, k);
  const double ul = unit_ball_intrinsic_volume(d, l);
  const auto lhs = [&](double x) { return std::pow(x / ul, k); };
  const auto rhs = [&](double x) { return std::pow(x / uk, l); };
  ReportParams params;
  params.d = d;
  params.k = k;
  params.l = l;
  const EvalPath path = v.exact() ? EvalPath::Exact2d : EvalPath::MonteCarlo;
  return make_report("alexandrov", params, lhs(v[l]), rhs(v[k]), propagate(lhs, v[l], v.error(l)),
                     propagate(rhs, v[k], v.error(k)), path);
}

InequalityReport check_alexandrov(const PointSet& a, double r, int k, int l,
                                  const EvalOptions& opts) {
  const int d = static_cast<int>(a.dim());
  require_index(k, d, "k");
  require_index(l, d, "l");
  if (k > l) throw DomainError("need k <= l");
  const double cr = circumradius(a);
  require_hull(cr, r);
  require_nondegenerate(cr);
  const DualPair pair = dual_pair(a, r, opts);
  const Estimate radius = radius_from(pair.hull, l);
  const auto lhs = [&](double big_r) { return ball_intrinsic_volume(d, k, std::max(0.0, big_r)); };
  ReportParams params = params_for(a, r, opts, pair.path);
  params.k = k;
  params.l = l;
  return make_report("alexandrov_body", params, lhs(radius.value), pair.hull[k],
                     propagate(lhs, radius.value, radius.std_error), pair.hull.error(k), pair.path);
}

InequalityReport check_minkowski_identity(const PointSet& a, double r, std::size_t n_dirs,
                                          const EvalOptions& opts) {
  if (n_dirs == 0) throw DomainError("need at least one direction");
  const EvalPath path = resolve_path(a, opts);
  const double cr = circumradius(a);
  require_hull(cr, r);
  require_nondegenerate(cr);
  ReportParams params = params_for(a, r, opts, path);
  double worst = 0.0;
  if (path == EvalPath::Exact2d) {
    const ArcGon dual = r_dual(a, r);
    const ArcGon hull = r_hull(a, r).body;
    for (std::size_t j = 0; j < n_dirs; ++j) {
      const Vec2 u = unit_vector(2.0 * std::numbers::pi * static_cast<double>(j) / n_dirs);
      worst = std::max(worst, std::abs(support(dual, u) + support(hull, -1.0 * u) - r));
    }
    return make_report("support_identity", params, worst, 1e-7 * r, 0.0, 0.0, path);
  }
  const double tol = opts.mc.tol > 0.0 ? opts.mc.tol : 1e-8 * r;
  const BallBodySpec dual(a, r);
  std::vector<Point> dirs;
  std::vector<Point> extreme;
  for (std::size_t j = 0; j < n_dirs; ++j) {
    dirs.push_back(random_unit_vector(a.dim(), opts.mc.seed, j));
    extreme.push_back(support_point(dual, dirs.back(), tol));
  }
  // The maximizers of the tested directions join the boundary sample: with
  // x_u in S, h_{S^r}(-u) <= r - <x_u, u>, which pins the hull support in
  // exactly the directions being compared.
  const BallBodySpec hull = sampled_hull(dual, opts.hull_samples,
                                         derive_seed(opts.mc.seed, Stream::Membership, 0), extreme);
  for (std::size_t j = 0; j < n_dirs; ++j) {
    const double h_dual = dot(extreme[j].coords(), dirs[j].coords());
    worst = std::max(worst, std::abs(h_dual + support_value(hull, -1.0 * dirs[j], tol) - r));
  }
  return make_report("support_identity", params, worst, 10.0 * tol, 0.0, 0.0, path);
}

double kp_threshold(int d) { return std::pow(1.0 + jung_factor(d), d); }

InequalityReport check_jung(const PointSet& s) {
  if (s.size() < 2) throw DomainError("check_jung needs at least two points");
  const int d = static_cast<int>(s.dim());
  ReportParams params;
  params.d = d;
  params.n = s.size();
  // No sampling involved in any dimension, so the row carries the exact tag.
  return make_report("jung", params, circumradius(s), jung_factor(d) * diameter(s) / 2.0, 0.0, 0.0,
                     EvalPath::Exact2d);
}

namespace {

double exact_dual_volume(const PointSet& s, double r, int k) { return measures(r_dual(s, r))[k]; }

Estimate mc_dual_volume(const PointSet& s, double r, int k, const McConfig& cfg) {
  const BallBodySpec body(s, r);
  if (!body.nonempty()) return {0.0, 0.0};
  if (dual_is_point(body.circumradius(), r)) return {0.0, 0.0};
  const IntrinsicVolumes v = steiner_fit(body, cfg).volumes;
  return {v[k], v.error(k)};
}

}  // namespace

std::vector<InequalityReport> check_kp_chain(const PointSet& p, const PointSet& q, double lambda,
                                             double r, int k, const EvalOptions& opts,
                                             std::uint64_t seed) {
  if (!verify_pair(p, q, lambda)) {
    throw DomainError("(P, Q, lambda) is not a uniform contraction");
  }
  if (!(r > 0.0)) throw DomainError("r must be positive");
  const int d = static_cast<int>(p.dim());
  if (d < 2) throw DomainError("the contraction chain needs d >= 2");
  require_index(k, d, "k");
  const EvalPath path = resolve_path(p, opts);
  const std::size_t n = p.size();
  const double unit = unit_ball_intrinsic_volume(d, k);
  const double cr_p = circumradius(p);
  const bool applicable = static_cast<double>(n) >= kp_threshold(d);

  ReportParams params;
  params.d = d;
  params.k = k;
  params.r = r;
  params.lambda = lambda;
  params.n = n;
  params.seed = seed;

  Estimate vq;
  if (path == EvalPath::Exact2d) {
    vq = {exact_dual_volume(q, r, k), 0.0};
  } else {
    vq = mc_dual_volume(q, r, k, reseeded(opts.mc, 2));
  }

  std::vector<InequalityReport> out;
  auto finish = [&](double vp, double se_p) {
    InequalityReport rep = make_report("kp.theorem2", params, vp, vq.value, se_p, vq.std_error, path);
    rep.vP = vp;
    rep.vQ = vq.value;
    rep.theorem_applicable = applicable;
    out.push_back(std::move(rep));
  };

  if (cr_p > r * (1.0 + kGeomTol)) {
    // P^r is empty, so V_k(P^r) = 0 and there is nothing left to bound.
    out.push_back(make_report("kp.empty_case", params, 0.0, vq.value, 0.0, vq.std_error, path));
    finish(0.0, 0.0);
    return out;
  }
  out.push_back(make_report("kp.circumradius", params, cr_p, r, 0.0, 0.0, path));

  // Membership in P^r against membership in (P_{lambda/2})^{r + lambda/2},
  // where the farthest point of B[p, lambda/2] from x is at |x - p| + lambda/2.
  {
    const BallBodySpec body(p, r);
    auto [lo, hi] = body_bounds(body);
    Engine eng = substream(seed, Stream::Membership, 0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::size_t mismatches = 0;
    std::vector<double> x(static_cast<std::size_t>(d));
    const double pad = 0.25 * r;
    for (int s = 0; s < 1000; ++s) {
      for (int a = 0; a < d; ++a) x[a] = lo[a] - pad + (hi[a] - lo[a] + 2.0 * pad) * unif(eng);
      bool in_dual = true;
      bool in_union_dual = true;
      for (std::size_t i = 0; i < n; ++i) {
        const double dist = std::sqrt(squared_distance(x, p[i].coords()));
        in_dual = in_dual && dist <= r;
        in_union_dual = in_union_dual && dist + lambda / 2.0 <= r + lambda / 2.0;
      }
      if (in_dual != in_union_dual) ++mismatches;
    }
    out.push_back(make_report("kp.representation", params, static_cast<double>(mismatches), 0.0,
                              0.0, 0.0, path));
  }

  Estimate vp;
  Estimate packing_body;
  const double s = r + lambda / 2.0;
  if (path == EvalPath::Exact2d) {
    const ArcGon dual = r_dual(p, r);
    vp = {measures(dual)[k], 0.0};
    packing_body = {measures(s_dual(dual, s).body)[2], 0.0};
  } else {
    vp = mc_dual_volume(p, r, k, reseeded(opts.mc, 3));
    const BallBodySpec dual(p, r);
    const BallBodySpec body =
        dual_is_point(cr_p, r)
            ? BallBodySpec(PointSet(std::vector<Point>{dual.inner_point()}), s)
            : BallBodySpec(boundary_sample(dual, opts.hull_samples,
                                           derive_seed(opts.mc.seed, Stream::Membership, 4)),
                           s);
    packing_body = estimate_volume(body, opts.mc.samples,
                                   derive_seed(opts.mc.seed, Stream::Membership, 5),
                                   opts.mc.parallel, opts.mc.chunk);
  }
  const double packed = static_cast<double>(n) * omega(d) * std::pow(lambda / 2.0, d);
  out.push_back(make_report("kp.packing", params, packed, packing_body.value, 0.0,
                            packing_body.std_error, path));

  const double base13 = r - (std::pow(static_cast<double>(n), 1.0 / d) - 1.0) * lambda / 2.0;
  const double bound13 = std::pow(std::max(0.0, base13), k) * unit;
  out.push_back(make_report("kp.packing_bound", params, vp.value, bound13, vp.std_error, 0.0, path));

  const double base15 = r - jung_factor(d) * lambda / 2.0;
  const double bound15 = std::pow(std::max(0.0, base15), k) * unit;
  if (applicable) {
    out.push_back(make_report("kp.threshold", params, bound13, bound15, 0.0, 0.0, path));
  }
  out.push_back(make_report("kp.jung", params, circumradius(q), jung_factor(d) * lambda / 2.0, 0.0,
                            0.0, path));
  out.push_back(make_report("kp.jung_bound", params, bound15, vq.value, 0.0, vq.std_error, path));
  finish(vp.value, vp.std_error);
  return out;
}

PointSet random_configuration(std::size_t d, std::size_t n, double r, std::uint64_t seed) {
  if (d < 1 || n < 1) throw DomainError("random_configuration needs d >= 1 and n >= 1");
  Engine eng = substream(seed, Stream::Configuration, 0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double rho = r * (0.2 + 0.75 * unif(eng));
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x(d);
    double len = 0.0;
    while (len < 1e-12) {
      for (double& c : x) c = gauss(eng);
      len = std::sqrt(dot(x, x));
    }
    const double t = rho * std::pow(unif(eng), 1.0 / static_cast<double>(d)) / len;
    for (double& c : x) c *= t;
    pts.emplace_back(std::move(x));
  }
  return PointSet(d, std::move(pts));
}

PointSet circle_sample(std::size_t n, double radius) {
  std::vector<Point> pts;
  for (std::size_t j = 0; j < n; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    pts.push_back(Point{radius * std::cos(t), radius * std::sin(t)});
  }
  return PointSet(2, std::move(pts));
}

PointSet regular_simplex(std::size_t d) {
  if (d < 1) throw DomainError("regular_simplex needs d >= 1");
  // e_i / sqrt(2) in E^{d+1} has unit edges; its centered rows span a
  // d-dimensional subspace, whose coordinates come from the SVD.
  const auto m = static_cast<Eigen::Index>(d + 1);
  Eigen::MatrixXd x = Eigen::MatrixXd::Identity(m, m) / std::sqrt(2.0);
  x.rowwise() -= x.colwise().mean();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeFullU);
  const Eigen::MatrixXd coords = svd.matrixU().leftCols(m - 1) *
                                 svd.singularValues().head(m - 1).asDiagonal();
  std::vector<Point> pts;
  for (Eigen::Index i = 0; i < m; ++i) {
    std::vector<double> c(d);
    for (std::size_t a = 0; a < d; ++a) c[a] = coords(i, static_cast<Eigen::Index>(a));
    pts.emplace_back(std::move(c));
  }
  return PointSet(d, std::move(pts));
}

}  // namespace ballkit
