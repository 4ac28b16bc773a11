#include "ballkit/ballbody.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "ballkit/errors.hpp"
#include "ballkit/hit_or_miss.hpp"
#include "ballkit/rng.hpp"

namespace ballkit {

BallBodySpec::BallBodySpec(PointSet centers, double radius)
    : centers_(std::move(centers)), radius_(radius) {
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) {
    throw DomainError("ball body radius must be finite and positive");
  }
  flat_ = centers_.flat();
  const Ball meb = min_enclosing_ball(centers_);
  circumradius_ = meb.radius;
  inner_ = meb.center;
}

std::vector<double> default_epsilons(std::size_t d, double r) {
  const std::size_t n = d + 3;
  std::vector<double> eps(n);
  for (std::size_t j = 0; j < n; ++j) {
    eps[j] = 0.1 * r * std::pow(10.0, static_cast<double>(j) / static_cast<double>(n - 1));
  }
  return eps;
}

namespace {

void require_dim(const BallBodySpec& b, std::size_t dim) {
  if (dim != b.dim()) {
    throw DomainError("point dimension " + std::to_string(dim) + " does not match body dimension " +
                      std::to_string(b.dim()));
  }
}

void require_nonempty(const BallBodySpec& b) {
  if (!b.nonempty()) throw DomainError("the ball body is empty");
}

// Largest violation max_i (|x - p_i| - r).
double max_violation(const BallBodySpec& b, std::span<const double> x) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < b.size(); ++i) {
    worst = std::max(worst, std::sqrt(squared_distance(x, b.center(i))) - b.radius());
  }
  return worst;
}

double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

std::vector<double> dykstra(const BallBodySpec& b, std::span<const double> x, double tol,
                            std::size_t max_iters) {
  const std::size_t d = b.dim();
  const std::size_t n = b.size();
  const double r = b.radius();
  std::vector<double> y(x.begin(), x.end());
  std::vector<double> incr(n * d, 0.0);
  std::vector<double> z(d);
  std::vector<double> prev(d);
  double move = std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < max_iters; ++it) {
    prev = y;
    // A small step of y alone does not mean convergence: far from the body
    // Dykstra can creep. Stop on the change of the correction terms instead.
    double inc_change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto p = b.center(i);
      double* inc = incr.data() + i * d;
      for (std::size_t a = 0; a < d; ++a) z[a] = y[a] + inc[a];
      const double dist = distance(z, p);
      if (dist > r) {
        const double s = r / dist;
        for (std::size_t a = 0; a < d; ++a) y[a] = p[a] + s * (z[a] - p[a]);
      } else {
        y = z;
      }
      for (std::size_t a = 0; a < d; ++a) {
        const double next = z[a] - y[a];
        inc_change += (next - inc[a]) * (next - inc[a]);
        inc[a] = next;
      }
    }
    move = std::max(distance(y, prev), std::sqrt(inc_change));
    if (move < tol && max_violation(b, y) <= tol) return y;
  }
  throw ConvergenceError("Dykstra projection did not converge", y, move);
}

struct SphereSolution {
  std::vector<double> y;
  Eigen::VectorXd mu;
};

// Closest point to x on the intersection of the spheres |y - p_i| = r,
// i in `active`, with its KKT multipliers x - y = sum mu_i (y - p_i). With
// `ascent` set, x is a direction u instead and y maximizes <y, u> on the
// intersection, with u = sum mu_i (y - p_i).
std::optional<SphereSolution> closest_on_spheres(const BallBodySpec& b, std::span<const double> x,
                                                 const std::vector<std::size_t>& active,
                                                 bool ascent = false) {
  const std::size_t d = b.dim();
  const std::size_t m = active.size();
  const double r = b.radius();
  SphereSolution out;
  out.y.resize(d);
  if (m == 1 && !ascent) {
    const auto p = b.center(active[0]);
    const double len = distance(x, p);
    if (len == 0.0) return std::nullopt;
    for (std::size_t a = 0; a < d; ++a) out.y[a] = p[a] + r * (x[a] - p[a]) / len;
    out.mu = Eigen::VectorXd::Constant(1, (len - r) / r);
    return out;
  }
  const auto q0 = b.center(active[0]);
  Eigen::MatrixXd e(d, m - 1);
  for (std::size_t k = 1; k < m; ++k) {
    const auto q = b.center(active[k]);
    for (std::size_t a = 0; a < d; ++a) e(a, k - 1) = q[a] - q0[a];
  }
  Eigen::VectorXd offset = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd v(d);
  Eigen::VectorXd w;
  if (m > 1) {
    const Eigen::MatrixXd g = e.transpose() * e;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) return std::nullopt;
    const Eigen::VectorXd rhs = 0.5 * g.diagonal();
    offset = e * lu.solve(rhs);
    for (std::size_t a = 0; a < d; ++a) v(a) = ascent ? x[a] : x[a] - q0[a] - offset(a);
    w = v - e * lu.solve(e.transpose() * v);
  } else {
    for (std::size_t a = 0; a < d; ++a) v(a) = x[a];
    w = v;
  }
  const double r2 = offset.squaredNorm();
  if (r2 >= r * r) return std::nullopt;
  const double wn = w.norm();
  if (wn <= 1e-14 * r) return std::nullopt;
  const double rho = std::sqrt(r * r - r2);
  Eigen::MatrixXd normals(d, m);
  Eigen::VectorXd gap(d);
  for (std::size_t a = 0; a < d; ++a) {
    out.y[a] = q0[a] + offset(a) + rho * w(a) / wn;
    gap(a) = ascent ? x[a] : x[a] - out.y[a];
  }
  for (std::size_t k = 0; k < m; ++k) {
    const auto q = b.center(active[k]);
    for (std::size_t a = 0; a < d; ++a) normals(a, k) = out.y[a] - q[a];
  }
  out.mu = normals.colPivHouseholderQr().solve(gap);
  if ((normals * out.mu - gap).norm() > 1e-9 * (gap.norm() + r)) return std::nullopt;
  return out;
}

// Active-set solve for the projection of x, or with `ascent` for the
// maximizer of <y, x> over the body.
std::optional<std::vector<double>> active_set_solve(const BallBodySpec& b, std::span<const double> x,
                                                    std::vector<std::size_t> active, bool ascent) {
  const std::size_t n = b.size();
  const double r = b.radius();
  const double feas_tol = 1e-12 * r;
  auto most_violated = [&](std::span<const double> y) {
    std::size_t best = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double v = distance(y, b.center(i)) - r;
      if (v > worst) {
        worst = v;
        best = i;
      }
    }
    return std::pair{best, worst};
  };
  if (active.empty()) active.push_back(most_violated(x).first);
  for (std::size_t iter = 0; iter < 4 * b.dim() + 16; ++iter) {
    const auto sol = closest_on_spheres(b, x, active, ascent);
    if (!sol) return std::nullopt;
    Eigen::Index neg;
    if (sol->mu.minCoeff(&neg) < -1e-12) {
      active.erase(active.begin() + neg);
      if (active.empty()) return std::nullopt;
      continue;
    }
    const auto [j, viol] = most_violated(sol->y);
    if (viol <= feas_tol) return sol->y;
    if (std::find(active.begin(), active.end(), j) != active.end()) return std::nullopt;
    if (active.size() < b.dim()) {
      active.push_back(j);
      continue;
    }
    // Full active set: swap j in for the first member that leaves a valid
    // multiplier vector.
    bool swapped = false;
    for (std::size_t drop = 0; drop < active.size() && !swapped; ++drop) {
      std::vector<std::size_t> trial = active;
      trial[drop] = j;
      const auto alt = closest_on_spheres(b, x, trial, ascent);
      if (alt && alt->mu.minCoeff() >= -1e-12) {
        active = std::move(trial);
        swapped = true;
      }
    }
    if (!swapped) return std::nullopt;
  }
  return std::nullopt;
}

double default_tol(const BallBodySpec& b, double tol) { return tol > 0.0 ? tol : 1e-8 * b.radius(); }

}  // namespace

bool contains(const BallBodySpec& b, std::span<const double> x) {
  require_dim(b, x.size());
  const double r2 = b.radius() * b.radius();
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (squared_distance(x, b.center(i)) > r2) return false;
  }
  return true;
}

bool contains(const BallBodySpec& b, const Point& x) { return contains(b, x.coords()); }

Point project(const BallBodySpec& b, const Point& x, double tol, std::size_t max_iters) {
  require_dim(b, x.dim());
  require_nonempty(b);
  if (!(tol > 0.0)) throw DomainError("project: tolerance must be positive");
  if (contains(b, x)) return x;
  return Point(dykstra(b, x.coords(), tol, max_iters));
}

double distance_to(const BallBodySpec& b, const Point& x, double tol) {
  return ballkit::distance(x, project(b, x, tol));
}

Point project_fast(const BallBodySpec& b, std::span<const double> x, double tol) {
  require_dim(b, x.size());
  require_nonempty(b);
  if (contains(b, x)) return Point(std::vector<double>(x.begin(), x.end()));
  if (auto y = active_set_solve(b, x, {}, false)) return Point(std::move(*y));
  try {
    return Point(dykstra(b, x, default_tol(b, tol), 100000));
  } catch (const ConvergenceError& e) {
    return Point(e.last_iterate());
  }
}

double distance_fast(const BallBodySpec& b, std::span<const double> x, double tol) {
  if (max_violation(b, x) <= 0.0) return 0.0;
  return distance(x, project_fast(b, x, tol).coords());
}

Point ray_exit(const BallBodySpec& b, const Point& origin, const Point& direction) {
  require_dim(b, origin.dim());
  require_dim(b, direction.dim());
  const double len = norm(direction);
  if (!(len > 0.0)) throw DomainError("ray_exit: direction must be nonzero");
  if (max_violation(b, origin.coords()) > kGeomTol * b.radius()) {
    throw DomainError("ray_exit: origin lies outside the body");
  }
  const std::size_t d = b.dim();
  const double r2 = b.radius() * b.radius();
  double t_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto p = b.center(i);
    double wu = 0.0;
    double w2 = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
      const double w = origin[a] - p[a];
      wu += w * direction[a] / len;
      w2 += w * w;
    }
    const double disc = std::max(0.0, wu * wu - (w2 - r2));
    t_min = std::min(t_min, std::max(0.0, -wu + std::sqrt(disc)));
  }
  Point out = origin;
  for (std::size_t a = 0; a < d; ++a) out[a] += t_min * direction[a] / len;
  return out;
}

Point support_point(const BallBodySpec& b, const Point& u, double tol, std::size_t max_iters) {
  require_dim(b, u.dim());
  require_nonempty(b);
  if (std::abs(norm(u) - 1.0) > 1e-9) throw DomainError("support_value: u must be a unit vector");
  if (!(tol > 0.0)) throw DomainError("support_value: tolerance must be positive");
  const std::size_t d = b.dim();
  const double r = b.radius();
  // Exact route: the ball with the smallest <p_i, u> bounds h(u) from above
  // and seeds the active set.
  std::size_t first = 0;
  for (std::size_t i = 1; i < b.size(); ++i) {
    if (dot(b.center(i), u.coords()) < dot(b.center(first), u.coords())) first = i;
  }
  if (auto y = active_set_solve(b, u.coords(), {first}, true)) return Point(std::move(*y));

  const double step = 4.0 * r;
  Point x = ray_exit(b, b.inner_point(), u);
  std::vector<double> z(d);
  for (std::size_t it = 0; it < max_iters; ++it) {
    for (std::size_t a = 0; a < d; ++a) z[a] = x[a] + step * u[a];
    Point y = project_fast(b, z, 1e-3 * tol);
    const double gain = dot(y.coords(), u.coords()) - dot(x.coords(), u.coords());
    x = std::move(y);
    if (gain <= 1e-2 * tol) {
      // The ascent stalls near kinks; the nearly active balls usually give
      // the exact maximizer.
      std::vector<std::size_t> near;
      for (std::size_t i = 0; i < b.size() && near.size() <= d; ++i) {
        if (distance(x.coords(), b.center(i)) >= r * (1.0 - 1e-6)) near.push_back(i);
      }
      if (!near.empty() && near.size() <= d) {
        if (auto exact = closest_on_spheres(b, u.coords(), near, true)) {
          if (exact->mu.minCoeff() >= -1e-12 && max_violation(b, exact->y) <= 1e-12 * r &&
              dot(exact->y, u.coords()) >= dot(x.coords(), u.coords())) {
            return Point(std::move(exact->y));
          }
        }
      }
      return x;
    }
  }
  throw ConvergenceError("support_value: ascent did not reach the tolerance", x.vec(), tol);
}

double support_value(const BallBodySpec& b, const Point& u, double tol, std::size_t max_iters) {
  return dot(support_point(b, u, tol, max_iters).coords(), u.coords());
}

std::pair<std::vector<double>, std::vector<double>> body_bounds(const BallBodySpec& b) {
  const std::size_t d = b.dim();
  std::vector<double> lo(d, -std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto p = b.center(i);
    for (std::size_t a = 0; a < d; ++a) {
      lo[a] = std::max(lo[a], p[a] - b.radius());
      hi[a] = std::min(hi[a], p[a] + b.radius());
    }
  }
  return {lo, hi};
}

namespace {

kernels::Box inflated_box(const BallBodySpec& b, double eps) {
  auto [lo, hi] = body_bounds(b);
  for (std::size_t a = 0; a < lo.size(); ++a) {
    lo[a] -= eps;
    hi[a] += eps;
    if (hi[a] < lo[a]) hi[a] = lo[a];
  }
  return {std::move(lo), std::move(hi)};
}

}  // namespace

Point random_unit_vector(std::size_t d, std::uint64_t seed, std::uint64_t index) {
  Engine eng = substream(seed, Stream::Directions, index);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> u(d);
  double len = 0.0;
  while (len < 1e-12) {
    for (double& c : u) c = gauss(eng);
    len = std::sqrt(dot(u, u));
  }
  for (double& c : u) c /= len;
  return Point(std::move(u));
}

SteinerFit steiner_fit(const BallBodySpec& b, const McConfig& cfg) {
  const std::size_t d = b.dim();
  const int di = static_cast<int>(d);
  SteinerFit fit;
  fit.epsilons = cfg.epsilons.empty() ? default_epsilons(d, b.radius()) : cfg.epsilons;
  if (fit.epsilons.size() < d + 1) {
    throw DomainError("steiner_fit: need at least d + 1 epsilons");
  }
  for (std::size_t j = 0; j < fit.epsilons.size(); ++j) {
    if (!(fit.epsilons[j] > 0.0) || (j > 0 && !(fit.epsilons[j] > fit.epsilons[j - 1]))) {
      throw DomainError("steiner_fit: epsilons must be positive and strictly increasing");
    }
  }
  if (cfg.samples < 1000) throw DomainError("steiner_fit: need at least 1000 samples per epsilon");
  if (cfg.chunk == 0) throw DomainError("steiner_fit: chunk must be positive");
  if (!b.nonempty()) {
    fit.volumes = IntrinsicVolumes::zeros(d);
    return fit;
  }

  const double tol = default_tol(b, cfg.tol);
  const std::size_t m = fit.epsilons.size();
  Eigen::VectorXd y(m);
  Eigen::VectorXd sigma(m);
  fit.parallel_volumes.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double eps = fit.epsilons[j];
    const kernels::Box box = inflated_box(b, eps);
    const kernels::SamplingPlan plan{cfg.samples, derive_seed(cfg.seed, Stream::HitOrMiss, j),
                                     cfg.chunk};
    auto inside = [&](std::span<const double> x) {
      double worst = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < b.size(); ++i) {
        const double v = std::sqrt(squared_distance(x, b.center(i))) - b.radius();
        if (v > eps) return false;
        worst = std::max(worst, v);
      }
      if (worst <= 0.0) return true;
      return distance_fast(b, x, tol) <= eps;
    };
    const std::uint64_t hits = kernels::count_hits(box, plan, inside, cfg.parallel);
    const double n = static_cast<double>(cfg.samples);
    const double p = static_cast<double>(hits) / n;
    const double vol = box.volume();
    fit.parallel_volumes[j] = vol * p;
    y(static_cast<Eigen::Index>(j)) = vol * p - omega(di) * std::pow(eps, di);
    sigma(static_cast<Eigen::Index>(j)) = vol * std::sqrt(std::max(p * (1.0 - p), 1.0 / n) / n);
  }

  // Weighted least squares in V_1..V_d, columns normalized before the SVD.
  Eigen::MatrixXd a(m, d);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 1; i <= d; ++i) {
      a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i - 1)) =
          omega(di - static_cast<int>(i)) * std::pow(fit.epsilons[j], di - static_cast<int>(i)) /
          sigma(static_cast<Eigen::Index>(j));
    }
  }
  const Eigen::VectorXd rhs = y.cwiseQuotient(sigma);
  const Eigen::VectorXd scale = a.colwise().norm().transpose();
  const Eigen::MatrixXd scaled = a * scale.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  fit.condition_number = sv(0) / sv(sv.size() - 1);
  if (!(fit.condition_number <= 1e8)) {
    throw FitConditioningError("steiner_fit: condition number " + std::to_string(fit.condition_number) +
                                   " exceeds 1e8; widen the epsilon grid",
                               fit.condition_number);
  }
  const Eigen::VectorXd coef = svd.solve(rhs).cwiseQuotient(scale);
  const Eigen::MatrixXd vinv = svd.matrixV() * sv.cwiseInverse().asDiagonal();
  const Eigen::MatrixXd cov_scaled = vinv * vinv.transpose();

  fit.volumes = IntrinsicVolumes::zeros(d);
  fit.volumes.values[0] = 1.0;
  for (std::size_t i = 1; i <= d; ++i) {
    const auto k = static_cast<Eigen::Index>(i - 1);
    double v = coef(k);
    const double se = std::sqrt(cov_scaled(k, k)) / scale(k);
    if (v < 0.0) {
      if (v < -3.0 * se) {
        throw FitError("steiner_fit: V_" + std::to_string(i) + " = " + std::to_string(v) +
                       " is negative beyond three standard errors");
      }
      fit.warnings.push_back("V_" + std::to_string(i) + " clamped to 0 from " + std::to_string(v));
      v = 0.0;
    }
    fit.volumes.values[i] = v;
    fit.volumes.std_errors[i] = se;
  }
  return fit;
}

Estimate mean_width_v1(const BallBodySpec& b, std::size_t n_dirs, std::uint64_t seed, double tol,
                       bool parallel) {
  require_nonempty(b);
  if (n_dirs < 2) throw DomainError("mean_width_v1: need at least two directions");
  const std::size_t d = b.dim();
  const auto widths = kernels::map_indexed(
      n_dirs,
      [&](std::size_t i) {
        const Point u = random_unit_vector(d, seed, i);
        return support_value(b, u, tol) + support_value(b, -1.0 * u, tol);
      },
      parallel);
  const double n = static_cast<double>(n_dirs);
  const double mean = std::accumulate(widths.begin(), widths.end(), 0.0) / n;
  double ss = 0.0;
  for (double w : widths) ss += (w - mean) * (w - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  const int di = static_cast<int>(d);
  const double factor = di * omega(di) / (2.0 * omega(di - 1));
  return {factor * mean, factor * sd / std::sqrt(n)};
}

Estimate estimate_volume(const BallBodySpec& b, std::uint64_t samples, std::uint64_t seed,
                         bool parallel, std::uint64_t chunk) {
  if (samples == 0) throw DomainError("estimate_volume: need samples");
  if (!b.nonempty()) return {0.0, 0.0};
  const kernels::Box box = inflated_box(b, 0.0);
  const kernels::SamplingPlan plan{samples, derive_seed(seed, Stream::HitOrMiss, 0), chunk};
  const auto inside = [&](std::span<const double> x) { return contains(b, x); };
  const std::uint64_t hits = kernels::count_hits(box, plan, inside, parallel);
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(hits) / n;
  return {box.volume() * p, box.volume() * std::sqrt(p * (1.0 - p) / n)};
}

PointSet boundary_sample(const BallBodySpec& b, std::size_t n, std::uint64_t seed) {
  require_nonempty(b);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point u = b.dim() == 2
                  ? Point{std::cos(2.0 * M_PI * i / n), std::sin(2.0 * M_PI * i / n)}
                  : random_unit_vector(b.dim(), seed, i);
    pts.push_back(ray_exit(b, b.inner_point(), u));
  }
  return PointSet(b.dim(), std::move(pts));
}

}  // namespace ballkit
