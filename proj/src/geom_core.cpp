#include "ballkit/geom_core.hpp"

#include <algorithm>
#include <cmath>
#include <list>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "ballkit/errors.hpp"
#include "ballkit/rng.hpp"

namespace ballkit {

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {}

Point::Point(std::initializer_list<double> coords) : coords_(coords) {}

Point& Point::operator+=(const Point& o) {
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

Point& Point::operator-=(const Point& o) {
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

Point& Point::operator*=(double s) {
  for (double& c : coords_) c *= s;
  return *this;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

double norm(const Point& p) { return std::sqrt(dot(p.coords(), p.coords())); }

double distance(const Point& a, const Point& b) {
  return std::sqrt(squared_distance(a.coords(), b.coords()));
}

namespace {

// Read before the vector is moved: argument evaluation order is unspecified.
std::size_t leading_dim(const std::vector<Point>& points) {
  return points.empty() ? 0 : points.front().dim();
}

}  // namespace

PointSet::PointSet(std::vector<Point> points) : dim_(leading_dim(points)), points_(std::move(points)) {
  validate();
}

PointSet::PointSet(std::size_t dim, std::vector<Point> points)
    : dim_(dim), points_(std::move(points)) {
  validate();
}

void PointSet::validate() const {
  if (points_.empty()) throw DomainError("point set must contain at least one point");
  if (dim_ == 0) throw DomainError("point dimension must be at least 1");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].dim() != dim_) {
      throw DomainError("point " + std::to_string(i) + " has dimension " +
                        std::to_string(points_[i].dim()) + ", expected " + std::to_string(dim_));
    }
    for (double c : points_[i].coords()) {
      if (!std::isfinite(c)) throw DomainError("point " + std::to_string(i) + " is not finite");
    }
  }
}

std::vector<double> PointSet::flat() const {
  std::vector<double> out;
  out.reserve(points_.size() * dim_);
  for (const Point& p : points_) out.insert(out.end(), p.vec().begin(), p.vec().end());
  return out;
}

IntrinsicVolumes IntrinsicVolumes::zeros(std::size_t dim) {
  return IntrinsicVolumes{dim, std::vector<double>(dim + 1, 0.0),
                          std::vector<double>(dim + 1, 0.0)};
}

bool IntrinsicVolumes::exact() const {
  return std::all_of(std::begin(std_errors), std::end(std_errors),
                     [](double e) { return e == 0.0; });
}

namespace {

double log_omega(int d) {
  return 0.5 * d * std::log(std::numbers::pi) - std::lgamma(1.0 + 0.5 * d);
}

}  // namespace

double omega(int d) {
  if (d < 0 || d > 64) throw DomainError("omega: dimension must lie in [0, 64]");
  if (d == 0) return 1.0;
  if (d == 2) return std::numbers::pi;
  return std::exp(log_omega(d));
}

double unit_ball_intrinsic_volume(int d, int l) {
  if (d < 0 || d > 64) throw DomainError("unit_ball_intrinsic_volume: dimension must lie in [0, 64]");
  if (l < 0 || l > d) throw DomainError("unit_ball_intrinsic_volume: need 0 <= l <= d");
  if (l == 0) return 1.0;
  if (l == d) return omega(d);
  const double log_binom = std::lgamma(d + 1.0) - std::lgamma(l + 1.0) - std::lgamma(d - l + 1.0);
  return std::exp(log_binom + log_omega(d) - log_omega(d - l));
}

double ball_intrinsic_volume(int d, int l, double radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw DomainError("ball_intrinsic_volume: radius must be finite and >= 0");
  }
  const double unit = unit_ball_intrinsic_volume(d, l);
  if (l == 0) return 1.0;
  return std::pow(radius, l) * unit;
}

double diameter(const PointSet& s) {
  double best = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      best = std::max(best, squared_distance(s[i].coords(), s[j].coords()));
    }
  }
  return std::sqrt(best);
}

double min_pairwise_distance(const PointSet& s) {
  if (s.size() < 2) throw DomainError("min_pairwise_distance needs at least two points");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      best = std::min(best, squared_distance(s[i].coords(), s[j].coords()));
    }
  }
  return std::sqrt(best);
}

double jung_factor(int d) { return std::sqrt(2.0 * d / (d + 1.0)); }

namespace {

// Move-to-front smallest enclosing ball. The current ball is the smallest
// ball having every point of `support_` on its boundary; pushing a point
// recomputes it as the circumcenter inside the affine hull of the support.
class MoveToFrontBall {
 public:
  MoveToFrontBall(const PointSet& s, std::uint64_t seed) : dim_(s.dim()), flat_(s.flat()) {
    std::vector<int> order(s.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    Engine eng = substream(seed, Stream::Meb, 0);
    std::shuffle(order.begin(), order.end(), eng);
    list_.assign(order.begin(), order.end());
    center_.assign(dim_, 0.0);
  }

  void run() { mtf(list_.end()); }

  const std::vector<double>& center() const { return center_; }
  double squared_radius() const { return r2_; }

 private:
  const double* pt(int i) const { return flat_.data() + static_cast<std::size_t>(i) * dim_; }

  bool outside(int i) const {
    if (r2_ < 0.0) return true;
    const double d2 = squared_distance({pt(i), dim_}, center_);
    return d2 > r2_ * (1.0 + 2e-12);
  }

  bool push(int i) {
    if (support_.empty()) {
      center_.assign(pt(i), pt(i) + dim_);
      r2_ = 0.0;
      support_.push_back(i);
      return true;
    }
    const std::size_t m = support_.size();  // number of difference vectors after the push
    const double* q0 = pt(support_.front());
    Eigen::MatrixXd e(dim_, m);
    for (std::size_t k = 0; k < m; ++k) {
      const double* q = (k + 1 < m) ? pt(support_[k + 1]) : pt(i);
      for (std::size_t a = 0; a < dim_; ++a) e(a, k) = q[a] - q0[a];
    }
    const Eigen::MatrixXd g = e.transpose() * e;
    Eigen::VectorXd b(m);
    for (std::size_t k = 0; k < m; ++k) b(k) = 0.5 * g(k, k);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
    lu.setThreshold(1e-13);
    if (!lu.isInvertible()) return false;
    const Eigen::VectorXd lambda = lu.solve(b);
    const Eigen::VectorXd offset = e * lambda;
    for (std::size_t a = 0; a < dim_; ++a) center_[a] = q0[a] + offset(a);
    r2_ = offset.squaredNorm();
    support_.push_back(i);
    return true;
  }

  void mtf(std::list<int>::iterator end) {
    if (support_.size() == dim_ + 1) return;
    for (auto k = list_.begin(); k != end;) {
      auto j = k++;
      if (outside(*j) && push(*j)) {
        mtf(j);
        support_.pop_back();
        list_.splice(list_.begin(), list_, j);
      }
    }
  }

  std::size_t dim_;
  std::vector<double> flat_;
  std::list<int> list_;
  std::vector<int> support_;
  std::vector<double> center_;
  double r2_ = -1.0;
};

bool certify(const PointSet& s, const std::vector<double>& c, double r) {
  const double slack = r * (1.0 + 1e-9);
  std::size_t on_boundary = 0;
  for (const Point& p : s) {
    const double dist = std::sqrt(squared_distance(p.coords(), c));
    if (dist > slack + 1e-300) return false;
    if (std::abs(dist - r) <= 1e-9 * r) ++on_boundary;
  }
  return s.size() == 1 || r == 0.0 || on_boundary >= 2;
}

}  // namespace

Ball min_enclosing_ball(const PointSet& s, std::uint64_t seed) {
  if (s.dim() > kMaxMebDim) {
    throw DomainError("min_enclosing_ball: exact path supports dimension <= 10");
  }
  // Degenerate support sets can leave a point uncovered; a different
  // shuffle avoids the offending push order.
  for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
    MoveToFrontBall mtf(s, seed + attempt);
    mtf.run();
    const double r = std::sqrt(std::max(0.0, mtf.squared_radius()));
    if (certify(s, mtf.center(), r)) return Ball{Point(mtf.center()), r};
  }
  throw InternalError("min_enclosing_ball: could not certify the enclosing ball");
}

double circumradius(const PointSet& s, std::uint64_t seed) {
  return min_enclosing_ball(s, seed).radius;
}

}  // namespace ballkit
