#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace ballkit {

/// Relative geometric tolerance for tangency, interval emptiness and
/// stitching decisions.
inline constexpr double kGeomTol = 1e-9;

/// Largest dimension accepted by the exact minimal-enclosing-ball path.
inline constexpr std::size_t kMaxMebDim = 10;

/// A point of E^d. Coordinates are finite doubles.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  static Point zero(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& vec() const noexcept { return coords_; }

  Point& operator+=(const Point& o);
  Point& operator-=(const Point& o);
  Point& operator*=(double s);

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(Point a, double s) { return a *= s; }
  friend Point operator*(double s, Point a) { return a *= s; }
  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

double dot(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);
double norm(const Point& p);
double distance(const Point& a, const Point& b);

/// Labeled finite point configuration; labels are the indices 0..N-1.
class PointSet {
 public:
  /// Throws DomainError when empty, ragged or non-finite.
  explicit PointSet(std::vector<Point> points);
  PointSet(std::size_t dim, std::vector<Point> points);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const noexcept { return points_; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  /// Row-major copy of the coordinates (size() * dim() doubles).
  std::vector<double> flat() const;

 private:
  void validate() const;

  std::size_t dim_;
  std::vector<Point> points_;
};

struct Ball {
  Point center;
  double radius = 0.0;
};

/// Intrinsic volumes V_0..V_d with per-entry standard errors. Exact
/// evaluations carry zero standard errors.
struct IntrinsicVolumes {
  std::size_t dim = 0;
  std::vector<double> values;
  std::vector<double> std_errors;

  static IntrinsicVolumes zeros(std::size_t dim);
  double operator[](std::size_t k) const { return values.at(k); }
  double error(std::size_t k) const { return std_errors.at(k); }
  bool exact() const;
};

/// Volume of the d-dimensional unit ball, pi^(d/2) / Gamma(1 + d/2),
/// evaluated through log-Gamma. Valid for 0 <= d <= 64.
double omega(int d);

/// V_l of the d-dimensional unit ball: C(d,l) * omega_d / omega_{d-l}.
double unit_ball_intrinsic_volume(int d, int l);

/// V_l(B^d[o, R]) = R^l * V_l(B^d_1). V_0 = 1 for every R >= 0.
double ball_intrinsic_volume(int d, int l, double radius);

/// Largest pairwise distance; 0 for a single point.
double diameter(const PointSet& s);

/// Smallest pairwise distance. Requires at least two points.
double min_pairwise_distance(const PointSet& s);

/// Smallest enclosing ball by randomized move-to-front recursion over
/// support sets of at most d + 1 points. The shuffle is driven by `seed`.
/// The result is certified before it is returned; an uncertifiable result
/// raises InternalError.
Ball min_enclosing_ball(const PointSet& s, std::uint64_t seed = 0);

/// Circumradius cr(S), the radius of min_enclosing_ball(S).
double circumradius(const PointSet& s, std::uint64_t seed = 0);

/// Jung's constant sqrt(2d / (d + 1)).
double jung_factor(int d);

}  // namespace ballkit
