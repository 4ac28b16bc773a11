#pragma once

// Exact planar kernel for intersections of disks. An ArcGon is a convex
// region bounded by circular arcs; it represents both A^r and conv_r(A) in
// the plane.

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "ballkit/geom_core.hpp"

namespace ballkit {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);
Vec2 unit_vector(double angle);
Vec2 to_vec2(const Point& p);
Point to_point(Vec2 v);

/// Maps any angle into [0, 2*pi).
double canonical_angle(double angle);

/// Counterclockwise circular arc. Both angles are stored in [0, 2*pi); the
/// sweep is (end - start) mod 2*pi, taken in (0, 2*pi].
struct Arc {
  Vec2 center;
  double radius = 0.0;
  double start_angle = 0.0;
  double end_angle = 0.0;

  double sweep() const;
  double length() const { return radius * sweep(); }
  Vec2 point_at(double angle) const { return center + radius * unit_vector(angle); }
  Vec2 start() const { return point_at(start_angle); }
  Vec2 end() const { return point_at(end_angle); }
  /// True when `angle` lies in the closed angular interval of the arc.
  bool covers(double angle) const;
};

struct Disk {
  Vec2 center;
  double radius = 0.0;
};

class ArcGon {
 public:
  enum class Kind { Empty, SinglePoint, FullDisk, Chain };

  ArcGon() = default;
  static ArcGon empty() { return ArcGon(); }
  static ArcGon single_point(Vec2 p);
  static ArcGon full_disk(Disk d);
  /// Arcs must be in counterclockwise order with shared endpoints.
  static ArcGon chain(std::vector<Arc> arcs);

  Kind kind() const;
  bool is_empty() const { return kind() == Kind::Empty; }

  Vec2 point() const;
  const Disk& disk() const;
  const std::vector<Arc>& arcs() const;

  /// Chain vertices (arc start points) in traversal order. A single point
  /// yields itself, disks and the empty set yield nothing.
  std::vector<Vec2> vertices() const;
  double max_radius() const;

  /// Point membership with an absolute tolerance.
  bool contains(Vec2 p, double tol = 0.0) const;

  /// `n` boundary points spaced evenly by arc length (plus every vertex).
  std::vector<Vec2> boundary_points(std::size_t n) const;

  /// Axis-aligned bounds {lo, hi}. Requires a nonempty region.
  std::pair<Vec2, Vec2> bounds() const;

 private:
  std::variant<std::monostate, Vec2, Disk, std::vector<Arc>> data_;
};

/// Which route produced a dual or hull.
enum class ConstructionPath { Exact, RayBisection };

struct ArcGonResult {
  ArcGon body;
  ConstructionPath path = ConstructionPath::Exact;
};

/// Exact intersection of disks with per-disk radii.
ArcGon disk_intersection(std::span<const Vec2> centers, std::span<const double> radii);
ArcGon disk_intersection(const PointSet& centers, std::span<const double> radii);

/// A^r, the intersection of the radius-r disks centered at A.
ArcGon r_dual(const PointSet& a, double r);

/// conv_r(A) through vertex duality, validated by the support identity
/// h_{A^r}(u) + h_{conv_r A}(-u) = r. Throws HullUndefinedError if cr(A) > r.
ArcGonResult r_hull(const PointSet& a, double r, std::uint64_t seed = 0);

/// V_0, V_1 (half perimeter) and V_2 (area); exact.
IntrinsicVolumes measures(const ArcGon& k);

/// Support function h_K(u) for a unit vector u.
double support(const ArcGon& k, Vec2 u);

/// max over x in K of |x - v|.
double farthest_distance(const ArcGon& k, Vec2 v);

struct DualOptions {
  std::size_t validation_samples = 256;
  std::size_t rays = 4096;
  bool force_ray_bisection = false;
  std::uint64_t seed = 0;
};

/// K^s = {v : farthest_distance(K, v) <= s}. The arc construction is checked
/// against the membership predicate on random boundary samples and replaced
/// by a ray-bisection approximation when the check fails.
ArcGonResult s_dual(const ArcGon& k, double s, const DualOptions& opts = {});

/// max over `n_dirs` evenly spaced directions of |h_A(u) - h_B(u)|; equals
/// the Hausdorff distance of convex bodies in the limit.
double support_distance(const ArcGon& a, const ArcGon& b, std::size_t n_dirs = 3600);

}  // namespace ballkit
