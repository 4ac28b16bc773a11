#pragma once

// Dimension-generic r-ball bodies A^r = intersection of B[p, r] over p in A:
// membership, projection, support values, boundary rays and Monte-Carlo
// intrinsic volumes through the Steiner polynomial.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ballkit/geom_core.hpp"

namespace ballkit {

class BallBodySpec {
 public:
  /// Throws DomainError unless radius is finite and positive.
  BallBodySpec(PointSet centers, double radius);

  const PointSet& centers() const noexcept { return centers_; }
  double radius() const noexcept { return radius_; }
  std::size_t dim() const noexcept { return centers_.dim(); }
  std::size_t size() const noexcept { return centers_.size(); }
  std::span<const double> center(std::size_t i) const {
    return {flat_.data() + i * dim(), dim()};
  }

  /// cr(centers) <= radius, up to the relative geometric tolerance.
  bool nonempty() const noexcept { return circumradius_ <= radius_ * (1.0 + kGeomTol); }
  double circumradius() const noexcept { return circumradius_; }
  /// Circumcenter of the centers: the deepest point of a nonempty body.
  const Point& inner_point() const noexcept { return inner_; }

 private:
  PointSet centers_;
  double radius_;
  std::vector<double> flat_;
  double circumradius_;
  Point inner_;
};

struct McConfig {
  std::uint64_t samples = 100000;  // per epsilon
  std::uint64_t seed = 0;
  std::vector<double> epsilons;  // empty selects default_epsilons
  std::uint64_t chunk = 4096;
  double tol = 0.0;  // projection tolerance; 0 selects 1e-8 * r
  bool parallel = true;
};

/// d + 3 geometrically spaced values in [0.1 r, r].
std::vector<double> default_epsilons(std::size_t d, double r);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// |x - p_i| <= r for every center, with no tolerance.
bool contains(const BallBodySpec& b, std::span<const double> x);
bool contains(const BallBodySpec& b, const Point& x);

/// Euclidean projection onto the body by Dykstra's cyclic corrected
/// projections. Throws ConvergenceError (carrying the last iterate) when
/// max_iters sweeps do not settle within tol.
Point project(const BallBodySpec& b, const Point& x, double tol, std::size_t max_iters = 100000);

/// |x - project(x)|; zero for members.
double distance_to(const BallBodySpec& b, const Point& x, double tol);

/// Projection by an active-set solve on sphere intersections, falling back
/// to Dykstra when the active set does not settle. Used by the samplers.
Point project_fast(const BallBodySpec& b, std::span<const double> x, double tol);
double distance_fast(const BallBodySpec& b, std::span<const double> x, double tol);

/// Exact boundary point hit by the ray origin + t * direction, t >= 0.
/// The origin must be a member.
Point ray_exit(const BallBodySpec& b, const Point& origin, const Point& direction);

/// A maximizer of <x, u> over the body by projected ascent: the step
/// x + 4r u is projected back until the gain drops below tol / 100.
Point support_point(const BallBodySpec& b, const Point& u, double tol,
                    std::size_t max_iters = 10000);

/// max <x, u> over the body, accurate to tol.
double support_value(const BallBodySpec& b, const Point& u, double tol,
                     std::size_t max_iters = 10000);

struct SteinerFit {
  IntrinsicVolumes volumes;
  std::vector<double> epsilons;
  std::vector<double> parallel_volumes;  // hit-or-miss V_d(body + eps B)
  double condition_number = 0.0;
  std::vector<std::string> warnings;
};

/// Intrinsic volumes from hit-or-miss estimates of V_d(body + eps B) fitted
/// to the Steiner polynomial sum_i omega_{d-i} V_i eps^{d-i} with V_0 = 1.
/// An empty body yields all zeros.
SteinerFit steiner_fit(const BallBodySpec& b, const McConfig& cfg);

/// V_1 from the mean width, (d omega_d / (2 omega_{d-1})) * E[h(u) + h(-u)],
/// over `n_dirs` random directions.
Estimate mean_width_v1(const BallBodySpec& b, std::size_t n_dirs, std::uint64_t seed, double tol,
                       bool parallel = true);

/// Plain hit-or-miss estimate of V_d(body).
Estimate estimate_volume(const BallBodySpec& b, std::uint64_t samples, std::uint64_t seed,
                         bool parallel = true, std::uint64_t chunk = 4096);

/// Exact boundary points by ray_exit from the inner point: evenly spaced
/// angles when d = 2, seeded uniform directions otherwise.
PointSet boundary_sample(const BallBodySpec& b, std::size_t n, std::uint64_t seed);

/// Uniform random unit vector drawn from the (seed, index) direction substream.
Point random_unit_vector(std::size_t d, std::uint64_t seed, std::uint64_t index);

/// Bounding box of the body: the intersection of the per-ball boxes.
std::pair<std::vector<double>, std::vector<double>> body_bounds(const BallBodySpec& b);

}  // namespace ballkit
