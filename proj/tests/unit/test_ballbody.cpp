#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ballkit/arcgon.hpp"
#include "ballkit/ballbody.hpp"
#include "ballkit/errors.hpp"
#include "ballkit/inequality.hpp"

using namespace ballkit;

namespace {

constexpr double kPi = std::numbers::pi;

Point gaussian_point(std::mt19937_64& eng, std::size_t d, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<double> c(d);
  for (double& x : c) x = g(eng);
  return Point(std::move(c));
}

// Nearest point of a planar body by scanning a dense boundary.
double dense_distance_2d(const ArcGon& k, Vec2 x) {
  if (k.contains(x)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (Vec2 p : k.boundary_points(200000)) best = std::min(best, norm(p - x));
  return best;
}

McConfig mc(std::uint64_t samples, std::uint64_t seed) {
  McConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST(BallBodySpec, ConstructionAndEmptiness) {
  EXPECT_THROW(BallBodySpec(PointSet({Point{0, 0}}), 0.0), DomainError);
  EXPECT_THROW(BallBodySpec(PointSet({Point{0, 0}}), std::nan("")), DomainError);
  const BallBodySpec b(PointSet({Point{0, 0}, Point{2, 0}}), 1.5);
  EXPECT_TRUE(b.nonempty());
  EXPECT_NEAR(b.circumradius(), 1.0, 1e-15);
  EXPECT_NEAR(b.inner_point()[0], 1.0, 1e-15);
  EXPECT_EQ(b.center(1)[0], 2.0);
  EXPECT_FALSE(BallBodySpec(PointSet({Point{0, 0}, Point{2, 0}}), 0.9).nonempty());
}

TEST(Contains, Examples) {
  const BallBodySpec b(PointSet({Point{0, 0, 0}, Point{1, 0, 0}}), 1.0);
  EXPECT_TRUE(contains(b, Point{0.5, 0, 0}));
  EXPECT_TRUE(contains(b, Point{1, 0, 0}));  // on the boundary of the first ball
  EXPECT_FALSE(contains(b, Point{1.0000001, 0, 0}));
  EXPECT_FALSE(contains(b, Point{0.5, 0.9, 0}));
  EXPECT_THROW(contains(b, Point{0.5, 0}), DomainError);
}

TEST(Project, SingleBallIsRadial) {
  const BallBodySpec b(PointSet({Point{1, 1, 1}}), 2.0);
  const Point p = project(b, Point{1, 1, 5}, 1e-12);
  EXPECT_NEAR(p[2], 3.0, 1e-10);
  EXPECT_EQ(project(b, Point{1, 1, 2}, 1e-12), (Point{1, 1, 2}));
  EXPECT_THROW(project(b, Point{0, 0, 0}, 0.0), DomainError);
}

TEST(Project, DistanceMatchesDensePlanarOracle) {
  std::mt19937_64 eng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const double r = 1.0;
    const PointSet a = random_configuration(2, 2 + trial % 7, r, 100 + trial);
    const BallBodySpec b(a, r);
    const ArcGon k = r_dual(a, r);
    for (int s = 0; s < 10; ++s) {
      const Point x = gaussian_point(eng, 2, 1.5);
      const double oracle = dense_distance_2d(k, to_vec2(x));
      // The dense scan resolves distances to about (perimeter / 2e5)^2.
      EXPECT_NEAR(distance_to(b, x, 1e-12), oracle, 1e-8) << "trial " << trial;
      EXPECT_NEAR(distance_fast(b, x.coords(), 1e-12), oracle, 1e-8) << "trial " << trial;
    }
  }
}

TEST(Project, FastAndDykstraAgreeInHigherDimensions) {
  std::mt19937_64 eng(12);
  for (std::size_t d = 3; d <= 6; ++d) {
    for (int trial = 0; trial < 25; ++trial) {
      const double r = 1.0;
      const PointSet a = random_configuration(d, 2 + trial % 10, r, 1000 * d + trial);
      const BallBodySpec b(a, r);
      for (int s = 0; s < 8; ++s) {
        const Point x = gaussian_point(eng, d, 1.0);
        const Point p1 = project(b, x, 1e-12);
        const Point p2 = project_fast(b, x.coords(), 1e-12);
        EXPECT_LE(distance(p1, p2), 1e-6);
        // Projections are members up to the tolerance.
        for (const Point& c : a) EXPECT_LE(distance(p2, c), r + 1e-9);
      }
    }
  }
}

TEST(Project, VariationalInequality) {
  // <x - p, y - p> <= 0 for every member y.
  std::mt19937_64 eng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + trial % 4;
    const PointSet a = random_configuration(d, 5, 1.0, 2000 + trial);
    const BallBodySpec b(a, 1.0);
    const Point x = gaussian_point(eng, d, 2.0);
    const Point p = project_fast(b, x.coords(), 1e-12);
    const Point diff = x - p;
    for (int s = 0; s < 200; ++s) {
      const Point y = ray_exit(b, b.inner_point(), gaussian_point(eng, d, 1.0));
      EXPECT_LE(dot(diff.coords(), (y - p).coords()), 1e-7);
    }
  }
}

TEST(RayExit, LandsOnTheBoundary) {
  std::mt19937_64 eng(14);
  const PointSet a = random_configuration(4, 6, 1.0, 77);
  const BallBodySpec b(a, 1.0);
  for (int s = 0; s < 200; ++s) {
    const Point y = ray_exit(b, b.inner_point(), gaussian_point(eng, 4, 1.0));
    double worst = -1e300;
    for (const Point& c : a) worst = std::max(worst, distance(y, c));
    EXPECT_NEAR(worst, 1.0, 1e-12);
  }
  EXPECT_THROW(ray_exit(b, b.inner_point(), Point::zero(4)), DomainError);
  EXPECT_THROW(ray_exit(b, Point{5, 5, 5, 5}, Point{1, 0, 0, 0}), DomainError);
}

TEST(SupportValue, MatchesPlanarKernelAndBall) {
  for (int trial = 0; trial < 30; ++trial) {
    const PointSet a = random_configuration(2, 2 + trial % 8, 1.0, 3000 + trial);
    const BallBodySpec b(a, 1.0);
    const ArcGon k = r_dual(a, 1.0);
    for (int i = 0; i < 24; ++i) {
      const double t = 2 * kPi * i / 24 + 0.01 * trial;
      const Vec2 u = unit_vector(t);
      EXPECT_NEAR(support_value(b, Point{u.x, u.y}, 1e-10), support(k, u), 1e-8);
    }
  }
  const BallBodySpec ball(PointSet({Point{1, 2, 3}}), 2.0);
  EXPECT_NEAR(support_value(ball, Point{0, 0, 1}, 1e-10), 5.0, 1e-9);
  EXPECT_THROW(support_value(ball, Point{0, 0, 2}, 1e-10), DomainError);
}

TEST(DefaultEpsilons, GeometricInRange) {
  for (std::size_t d = 2; d <= 6; ++d) {
    const auto eps = default_epsilons(d, 2.0);
    ASSERT_EQ(eps.size(), d + 3);
    EXPECT_NEAR(eps.front(), 0.2, 1e-15);
    EXPECT_NEAR(eps.back(), 2.0, 1e-15);
    for (std::size_t i = 2; i < eps.size(); ++i) {
      EXPECT_NEAR(eps[i] / eps[i - 1], eps[1] / eps[0], 1e-12);
    }
  }
}

TEST(SteinerFit, RejectsBadConfigurations) {
  const BallBodySpec b(PointSet({Point{0, 0}}), 1.0);
  McConfig cfg = mc(500, 1);
  EXPECT_THROW(steiner_fit(b, cfg), DomainError);
  cfg.samples = 2000;
  cfg.epsilons = {0.1, 0.2};
  EXPECT_THROW(steiner_fit(b, cfg), DomainError);
  cfg.epsilons = {0.1, 0.3, 0.2};
  EXPECT_THROW(steiner_fit(b, cfg), DomainError);
  cfg.epsilons = {};
  cfg.chunk = 0;
  EXPECT_THROW(steiner_fit(b, cfg), DomainError);
}

TEST(SteinerFit, EmptyBodyIsZero) {
  const BallBodySpec b(PointSet({Point{0, 0, 0}, Point{5, 0, 0}}), 1.0);
  const SteinerFit fit = steiner_fit(b, mc(10000, 2));
  EXPECT_EQ(fit.volumes.values, (std::vector<double>{0, 0, 0, 0}));
}

TEST(SteinerFit, PlanarBodiesAgreeWithExactMeasures) {
  int beyond3 = 0;
  int total = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const PointSet a = random_configuration(2, 2 + trial % 6, 1.0, 4000 + trial);
    const IntrinsicVolumes exact = measures(r_dual(a, 1.0));
    const SteinerFit fit = steiner_fit(BallBodySpec(a, 1.0), mc(100000, 50 + trial));
    EXPECT_EQ(fit.volumes[0], 1.0);
    for (int l = 1; l <= 2; ++l) {
      const double z = std::abs(fit.volumes[l] - exact[l]) / fit.volumes.error(l);
      EXPECT_LT(z, 4.5) << "trial " << trial << " l=" << l;
      beyond3 += z > 3.0;
      ++total;
    }
  }
  EXPECT_LE(beyond3, 1) << "of " << total;
}

TEST(SteinerFit, BallInThreeAndFourDimensions) {
  for (int d : {3, 4}) {
    const BallBodySpec b(PointSet({Point::zero(d)}), 1.0);
    const SteinerFit fit = steiner_fit(b, mc(100000, 7));
    for (int l = 1; l <= d; ++l) {
      const double expected = unit_ball_intrinsic_volume(d, l);
      EXPECT_LT(std::abs(fit.volumes[l] - expected), 4.5 * fit.volumes.error(l)) << "d=" << d << " l=" << l;
    }
    EXPECT_LT(fit.condition_number, 1e8);
  }
}

TEST(SteinerFit, ParallelAndSerialAgreeBitForBit) {
  const PointSet a = random_configuration(3, 5, 1.0, 5000);
  const BallBodySpec b(a, 1.0);
  McConfig cfg = mc(20000, 9);
  const SteinerFit par = steiner_fit(b, cfg);
  cfg.parallel = false;
  const SteinerFit ser = steiner_fit(b, cfg);
  EXPECT_EQ(par.volumes.values, ser.volumes.values);
  EXPECT_EQ(par.volumes.std_errors, ser.volumes.std_errors);
  EXPECT_EQ(par.parallel_volumes, ser.parallel_volumes);
}

TEST(SteinerFit, MonotoneUnderAddingPoints) {
  // A^r shrinks as points are added; compare at 5 sigma.
  const PointSet big = random_configuration(3, 6, 1.0, 6000);
  double prev = std::numeric_limits<double>::infinity();
  double prev_se = 0.0;
  for (std::size_t m = 1; m <= big.size(); m += 2) {
    const PointSet a(3, std::vector<Point>(big.begin(), big.begin() + m));
    const SteinerFit fit = steiner_fit(BallBodySpec(a, 1.0), mc(50000, 60 + m));
    EXPECT_LE(fit.volumes[3], prev + 5 * (prev_se + fit.volumes.error(3)));
    prev = fit.volumes[3];
    prev_se = fit.volumes.error(3);
  }
}

TEST(EstimateVolume, Ball) {
  const BallBodySpec b(PointSet({Point{0, 0, 0}}), 2.0);
  const Estimate e = estimate_volume(b, 400000, 3);
  EXPECT_LT(std::abs(e.value - 32.0 * kPi / 3.0), 4.5 * e.std_error);
  EXPECT_THROW(estimate_volume(b, 0, 3), DomainError);
}

TEST(MeanWidth, BallAndPlanarBodies) {
  for (int d = 2; d <= 5; ++d) {
    const BallBodySpec b(PointSet({Point::zero(d)}), 1.5);
    const Estimate e = mean_width_v1(b, 50, 1, 1e-10);
    EXPECT_NEAR(e.value, ball_intrinsic_volume(d, 1, 1.5), 1e-8);
  }
  const PointSet a = random_configuration(2, 4, 1.0, 7000);
  const Estimate e = mean_width_v1(BallBodySpec(a, 1.0), 4000, 2, 1e-10);
  EXPECT_LT(std::abs(e.value - measures(r_dual(a, 1.0))[1]), 4.5 * e.std_error + 1e-8);
}

TEST(BoundarySample, PointsLieOnTheBoundary) {
  for (std::size_t d = 2; d <= 5; ++d) {
    const PointSet a = random_configuration(d, 7, 1.0, 8000 + d);
    const BallBodySpec b(a, 1.0);
    const PointSet s = boundary_sample(b, 100, 4);
    ASSERT_EQ(s.size(), 100u);
    const auto [lo, hi] = body_bounds(b);
    for (const Point& p : s) {
      double worst = -1e300;
      for (const Point& c : a) worst = std::max(worst, distance(p, c));
      EXPECT_NEAR(worst, 1.0, 1e-12);
      for (std::size_t i = 0; i < d; ++i) {
        EXPECT_GE(p[i], lo[i] - 1e-12);
        EXPECT_LE(p[i], hi[i] + 1e-12);
      }
    }
  }
}

TEST(RandomUnitVector, UnitAndReproducible) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const Point u = random_unit_vector(5, 3, i);
    EXPECT_NEAR(norm(u), 1.0, 1e-14);
    EXPECT_EQ(u, random_unit_vector(5, 3, i));
  }
  EXPECT_NE(random_unit_vector(5, 3, 0), random_unit_vector(5, 4, 0));
}
