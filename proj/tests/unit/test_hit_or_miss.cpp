#include <gtest/gtest.h>

#include <omp.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ballkit/hit_or_miss.hpp"

using namespace ballkit;
using namespace ballkit::kernels;

namespace {

const auto in_unit_disk = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1] <= 1.0; };

Box square() { return {{0.0, 0.0}, {1.0, 1.0}}; }

}  // namespace

TEST(CountHits, SerialAndParallelAgreeForAnyThreadCountAndChunk) {
  for (std::uint64_t chunk : {1ull, 7ull, 4096ull, 100000ull}) {
    const SamplingPlan plan{200000, derive_seed(5, Stream::HitOrMiss, 0), chunk};
    const std::uint64_t ref = count_hits_serial(square(), plan, in_unit_disk);
    for (int threads : {1, 2, 3, 8}) {
      omp_set_num_threads(threads);
      EXPECT_EQ(count_hits_parallel(square(), plan, in_unit_disk), ref) << threads << " threads";
    }
  }
  omp_set_num_threads(1);
}

TEST(CountHits, QuarterDiskWithinThreeSigma) {
  const std::uint64_t n = 1'000'000;
  const SamplingPlan plan{n, derive_seed(6, Stream::HitOrMiss, 0)};
  const double p = double(count_hits(square(), plan, in_unit_disk, true)) / n;
  const double q = std::numbers::pi / 4.0;
  EXPECT_LT(std::abs(p - q), 3.0 * std::sqrt(q * (1 - q) / n));
}

TEST(CountHits, PartialLastChunkAndEdgeCases) {
  const SamplingPlan plan{10001, 1, 4096};
  EXPECT_EQ(plan.chunks(), 3u);
  const auto always = [](std::span<const double>) { return true; };
  EXPECT_EQ(count_hits_serial(square(), plan, always), 10001u);
  EXPECT_EQ(count_hits_parallel(square(), plan, always), 10001u);
  const SamplingPlan none{0, 1, 4096};
  EXPECT_EQ(count_hits_parallel(square(), none, always), 0u);
}

TEST(CountHits, SamplesStayInTheBox) {
  const Box box{{-2.0, 3.0, 0.5}, {-1.0, 3.5, 0.75}};
  EXPECT_DOUBLE_EQ(box.volume(), 0.125);
  const SamplingPlan plan{50000, 9};
  const auto inside = [&](std::span<const double> x) {
    for (std::size_t a = 0; a < 3; ++a) {
      if (x[a] < box.lo[a] || x[a] > box.hi[a]) return false;
    }
    return true;
  };
  EXPECT_EQ(count_hits_serial(box, plan, inside), 50000u);
}

TEST(CountHits, DistinctKeysGiveDistinctStreams) {
  const SamplingPlan a{100000, derive_seed(1, Stream::HitOrMiss, 0)};
  const SamplingPlan b{100000, derive_seed(1, Stream::HitOrMiss, 1)};
  EXPECT_NE(count_hits_serial(square(), a, in_unit_disk), count_hits_serial(square(), b, in_unit_disk));
}

TEST(MapIndexed, PreservesOrder) {
  omp_set_num_threads(4);
  const auto out = map_indexed(1000, [](std::size_t i) { return i * i; }, true);
  omp_set_num_threads(1);
  ASSERT_EQ(out.size(), 1000u);
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], i * i);
  EXPECT_EQ(map_indexed(1000, [](std::size_t i) { return i * i; }, false), out);
}

TEST(MapIndexed, RethrowsTheLowestIndexedException) {
  omp_set_num_threads(4);
  const auto f = [](std::size_t i) -> int {
    if (i == 17) throw std::runtime_error("17");
    if (i == 90) throw std::runtime_error("90");
    return 0;
  };
  try {
    map_indexed(100, f, true);
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "17");
  }
  omp_set_num_threads(1);
}

TEST(DeriveSeed, DependsOnEveryComponent) {
  const std::uint64_t base = derive_seed(1, Stream::Trials, 2);
  EXPECT_EQ(base, derive_seed(1, Stream::Trials, 2));
  EXPECT_NE(base, derive_seed(2, Stream::Trials, 2));
  EXPECT_NE(base, derive_seed(1, Stream::Packing, 2));
  EXPECT_NE(base, derive_seed(1, Stream::Trials, 3));
  EXPECT_NE(base, derive_seed(1ull << 40, Stream::Trials, 2));
  EXPECT_NE(base, derive_seed(1, Stream::Trials, 2 + (1ull << 40)));
}
