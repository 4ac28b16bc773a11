// Serial reference against the OpenMP kernel for chunked hit-or-miss
// counting, on the distance-to-body predicate used by the Steiner fit.

#include <benchmark/benchmark.h>

#include <cmath>

#include "ballkit/ballbody.hpp"
#include "ballkit/contraction.hpp"
#include "ballkit/hit_or_miss.hpp"
#include "ballkit/rng.hpp"

namespace {

using namespace ballkit;

struct Fixture {
  BallBodySpec body;
  kernels::Box box;
  double eps;
};

Fixture make_fixture(std::size_t d) {
  const PointSet p = gen_cluster(8, d, 1.0, 3);
  BallBodySpec body(p, 1.0);
  const double eps = 0.3;
  auto [lo, hi] = body_bounds(body);
  for (std::size_t a = 0; a < d; ++a) {
    lo[a] -= eps;
    hi[a] += eps;
  }
  return {std::move(body), {lo, hi}, eps};
}

template <bool Parallel>
void BM_CountHits(benchmark::State& state) {
  const Fixture fx = make_fixture(static_cast<std::size_t>(state.range(0)));
  const kernels::SamplingPlan plan{static_cast<std::uint64_t>(state.range(1)),
                                   derive_seed(11, Stream::HitOrMiss, 0), 4096};
  const auto inside = [&](std::span<const double> x) {
    return distance_fast(fx.body, x, 1e-8) <= fx.eps;
  };
  std::uint64_t hits = 0;
  for (auto _ : state) {
    hits = Parallel ? kernels::count_hits_parallel(fx.box, plan, inside)
                    : kernels::count_hits_serial(fx.box, plan, inside);
    benchmark::DoNotOptimize(hits);
  }
  state.counters["hit_rate"] = static_cast<double>(hits) / static_cast<double>(plan.samples);
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

}  // namespace

BENCHMARK_TEMPLATE(BM_CountHits, false)->Args({2, 1 << 18})->Args({3, 1 << 18})->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_CountHits, true)->Args({2, 1 << 18})->Args({3, 1 << 18})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
