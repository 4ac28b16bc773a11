#pragma once

// Chunked hit-or-miss counting. Chunk c always draws from the substream
// derived from (key, c), and hit counts are integers, so the OpenMP kernel
// returns exactly what the serial reference returns for any thread count.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <random>
#include <span>
#include <vector>

#include "ballkit/rng.hpp"

namespace ballkit::kernels {

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  std::size_t dim() const { return lo.size(); }
  double volume() const {
    double v = 1.0;
    for (std::size_t a = 0; a < lo.size(); ++a) v *= hi[a] - lo[a];
    return v;
  }
};

struct SamplingPlan {
  std::uint64_t samples = 0;
  std::uint64_t key = 0;  // from derive_seed(seed, Stream::HitOrMiss, job)
  std::uint64_t chunk = 4096;

  std::uint64_t chunks() const { return (samples + chunk - 1) / chunk; }
};

template <class Predicate>
std::uint64_t count_chunk(const Box& box, const SamplingPlan& plan, std::uint64_t c,
                          const Predicate& inside) {
  Engine eng(derive_seed(plan.key, Stream::HitOrMiss, c));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::uint64_t begin = c * plan.chunk;
  const std::uint64_t end = std::min(plan.samples, begin + plan.chunk);
  std::vector<double> x(box.dim());
  std::uint64_t hits = 0;
  for (std::uint64_t i = begin; i < end; ++i) {
    for (std::size_t a = 0; a < x.size(); ++a) x[a] = box.lo[a] + (box.hi[a] - box.lo[a]) * unit(eng);
    if (inside(std::span<const double>(x))) ++hits;
  }
  return hits;
}

/// Reference implementation: chunks evaluated in index order on one thread.
template <class Predicate>
std::uint64_t count_hits_serial(const Box& box, const SamplingPlan& plan, const Predicate& inside) {
  std::uint64_t hits = 0;
  for (std::uint64_t c = 0; c < plan.chunks(); ++c) hits += count_chunk(box, plan, c, inside);
  return hits;
}

/// OpenMP kernel over chunks. `inside` must be safe to call concurrently.
template <class Predicate>
std::uint64_t count_hits_parallel(const Box& box, const SamplingPlan& plan, const Predicate& inside) {
  const auto n = static_cast<long long>(plan.chunks());
  std::uint64_t hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(dynamic, 1)
  for (long long c = 0; c < n; ++c) hits += count_chunk(box, plan, static_cast<std::uint64_t>(c), inside);
  return hits;
}

template <class Predicate>
std::uint64_t count_hits(const Box& box, const SamplingPlan& plan, const Predicate& inside,
                         bool parallel) {
  return parallel ? count_hits_parallel(box, plan, inside) : count_hits_serial(box, plan, inside);
}

/// Evaluates f(i) for i in [0, n) in parallel and returns the values in
/// index order, for reductions whose result must not depend on scheduling.
template <class F>
auto map_indexed(std::size_t n, const F& f, bool parallel) {
  using T = decltype(f(std::size_t{0}));
  std::vector<T> out(n);
  if (parallel) {
    // Exceptions may not leave an OpenMP region; the first one (by index)
    // is rethrown after the loop.
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        out[i] = f(static_cast<std::size_t>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
  }
  return out;
}

}  // namespace ballkit::kernels
