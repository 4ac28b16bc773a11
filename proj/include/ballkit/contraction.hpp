#pragma once

// Uniform contractions: P with all pairwise distances >= lambda, Q (same
// labels) with all pairwise distances <= lambda. Generators and trial
// campaigns comparing V_k(P^r) with V_k(Q^r).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ballkit/geom_core.hpp"
#include "ballkit/inequality.hpp"

namespace ballkit {

struct ContractionPair {
  PointSet p;
  PointSet q;
  double lambda = 0.0;
};

struct ExperimentResult {
  std::size_t trial = 0;
  int d = 0;
  int k = 0;
  std::size_t n = 0;
  double lambda = 0.0;
  double r = 0.0;
  std::uint64_t seed = 0;  // the trial's own seed
  double vP = 0.0;
  double vQ = 0.0;
  double stderr_p = 0.0;
  double stderr_q = 0.0;
  bool theorem_applicable = false;
  bool pass = false;
  EvalPath path = EvalPath::Exact2d;
};

/// N points at pairwise distance >= lambda (1 + 1e-12): grid nodes of
/// spacing lambda (1 + 2 jitter) in seeded random order, each moved by a
/// uniform vector of norm <= jitter lambda. jitter must lie in [0, 0.49].
PointSet gen_packing(std::size_t n, std::size_t d, double lambda, std::uint64_t seed,
                     double jitter = 0.0);

/// N points uniform in B[o, lambda / 2], so the diameter is at most lambda.
PointSet gen_cluster(std::size_t n, std::size_t d, double lambda, std::uint64_t seed);

/// min distance of P >= lambda and diameter of Q <= lambda, both exact.
/// Throws DomainError when the sizes differ.
bool verify_pair(const PointSet& p, const PointSet& q, double lambda);

struct KpOptions {
  std::optional<double> r;       // unset: 1.05 cr(P) per trial
  std::optional<double> jitter;  // unset: U(0, 0.49) per trial
  bool audit_first = true;       // run check_kp_chain on trial 0
  EvalOptions eval;              // Monte-Carlo settings for d >= 3
  bool parallel = true;          // trials run concurrently
};

struct KpRun {
  std::vector<ExperimentResult> results;  // ordered by trial
  std::vector<InequalityReport> chain;    // audit of trial 0
};

/// The pair of trial t: seeds derived from (seed, t), r from the options.
struct KpTrial {
  ContractionPair pair;
  double r = 0.0;
  std::uint64_t seed = 0;  // the trial's own seed
};
KpTrial make_kp_trial(std::size_t n, std::size_t d, double lambda, std::uint64_t seed,
                      std::size_t t, const KpOptions& opts = {});

KpRun run_kp_trials(int d, int k, std::size_t n, double lambda, std::size_t trials,
                    std::uint64_t seed, const KpOptions& opts = {});

/// d = 2, k = 1 trials for every N in n_range, concatenated in range order.
KpRun run_alexander_suite(double lambda, const std::vector<std::size_t>& n_range,
                          std::size_t trials, std::uint64_t seed, const KpOptions& opts = {});

/// The result as a "kp.trial" report row (lhs = vP, rhs = vQ).
InequalityReport to_report(const ExperimentResult& e);

}  // namespace ballkit
