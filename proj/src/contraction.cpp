#include "ballkit/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ballkit/arcgon.hpp"
#include "ballkit/ballbody.hpp"
#include "ballkit/errors.hpp"
#include "ballkit/hit_or_miss.hpp"
#include "ballkit/rng.hpp"

namespace ballkit {

namespace {

std::vector<double> uniform_in_ball(Engine& eng, std::size_t d, double radius) {
  std::uniform_real_distribution<double> unif(-radius, radius);
  std::vector<double> x(d);
  for (;;) {
    for (double& c : x) c = unif(eng);
    if (dot(x, x) <= radius * radius) return x;
  }
}

}  // namespace

PointSet gen_packing(std::size_t n, std::size_t d, double lambda, std::uint64_t seed,
                     double jitter) {
  if (n < 1 || d < 1) throw DomainError("gen_packing needs n >= 1 and d >= 1");
  if (!(lambda > 0.0)) throw DomainError("gen_packing: lambda must be positive");
  if (!(jitter >= 0.0 && jitter <= 0.49)) throw DomainError("gen_packing: jitter must lie in [0, 0.49]");
  std::size_t m = 1;
  while (std::pow(static_cast<double>(m), static_cast<double>(d)) < static_cast<double>(n)) ++m;
  std::size_t nodes = 1;
  for (std::size_t a = 0; a < d; ++a) nodes *= m;
  std::vector<std::size_t> order(nodes);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Engine eng = substream(seed, Stream::Packing, 0);
  std::shuffle(order.begin(), order.end(), eng);

  // Perturbations of norm <= jitter lambda cost at most 2 jitter lambda of
  // the spacing, so every pair stays at least lambda (1 + 1e-9) apart.
  const double spacing = lambda * (1.0 + 2.0 * jitter + 1e-9);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x(d);
    std::size_t code = order[i];
    for (std::size_t a = 0; a < d; ++a) {
      x[a] = spacing * static_cast<double>(code % m);
      code /= m;
    }
    if (jitter > 0.0) {
      const std::vector<double> v = uniform_in_ball(eng, d, jitter * lambda);
      for (std::size_t a = 0; a < d; ++a) x[a] += v[a];
    }
    pts.emplace_back(std::move(x));
  }
  PointSet out(d, std::move(pts));
  if (n > 1 && !(min_pairwise_distance(out) >= lambda * (1.0 + 1e-12))) {
    throw InternalError("gen_packing produced points closer than lambda");
  }
  return out;
}

PointSet gen_cluster(std::size_t n, std::size_t d, double lambda, std::uint64_t seed) {
  if (n < 1 || d < 1) throw DomainError("gen_cluster needs n >= 1 and d >= 1");
  if (!(lambda > 0.0)) throw DomainError("gen_cluster: lambda must be positive");
  Engine eng = substream(seed, Stream::Cluster, 0);
  const double radius = 0.5 * lambda * (1.0 - 1e-12);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.emplace_back(uniform_in_ball(eng, d, radius));
  PointSet out(d, std::move(pts));
  if (!(diameter(out) <= lambda)) throw InternalError("gen_cluster produced a set wider than lambda");
  return out;
}

bool verify_pair(const PointSet& p, const PointSet& q, double lambda) {
  if (p.size() != q.size()) throw DomainError("P and Q must have the same number of points");
  if (p.dim() != q.dim()) throw DomainError("P and Q must have the same dimension");
  if (p.size() == 1) return true;
  return min_pairwise_distance(p) >= lambda && diameter(q) <= lambda;
}

namespace {

Estimate dual_volume(const PointSet& s, double r, int k, EvalPath path, const McConfig& cfg) {
  if (path == EvalPath::Exact2d) return {measures(r_dual(s, r))[k], 0.0};
  const BallBodySpec body(s, r);
  // Empty or single-point bodies have V_k = 0 for k >= 1.
  if (!body.nonempty() || body.circumradius() >= r * (1.0 - kGeomTol)) return {0.0, 0.0};
  const IntrinsicVolumes v = steiner_fit(body, cfg).volumes;
  return {v[k], v.error(k)};
}

}  // namespace

KpTrial make_kp_trial(std::size_t n, std::size_t d, double lambda, std::uint64_t seed,
                      std::size_t t, const KpOptions& opts) {
  const std::uint64_t ts = derive_seed(seed, Stream::Trials, t);
  Engine eng(ts);
  std::uniform_real_distribution<double> unif(0.0, 0.49);
  const double jitter = opts.jitter ? *opts.jitter : unif(eng);
  PointSet p = gen_packing(n, d, lambda, derive_seed(ts, Stream::Packing, 0), jitter);
  PointSet q = gen_cluster(n, d, lambda, derive_seed(ts, Stream::Cluster, 0));
  double r = 0.0;
  if (opts.r) {
    r = *opts.r;
  } else {
    const double cr = circumradius(p);
    r = cr > 0.0 ? 1.05 * cr : lambda;
  }
  return {{std::move(p), std::move(q), lambda}, r, ts};
}

KpRun run_kp_trials(int d, int k, std::size_t n, double lambda, std::size_t trials,
                    std::uint64_t seed, const KpOptions& opts) {
  if (d < 2) throw DomainError("run_kp_trials needs d >= 2");
  if (k < 1 || k > d) throw DomainError("run_kp_trials needs 1 <= k <= d");
  if (n < 1) throw DomainError("run_kp_trials needs n >= 1");
  if (!(lambda > 0.0)) throw DomainError("run_kp_trials: lambda must be positive");
  if (trials < 1) throw DomainError("run_kp_trials needs at least one trial");
  if (opts.r && !(*opts.r > 0.0)) throw DomainError("run_kp_trials: r must be positive");
  const auto dim = static_cast<std::size_t>(d);
  const EvalPath path =
      opts.eval.path.value_or(d == 2 ? EvalPath::Exact2d : EvalPath::MonteCarlo);
  if (path == EvalPath::Exact2d && d != 2) throw DomainError("the exact path needs d = 2");
  const bool applicable = static_cast<double>(n) >= kp_threshold(d);

  KpRun run;
  run.results = kernels::map_indexed(
      trials,
      [&](std::size_t t) {
        const KpTrial tr = make_kp_trial(n, dim, lambda, seed, t, opts);
        McConfig cfg = opts.eval.mc;
        cfg.seed = derive_seed(tr.seed, Stream::HitOrMiss, 0);
        const Estimate vp = dual_volume(tr.pair.p, tr.r, k, path, cfg);
        cfg.seed = derive_seed(tr.seed, Stream::HitOrMiss, 1);
        const Estimate vq = dual_volume(tr.pair.q, tr.r, k, path, cfg);
        ExperimentResult e;
        e.trial = t;
        e.d = d;
        e.k = k;
        e.n = n;
        e.lambda = lambda;
        e.r = tr.r;
        e.seed = tr.seed;
        e.vP = vp.value;
        e.vQ = vq.value;
        e.stderr_p = vp.std_error;
        e.stderr_q = vq.std_error;
        e.theorem_applicable = applicable;
        e.pass = within_margin(vp.value, vq.value, vp.std_error, vq.std_error);
        e.path = path;
        return e;
      },
      opts.parallel);

  if (opts.audit_first) {
    const KpTrial tr = make_kp_trial(n, dim, lambda, seed, 0, opts);
    EvalOptions eval = opts.eval;
    eval.path = path;
    eval.mc.seed = derive_seed(tr.seed, Stream::HitOrMiss, 2);
    run.chain = check_kp_chain(tr.pair.p, tr.pair.q, lambda, tr.r, k, eval, tr.seed);
    for (InequalityReport& rep : run.chain) rep.params.trial = 0;
  }
  return run;
}

KpRun run_alexander_suite(double lambda, const std::vector<std::size_t>& n_range,
                          std::size_t trials, std::uint64_t seed, const KpOptions& opts) {
  KpRun all;
  for (std::size_t n : n_range) {
    KpRun run = run_kp_trials(2, 1, n, lambda, trials, derive_seed(seed, Stream::Trials, n), opts);
    all.results.insert(all.results.end(), run.results.begin(), run.results.end());
    all.chain.insert(all.chain.end(), run.chain.begin(), run.chain.end());
  }
  return all;
}

InequalityReport to_report(const ExperimentResult& e) {
  ReportParams params;
  params.trial = e.trial;
  params.d = e.d;
  params.k = e.k;
  params.r = e.r;
  params.lambda = e.lambda;
  params.n = e.n;
  params.seed = e.seed;
  InequalityReport rep = make_report("kp.trial", params, e.vP, e.vQ, e.stderr_p, e.stderr_q, e.path);
  rep.vP = e.vP;
  rep.vQ = e.vQ;
  rep.theorem_applicable = e.theorem_applicable;
  return rep;
}

}  // namespace ballkit
