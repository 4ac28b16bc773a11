// ballkit command-line front end.
//
// Exit codes: 0 every report passed, 1 some inequality failed, 2 usage,
// parse or domain error, 3 internal, convergence or fit error.

#include <omp.h>

#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "ballkit/arcgon.hpp"
#include "ballkit/ballbody.hpp"
#include "ballkit/contraction.hpp"
#include "ballkit/errors.hpp"
#include "ballkit/hit_or_miss.hpp"
#include "ballkit/inequality.hpp"
#include "ballkit/io.hpp"
#include "ballkit/report.hpp"
#include "ballkit/rng.hpp"
#include "ballkit/svg.hpp"

namespace {

using namespace ballkit;

struct Flags {
  std::string input;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 0;
  int threads = 0;
  double r = 1.0;
  int k = 1;
  int l = 1;
  int dim = 2;
  std::size_t n = 0;
  double lambda = 1.0;
  std::size_t trials = 100;
  std::uint64_t samples = 100000;
  std::vector<double> epsilons;
  std::string render;
  bool alexander = false;
  std::string suite;
  std::string kind = "uniform";
  double jitter = -1.0;
  std::string body = "dual";
  std::vector<std::size_t> n_range{2, 3, 4, 5, 8, 16, 64};
  std::size_t dirs = 360;
  std::size_t hull_samples = 4096;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* r_opt = nullptr;
  CLI::Option* n_opt = nullptr;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_seed(const Flags& f, const std::string& what) {
  if (f.seed_opt->count() == 0) throw UsageError(what + " is stochastic and needs --seed");
}

void emit(const Flags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
  } else {
    write_text(f.out, text);
  }
}

int emit_reports(const Flags& f, const std::vector<InequalityReport>& reports) {
  std::ostringstream ss;
  write_reports(ss, reports, parse_report_format(f.format));
  emit(f, ss.str());
  for (const InequalityReport& rep : reports) {
    if (!rep.pass) return 1;
  }
  return 0;
}

McConfig mc_config(const Flags& f, std::uint64_t seed) {
  McConfig cfg;
  cfg.samples = f.samples;
  cfg.seed = seed;
  cfg.epsilons = f.epsilons;
  return cfg;
}

EvalOptions eval_options(const Flags& f, std::uint64_t seed) {
  EvalOptions opts;
  opts.mc = mc_config(f, seed);
  // Trials already run concurrently; the estimators inside stay serial.
  opts.mc.parallel = false;
  opts.hull_samples = f.hull_samples;
  return opts;
}

int cmd_dual(const Flags& f) {
  const PointSet a = read_point_set(f.input);
  if (a.dim() == 2) {
    const ArcGon body = r_dual(a, f.r);
    if (body.is_empty()) std::cerr << "warning: A^r is empty (cr(A) > r)\n";
    emit(f, to_json(body) + "\n");
    return 0;
  }
  require_seed(f, "dual in dimension >= 3");
  const BallBodySpec spec(a, f.r);
  nlohmann::ordered_json j;
  j["centers"] = nlohmann::json::parse(to_json(a));
  j["radius"] = f.r;
  if (!spec.nonempty()) {
    std::cerr << "warning: A^r is empty (cr(A) > r)\n";
    j["volumes"] = nlohmann::json::parse(to_json(IntrinsicVolumes::zeros(a.dim())));
  } else {
    j["volumes"] = nlohmann::json::parse(to_json(steiner_fit(spec, mc_config(f, f.seed)).volumes));
  }
  emit(f, j.dump() + "\n");
  return 0;
}

int cmd_hull(const Flags& f) {
  const PointSet a = read_point_set(f.input);
  if (a.dim() != 2) throw UsageError("hull is available for planar point sets only");
  const ArcGonResult hull = r_hull(a, f.r, f.seed);
  if (hull.path == ConstructionPath::RayBisection) {
    std::cerr << "note: hull assembled by ray bisection (approximate)\n";
  }
  emit(f, to_json(hull.body) + "\n");
  return 0;
}

int cmd_volumes(const Flags& f) {
  const PointSet a = read_point_set(f.input);
  if (f.body != "dual" && f.body != "hull") throw UsageError("--body must be dual or hull");
  if (a.dim() != 2) require_seed(f, "volumes in dimension >= 3");
  EvalOptions opts = eval_options(f, f.seed);
  opts.mc.parallel = true;
  IntrinsicVolumes v;
  if (f.body == "dual") {
    if (a.dim() == 2) {
      v = measures(r_dual(a, f.r));
    } else {
      v = steiner_fit(BallBodySpec(a, f.r), opts.mc).volumes;
    }
  } else {
    v = dual_pair(a, f.r, opts).hull;
  }
  emit(f, to_json(v) + "\n");
  return 0;
}

KpOptions kp_options(const Flags& f) {
  KpOptions opts;
  if (f.r_opt->count() > 0) opts.r = f.r;
  if (f.jitter >= 0.0) opts.jitter = f.jitter;
  opts.eval = eval_options(f, f.seed);
  return opts;
}

// Points per random configuration: --n when given, else U{2..10}.
std::size_t config_size(const Flags& f, std::uint64_t seed) {
  if (f.n_opt->count() > 0) return f.n;
  Engine eng = substream(seed, Stream::Configuration, 1);
  return std::uniform_int_distribution<std::size_t>(2, 10)(eng);
}

std::vector<InequalityReport> run_trials(
    const Flags& f, const std::function<std::vector<InequalityReport>(const PointSet&, std::uint64_t)>& check) {
  if (!f.input.empty()) {
    const PointSet a = read_point_set(f.input);
    return check(a, f.seed);
  }
  require_seed(f, "check " + f.suite);
  if (f.dim < 1) throw UsageError("--dim must be positive");
  const auto per_trial = kernels::map_indexed(
      f.trials,
      [&](std::size_t t) {
        const std::uint64_t ts = derive_seed(f.seed, Stream::Trials, t);
        const PointSet a = random_configuration(static_cast<std::size_t>(f.dim), config_size(f, ts),
                                                f.r, ts);
        auto reps = check(a, ts);
        for (InequalityReport& rep : reps) rep.params.trial = t;
        return reps;
      },
      true);
  std::vector<InequalityReport> out;
  for (const auto& reps : per_trial) out.insert(out.end(), reps.begin(), reps.end());
  return out;
}

int cmd_check(const Flags& f) {
  const std::string& s = f.suite;
  std::vector<InequalityReport> reports;
  if (s == "bs") {
    reports = run_trials(f, [&](const PointSet& a, std::uint64_t seed) {
      return std::vector{check_blaschke_santalo(a, f.r, f.k, f.l, eval_options(f, seed))};
    });
  } else if (s == "product") {
    reports = run_trials(f, [&](const PointSet& a, std::uint64_t seed) {
      return std::vector{check_volume_product(a, f.r, f.k, eval_options(f, seed))};
    });
  } else if (s == "lemma") {
    reports = run_trials(f, [&](const PointSet& a, std::uint64_t seed) {
      return std::vector{check_minkowski_identity(a, f.r, f.dirs, eval_options(f, seed))};
    });
  } else if (s == "alexandrov") {
    reports = run_trials(f, [&](const PointSet& a, std::uint64_t seed) {
      const EvalOptions opts = eval_options(f, seed);
      return std::vector{check_alexandrov(dual_pair(a, f.r, opts).dual, f.k, f.l),
                         check_alexandrov(a, f.r, f.k, f.l, opts)};
    });
  } else if (s == "bm") {
    reports = run_trials(f, [&](const PointSet& a, std::uint64_t seed) {
      return std::vector{check_bm_chain(a, f.r, f.k, eval_options(f, seed))};
    });
  } else if (s == "jung") {
    if (!f.input.empty()) {
      reports.push_back(check_jung(read_point_set(f.input)));
    } else {
      // The regular simplex (the equality case) first, then random sets in
      // the unit cube.
      const auto d = static_cast<std::size_t>(f.dim);
      if (f.n_opt->count() == 0 || f.n == d + 1) reports.push_back(check_jung(regular_simplex(d)));
      // Without --seed only the deterministic simplex row is produced.
      const std::size_t trials = f.seed_opt->count() > 0 ? f.trials : 0;
      const std::size_t n = f.n_opt->count() > 0 ? f.n : d + 1;
      if (n < 2) throw UsageError("check jung needs --n >= 2");
      for (std::size_t t = 0; t < trials; ++t) {
        Engine eng = substream(f.seed, Stream::Trials, t);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::vector<Point> pts;
        for (std::size_t i = 0; i < n; ++i) {
          std::vector<double> c(d);
          for (double& x : c) x = unif(eng);
          pts.emplace_back(std::move(c));
        }
        InequalityReport rep = check_jung(PointSet(d, std::move(pts)));
        rep.params.trial = t;
        reports.push_back(std::move(rep));
      }
    }
  } else if (s == "kp-chain") {
    require_seed(f, "check kp-chain");
    const auto d = static_cast<std::size_t>(f.dim);
    const std::size_t n = f.n_opt->count() > 0 ? f.n : 5;
    const auto per_trial = kernels::map_indexed(
        f.trials,
        [&](std::size_t t) {
          const KpTrial tr = make_kp_trial(n, d, f.lambda, f.seed, t, kp_options(f));
          auto reps = check_kp_chain(tr.pair.p, tr.pair.q, f.lambda, tr.r, f.k,
                                     eval_options(f, tr.seed), tr.seed);
          for (InequalityReport& rep : reps) rep.params.trial = t;
          return reps;
        },
        true);
    for (const auto& reps : per_trial) reports.insert(reports.end(), reps.begin(), reps.end());
  } else {
    throw UsageError("unknown suite '" + s + "'");
  }
  return emit_reports(f, reports);
}

int cmd_kp(const Flags& f) {
  require_seed(f, "kp");
  const KpOptions opts = kp_options(f);
  KpRun run;
  if (f.alexander) {
    run = run_alexander_suite(f.lambda, f.n_range, f.trials, f.seed, opts);
  } else {
    if (f.dim < 2) throw UsageError("kp needs --dim >= 2");
    const std::size_t n = f.n_opt->count() > 0 ? f.n : 5;
    if (n < 2) throw UsageError("kp needs --n >= 2");
    run = run_kp_trials(f.dim, f.k, n, f.lambda, f.trials, f.seed, opts);
  }
  std::vector<InequalityReport> reports;
  for (const ExperimentResult& e : run.results) reports.push_back(to_report(e));
  reports.insert(reports.end(), run.chain.begin(), run.chain.end());

  if (!f.render.empty()) {
    if (f.alexander || f.dim != 2) throw UsageError("--render needs a planar kp run");
    const KpTrial tr = make_kp_trial(run.results.front().n, 2, f.lambda, f.seed, 0, opts);
    SvgScene scene;
    scene.add_body(r_dual(tr.pair.p, tr.r), "#1f77b4", "#1f77b4");
    scene.add_body(r_dual(tr.pair.q, tr.r), "#d62728", "#d62728");
    scene.add_points(tr.pair.p, "#1f77b4");
    scene.add_points(tr.pair.q, "#d62728");
    write_text(f.render, scene.render());
  }
  return emit_reports(f, reports);
}

int cmd_gen(const Flags& f) {
  const auto d = static_cast<std::size_t>(f.dim);
  const std::size_t n = f.n_opt->count() > 0 ? f.n : 5;
  PointSet s = [&] {
    if (f.kind == "packing") {
      require_seed(f, "gen packing");
      return gen_packing(n, d, f.lambda, f.seed, f.jitter >= 0.0 ? f.jitter : 0.0);
    }
    if (f.kind == "cluster") {
      require_seed(f, "gen cluster");
      return gen_cluster(n, d, f.lambda, f.seed);
    }
    if (f.kind == "circle") return circle_sample(n, f.r);
    if (f.kind == "simplex") return regular_simplex(d);
    if (f.kind == "uniform") {
      require_seed(f, "gen uniform");
      return random_configuration(d, n, f.r, f.seed);
    }
    throw UsageError("unknown --kind '" + f.kind + "'");
  }();
  emit(f, to_json(s) + "\n");
  return 0;
}

int cmd_render(const Flags& f) {
  const PointSet a = read_point_set(f.input);
  if (a.dim() != 2) throw UsageError("render needs a planar point set");
  SvgScene scene;
  const ArcGon dual = r_dual(a, f.r);
  scene.add_body(dual, "#1f77b4", "#1f77b4");
  if (circumradius(a) <= f.r * (1.0 + kGeomTol)) {
    scene.add_body(r_hull(a, f.r, f.seed).body, "#2ca02c", "#2ca02c");
  }
  scene.add_points(a, "#000000");
  emit(f, scene.render());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ballkit: r-ball bodies, intrinsic volumes and their inequalities"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--out", f.out, "output file (default: stdout)");
  app.add_option("--format", f.format, "report format")->check(CLI::IsMember({"csv", "json"}));
  f.seed_opt = app.add_option("--seed", f.seed, "seed for every random choice");
  app.add_option("--threads", f.threads, "worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
  app.add_option("--input", f.input, "PointSet JSON file");
  f.r_opt = app.add_option("--r", f.r, "ball radius r")->check(CLI::PositiveNumber);
  app.add_option("--k", f.k, "intrinsic volume index k");
  app.add_option("--l", f.l, "intrinsic radius index l");
  app.add_option("--dim", f.dim, "dimension d")->check(CLI::PositiveNumber);
  f.n_opt = app.add_option("--n", f.n, "number of points");
  app.add_option("--lambda", f.lambda, "separating value lambda")->check(CLI::PositiveNumber);
  app.add_option("--trials", f.trials, "number of trials");
  app.add_option("--samples", f.samples, "Monte-Carlo samples per epsilon");
  app.add_option("--epsilons", f.epsilons, "Steiner-fit epsilons a,b,c")->delimiter(',');
  app.add_option("--hull-samples", f.hull_samples, "boundary points standing in for A^r (d >= 3)");

  auto* dual = app.add_subcommand("dual", "A^r of a point set");
  auto* hull = app.add_subcommand("hull", "conv_r(A) of a planar point set");
  auto* volumes = app.add_subcommand("volumes", "intrinsic volumes of A^r or conv_r(A)");
  volumes->add_option("--body", f.body, "dual or hull")->check(CLI::IsMember({"dual", "hull"}));
  auto* check = app.add_subcommand("check", "run an inequality suite");
  check->add_option("suite", f.suite, "bs, product, lemma, jung, alexandrov, bm, kp-chain")
      ->required()
      ->check(CLI::IsMember({"bs", "product", "lemma", "jung", "alexandrov", "bm", "kp-chain"}));
  check->add_option("--dirs", f.dirs, "directions for the support identity");
  check->add_option("--jitter", f.jitter, "packing jitter in [0, 0.49] (default random)");
  auto* kp = app.add_subcommand("kp", "uniform-contraction trials");
  kp->add_flag("--alexander", f.alexander, "d = 2, k = 1 sweep over --n-range");
  kp->add_option("--n-range", f.n_range, "N values for --alexander")->delimiter(',');
  kp->add_option("--render", f.render, "SVG of trial 0 (d = 2)");
  kp->add_option("--jitter", f.jitter, "packing jitter in [0, 0.49] (default random)");
  auto* gen = app.add_subcommand("gen", "generate a point set");
  gen->add_option("--kind", f.kind, "packing, cluster, circle, simplex or uniform")
      ->check(CLI::IsMember({"packing", "cluster", "circle", "simplex", "uniform"}));
  gen->add_option("--jitter", f.jitter, "packing jitter in [0, 0.49]");
  auto* render = app.add_subcommand("render", "SVG of A, A^r and conv_r(A) for planar A");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (f.threads > 0) omp_set_num_threads(f.threads);

  try {
    if (*dual) return cmd_dual(f);
    if (*hull) return cmd_hull(f);
    if (*volumes) return cmd_volumes(f);
    if (*check) return cmd_check(f);
    if (*kp) return cmd_kp(f);
    if (*gen) return cmd_gen(f);
    if (*render) return cmd_render(f);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
