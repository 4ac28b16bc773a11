// Acceptance checks: one PASS/FAIL line per criterion. Oracles (closed forms,
// brute-force geometry) are computed here, independent of the library paths
// they check. Exit status is nonzero when any criterion fails.

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ballkit/arcgon.hpp"
#include "ballkit/ballbody.hpp"
#include "ballkit/contraction.hpp"
#include "ballkit/hit_or_miss.hpp"
#include "ballkit/inequality.hpp"
#include "ballkit/rng.hpp"

#ifndef BALLKIT_CLI_PATH
#error "BALLKIT_CLI_PATH must name the ballkit executable"
#endif

using namespace ballkit;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Closed forms via tgamma, independent of the library's log-Gamma path.
double unit_ball_volume(int d) { return std::pow(kPi, d / 2.0) / std::tgamma(1.0 + d / 2.0); }

double ball_v(int d, int l, double radius) {
  const double binom = std::tgamma(d + 1.0) / (std::tgamma(l + 1.0) * std::tgamma(d - l + 1.0));
  return binom * unit_ball_volume(d) / unit_ball_volume(d - l) * std::pow(radius, l);
}

double brute_diameter(const PointSet& s) {
  double best = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      double sq = 0.0;
      for (std::size_t a = 0; a < s.dim(); ++a) sq += (s[i][a] - s[j][a]) * (s[i][a] - s[j][a]);
      best = std::max(best, std::sqrt(sq));
    }
  }
  return best;
}

Outcome ball_anchor() {
  Outcome out;
  double slowest = 0.0;
  double worst_z = 0.0;
  double worst_rel = 0.0;
  for (int d : {2, 3}) {
    for (double radius : {0.5, 1.0, 2.0}) {
      const Clock clock;
      const BallBodySpec ball(PointSet({Point::zero(static_cast<std::size_t>(d))}), radius);
      McConfig cfg;
      cfg.samples = 1'000'000;
      cfg.seed = derive_seed(kSeed, Stream::Trials, static_cast<std::uint64_t>(d * 10 + radius * 2));
      const IntrinsicVolumes v = steiner_fit(ball, cfg).volumes;
      const double secs = clock.seconds();
      slowest = std::max(slowest, secs);
      if (secs > 60.0) {
        out.pass = false;
        out.detail += fmt::format(" [d={} R={} took {:.1f}s]", d, radius, secs);
      }
      for (int l = 1; l <= d; ++l) {
        const double exact = ball_v(d, l, radius);
        const double z = std::abs(v[l] - exact) / v.error(l);
        const double rel = std::abs(v[l] - exact) / exact;
        worst_z = std::max(worst_z, z);
        worst_rel = std::max(worst_rel, rel);
        if (!(z <= 3.0 && rel <= 0.05)) {
          out.pass = false;
          out.detail += fmt::format(" [d={} R={} l={}: {} vs {} z={:.2f}]", d, radius, l, v[l], exact, z);
        }
      }
    }
  }
  out.detail = fmt::format("worst z={:.2f}, worst rel={:.2e}, slowest body {:.1f}s", worst_z,
                           worst_rel, slowest) + out.detail;
  return out;
}

Outcome planar_mc_vs_exact() {
  Outcome out;
  const Clock clock;
  double worst_z = 0.0;
  int beyond = 0;
  for (std::size_t t = 0; t < 50; ++t) {
    const std::uint64_t ts = derive_seed(kSeed, Stream::Trials, 1000 + t);
    const PointSet a = random_configuration(2, 1 + t % 10, 1.0, ts);
    const IntrinsicVolumes exact = measures(r_dual(a, 1.0));
    McConfig cfg;
    cfg.samples = 1'000'000;
    cfg.seed = ts;
    const IntrinsicVolumes v = steiner_fit(BallBodySpec(a, 1.0), cfg).volumes;
    for (int l = 1; l <= 2; ++l) {
      const double z = std::abs(v[l] - exact[l]) / v.error(l);
      worst_z = std::max(worst_z, z);
      if (z > 3.0) {
        ++beyond;
        out.pass = false;
        out.detail += fmt::format(" [body {} N={} l={}: {} vs {} z={:.2f}]", t, a.size(), l, v[l],
                                  exact[l], z);
      }
    }
  }
  const double secs = clock.seconds();
  if (secs > 600.0) out.pass = false;
  out.detail = fmt::format("100 comparisons, {} beyond 3 stderr, worst z={:.2f}, {:.1f}s", beyond,
                           worst_z, secs) + out.detail;
  return out;
}

Outcome support_identity() {
  Outcome out;
  double worst = 0.0;
  int failures = 0;
  for (std::size_t t = 0; t < 1000; ++t) {
    const std::uint64_t ts = derive_seed(kSeed, Stream::Trials, 2000 + t);
    const double r = 0.5 + 1.5 * double(t) / 1000.0;
    const PointSet a = random_configuration(2, 2 + t % 9, r, ts);
    const InequalityReport rep = check_minkowski_identity(a, r, 360);
    worst = std::max(worst, rep.lhs / r);
    if (!(rep.lhs <= 1e-7 * r)) ++failures;
  }
  out.pass = failures == 0;
  out.detail = fmt::format("1000 configurations x 360 directions, max deviation {:.2e} r, {} failures",
                           worst, failures);
  return out;
}

Outcome blaschke_santalo() {
  Outcome out;
  int violations = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < 1000; ++t) {
    const std::uint64_t ts = derive_seed(kSeed, Stream::Trials, 3000 + t);
    const double r = 0.5 + 1.5 * double(t) / 1000.0;
    const PointSet a = random_configuration(2, 2 + t % 9, r, ts);
    for (auto [k, l] : {std::pair{1, 1}, {1, 2}, {2, 2}}) {
      const InequalityReport rep = check_blaschke_santalo(a, r, k, l);
      min_slack = std::min(min_slack, rep.slack());
      if (!rep.pass) ++violations;
    }
  }
  out.pass = violations == 0;
  std::string refinement;
  // For k = l = 1 the planar bound is an identity (the perimeters of A^r and
  // conv_r A add up to 2 pi r), so its slack is rounding noise at every N and
  // cannot decrease; it is held to equality instead.
  double identity_err = 0.0;
  for (std::size_t n : {45, 90, 180, 360, 720}) {
    const InequalityReport rep = check_blaschke_santalo(circle_sample(n, 0.5), 1.0, 1, 1);
    identity_err = std::max(identity_err, std::abs(rep.slack()) / rep.rhs);
  }
  if (!(identity_err <= 1e-9)) out.pass = false;
  refinement += fmt::format(" (1,1): identity, max rel err {:.1e};", identity_err);
  for (auto [k, l] : {std::pair{1, 2}, {2, 2}}) {
    double prev = std::numeric_limits<double>::infinity();
    std::vector<std::string> steps;
    for (std::size_t n : {45, 90, 180, 360, 720}) {
      const InequalityReport rep = check_blaschke_santalo(circle_sample(n, 0.5), 1.0, k, l);
      const double rel = rep.slack() / rep.rhs;
      if (!(rel < prev)) out.pass = false;
      prev = rel;
      steps.push_back(fmt::format("{:.2e}", rel));
    }
    if (!(prev < 1e-3)) out.pass = false;
    refinement += fmt::format(" ({},{}): {}", k, l, fmt::join(steps, " > "));
  }
  out.detail = fmt::format("3000 checks, {} violations, min slack {:.3e}; circle refinement{}",
                           violations, min_slack, refinement);
  return out;
}

Outcome volume_product() {
  Outcome out;
  const double r = 1.0;
  for (int k = 1; k <= 2; ++k) {
    double best = -1.0;
    int best_i = 0;
    for (int i = 1; i <= 9; ++i) {
      const double x = 0.1 * i * r;
      const InequalityReport rep = check_volume_product(ArcGon::full_disk({{0, 0}, x}), r, k);
      const double oracle = std::pow(x * (r - x), k) * kPi * kPi;  // V_1(B_1) = V_2(B_1) = pi
      if (std::abs(rep.lhs - oracle) > 1e-12 * oracle) out.pass = false;
      if (rep.lhs > best) {
        best = rep.lhs;
        best_i = i;
      }
    }
    if (best_i != 5) out.pass = false;
    const InequalityReport eq = check_volume_product(ArcGon::full_disk({{0, 0}, r / 2}), r, k);
    const double bound = std::pow(r / 2, 2 * k) * kPi * kPi;
    const double rel = std::abs(eq.lhs - bound) / bound;
    if (!(rel <= 1e-9)) out.pass = false;
    out.detail += fmt::format("k={}: sweep max at x={:.1f}r, equality rel err {:.1e}; ", k,
                              0.1 * best_i, rel);
  }
  int exceed = 0;
  double max_ratio = 0.0;
  for (std::size_t t = 0; t < 1000; ++t) {
    const std::uint64_t ts = derive_seed(kSeed, Stream::Trials, 5000 + t);
    const PointSet a = random_configuration(2, 1 + t % 10, r, ts);
    // Alternate between A^r and conv_r(A): both are r-ball bodies.
    const ArcGon body = t % 2 ? r_dual(a, r) : r_hull(a, r).body;
    for (int k = 1; k <= 2; ++k) {
      const InequalityReport rep = check_volume_product(body, r, k);
      const double bound = std::pow(r / 2, 2 * k) * kPi * kPi;
      max_ratio = std::max(max_ratio, rep.lhs / bound);
      if (!rep.pass) ++exceed;
    }
  }
  if (exceed) out.pass = false;
  out.detail += fmt::format("1000 random bodies: {} exceedances, max ratio to bound {:.6f}", exceed,
                            max_ratio);
  return out;
}

Outcome contraction_chain() {
  Outcome out;
  const Clock clock;
  const double lambda = 1.0;
  const double anchor13 = (2.0 - (std::sqrt(5.0) - 1.0) / 2.0) * kPi;
  const double anchor15 = (2.0 - 1.0 / std::sqrt(3.0)) * kPi;
  std::size_t chains = 0;
  int link_failures = 0;
  int anchor_failures = 0;
  for (std::size_t n : {5, 8, 16, 64}) {
    for (int variant = 0; variant < 2; ++variant) {
      KpOptions opts;
      if (variant == 1) opts.r = 2.0;
      const std::uint64_t seed = derive_seed(kSeed, Stream::Trials, 6000 + 10 * n + variant);
      const auto results = kernels::map_indexed(
          1000,
          [&](std::size_t t) {
            const KpTrial tr = make_kp_trial(n, 2, lambda, seed, t, opts);
            return check_kp_chain(tr.pair.p, tr.pair.q, lambda, tr.r, 1, {}, tr.seed);
          },
          true);
      for (const auto& chain : results) {
        ++chains;
        for (const InequalityReport& rep : chain) {
          if (!rep.pass) {
            ++link_failures;
            if (link_failures <= 5) out.detail += fmt::format(" [N={} {} failed]", n, rep.name);
          }
        }
        if (n == 5 && variant == 1) {
          const InequalityReport& fin = chain.back();
          if (!(*fin.vP <= anchor13 + 1e-9 && anchor15 <= *fin.vQ + 1e-9)) ++anchor_failures;
        }
      }
    }
  }
  // The anchors must also be the values the chain reports.
  {
    KpOptions opts;
    opts.r = 2.0;
    const KpTrial tr = make_kp_trial(5, 2, lambda, kSeed, 0, opts);
    for (const InequalityReport& rep : check_kp_chain(tr.pair.p, tr.pair.q, lambda, 2.0, 1)) {
      if (rep.name == "kp.packing_bound" && std::abs(rep.rhs - anchor13) > 1e-12) ++anchor_failures;
      if (rep.name == "kp.jung_bound" && std::abs(rep.lhs - anchor15) > 1e-12) ++anchor_failures;
    }
  }
  const double secs2 = clock.seconds();

  int mc_failures = 0;
  std::size_t mc_reports = 0;
  double worst_z = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 3; ++k) {
    KpOptions opts;
    opts.eval.mc.samples = 200'000;
    opts.eval.hull_samples = 4096;
    opts.eval.mc.parallel = false;
    const KpRun run = run_kp_trials(3, k, 32, lambda, 10, derive_seed(kSeed, Stream::Trials, 7000 + k), opts);
    for (const ExperimentResult& e : run.results) {
      ++mc_reports;
      const double se = e.stderr_p + e.stderr_q;
      if (se > 0) worst_z = std::max(worst_z, (e.vP - e.vQ) / se);
      if (!e.pass || e.path != EvalPath::MonteCarlo) ++mc_failures;
    }
    for (const InequalityReport& rep : run.chain) {
      ++mc_reports;
      if (!rep.pass) {
        ++mc_failures;
        out.detail += fmt::format(" [d=3 k={} {} failed: {} vs {}]", k, rep.name, rep.lhs, rep.rhs);
      }
    }
  }
  const double secs = clock.seconds();
  out.pass = link_failures == 0 && anchor_failures == 0 && mc_failures == 0 && secs <= 1800.0;
  out.detail = fmt::format(
                   "d=2: {} chains, {} link failures, {} anchor failures ({:.1f}s); d=3 N=32: {} "
                   "reports, {} failures, max (vP-vQ)/stderr {:.2f}; total {:.1f}s",
                   chains, link_failures, anchor_failures, secs2, mc_reports, mc_failures, worst_z, secs) +
               out.detail;
  return out;
}

Outcome alexander() {
  Outcome out;
  const std::vector<std::size_t> ns{2, 3, 4, 5, 8, 16, 64};
  const KpRun run = run_alexander_suite(1.0, ns, 1000, kSeed);
  int decreases = 0;
  int bookkeeping = 0;
  for (const ExperimentResult& e : run.results) {
    if (!(e.vP <= e.vQ)) ++decreases;
    if (e.theorem_applicable != (e.n >= 5)) ++bookkeeping;
  }
  const double threshold = std::pow(1.0 + std::sqrt(4.0 / 3.0), 2);
  if (std::abs(kp_threshold(2) - threshold) > 1e-12 || std::abs(threshold - 4.6427) > 1e-4) ++bookkeeping;
  out.pass = decreases == 0 && bookkeeping == 0 && run.results.size() == ns.size() * 1000;
  out.detail = fmt::format("{} trials, {} perimeter decreases, {} bookkeeping errors, threshold {:.4f}",
                           run.results.size(), decreases, bookkeeping, kp_threshold(2));
  return out;
}

Outcome jung() {
  Outcome out;
  std::mt19937_64 eng(kSeed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> size(2, 30);
  int failures = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (int d = 2; d <= 4; ++d) {
    for (int t = 0; t < 10000; ++t) {
      std::vector<Point> pts;
      const std::size_t n = size(eng);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> c(static_cast<std::size_t>(d));
        for (double& x : c) x = g(eng);
        pts.emplace_back(std::move(c));
      }
      const PointSet s(static_cast<std::size_t>(d), std::move(pts));
      const Ball b = min_enclosing_ball(s);
      // The ball must really enclose the set, or its radius proves nothing.
      for (const Point& p : s) {
        if (distance(p, b.center) > b.radius * (1 + 1e-9)) ++failures;
      }
      const double bound = std::sqrt(2.0 * d / (d + 1.0)) * brute_diameter(s) / 2.0;
      min_slack = std::min(min_slack, bound - b.radius);
      if (!(b.radius <= bound + 1e-9)) ++failures;
    }
  }
  double worst_eq = 0.0;
  for (int d = 2; d <= 4; ++d) {
    const InequalityReport rep = check_jung(regular_simplex(static_cast<std::size_t>(d)));
    const double bound = std::sqrt(2.0 * d / (d + 1.0)) * brute_diameter(regular_simplex(d)) / 2.0;
    worst_eq = std::max(worst_eq, std::abs(rep.lhs - bound));
  }
  out.pass = failures == 0 && worst_eq <= 1e-6;
  out.detail = fmt::format("30000 sets, {} failures, min slack {:.3e}; simplex equality error {:.1e}",
                           failures, min_slack, worst_eq);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome out;
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "ballkit_acceptance";
  std::filesystem::create_directories(dir);
  const std::string cli = BALLKIT_CLI_PATH;
  const std::string pts = (dir / "pts.json").string();
  auto run = [&](const std::string& args) {
    const std::string cmd = fmt::format("\"{}\" {} > /dev/null 2>&1", cli, args);
    return std::system(cmd.c_str());
  };
  run(fmt::format("gen --kind uniform --dim 3 --n 6 --r 1 --seed 3 --out {}", pts));
  const std::vector<std::string> commands{
      fmt::format("volumes --input {} --r 1 --samples 100000 --seed 5 --format json", pts),
      "check bs --dim 3 --trials 4 --samples 20000 --hull-samples 256 --seed 7",
      "check lemma --dim 3 --trials 3 --samples 20000 --hull-samples 256 --dirs 16 --seed 7",
      "check bs --trials 200 --seed 9",
      "check product --trials 200 --seed 9",
      "kp --dim 2 --n 8 --lambda 1 --trials 300 --seed 11",
      "kp --dim 3 --n 12 --k 2 --lambda 1 --trials 3 --samples 20000 --hull-samples 256 --seed 11",
      "kp --alexander --n-range 2,5,16 --trials 100 --seed 13 --format json",
  };
  int mismatches = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::vector<std::string> outputs;
    for (int threads : {1, 2, 4}) {
      const std::filesystem::path file = dir / fmt::format("run{}_{}.out", i, threads);
      std::filesystem::remove(file);
      run(fmt::format("{} --threads {} --out {}", commands[i], threads, file.string()));
      outputs.push_back(slurp(file));
    }
    const bool same = !outputs[0].empty() && outputs[0] == outputs[1] && outputs[0] == outputs[2];
    if (!same) {
      ++mismatches;
      out.detail += fmt::format(" [differs: {}]", commands[i]);
    }
  }
  std::filesystem::remove_all(dir);
  out.pass = mismatches == 0;
  out.detail = fmt::format("{} commands x threads {{1,2,4}}, {} differ", commands.size(), mismatches) +
               out.detail;
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"ball Steiner-fit anchor", ball_anchor},
      {"planar Monte Carlo vs exact measures", planar_mc_vs_exact},
      {"support identity", support_identity},
      {"intrinsic-radius bound and circle refinement", blaschke_santalo},
      {"volume product", volume_product},
      {"uniform-contraction chain", contraction_chain},
      {"perimeter under uniform contraction", alexander},
      {"Jung bound", jung},
      {"thread-count determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Clock clock;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    fmt::print("criterion {} ({}): {} - {} [{:.1f}s]\n", i + 1, criteria[i].first,
               o.pass ? "PASS" : "FAIL", o.detail, clock.seconds());
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
