// Acceptance gate: one PASS/FAIL line per criterion.
//   acceptance                 run all criteria
//   acceptance --criterion K   run criterion K only

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "maxvar/counterexample.hpp"
#include "maxvar/maximal.hpp"
#include "maxvar/mollify.hpp"
#include "maxvar/theorem_harness.hpp"
#include "maxvar/variation.hpp"

using namespace maxvar;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Executor pool() { return Executor::hardware(); }

struct Named {
  std::string name;
  PwlFunction<double> f;
};

// Hats, the triangle bump, 20 random even instances and the family at (0.01, 16, 3).
std::vector<Named> full_suite() {
  std::vector<Named> out{{"hat(1,1)", make_hat(1.0, 1.0)},
                         {"hat(1,100)", make_hat(1.0, 100.0)},
                         {"hat(0.01,1)", make_hat(0.01, 1.0)},
                         {"triangle", make_triangle_bump<double>()}};
  for (std::uint64_t i = 0; i < 20; ++i) {
    out.push_back({"random#" + std::to_string(i), random_even_instance(42, i)});
  }
  out.push_back({"family(0.01,16,3)", build_f<double>(CounterexampleParams{})});
  return out;
}

std::vector<MaximalEvaluation<double>> suite_profile(const PwlFunction<double>& f) {
  const MaximalSolver<double> s(f);
  GridSpec spec;
  spec.points_per_decade = 64;
  return profile<double>(s, auto_grid(s, spec), pool());
}

Result criterion1() {
  const auto t0 = Clock::now();
  double worst = 0.0, worst_sqrt = 0.0;
  for (const auto& [A, B] : std::vector<std::pair<double, double>>{{1, 1}, {1, 100}, {0.01, 1}}) {
    const MaximalSolver<double> s(make_hat(A, B));
    const double closed = A * (1.0 - std::sqrt(1.0 + B / A));
    for (double x : {0.5, 1.0, 7.0}) {
      const double dmf = s.evaluate(x).dmf;
      worst = std::max(worst, std::abs(dmf / closed - 1.0));
      if (B / A == 100.0) {
        worst_sqrt = std::max(worst_sqrt, std::abs(dmf / -std::sqrt(A * B) - 1.0));
      }
    }
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-9 && worst_sqrt <= 0.1 && t < 1.0,
          fmt("max rel err %.3g (<= 1e-9), max rel gap to -sqrt(AB) %.4f (<= 0.1), %.3fs (< 1s)",
              worst, worst_sqrt, t)};
}

Result criterion2() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::string where = "-";
  long points = 0, bad = 0;
  for (const auto& [name, f] : full_suite()) {
    for (const auto& e : suite_profile(f)) {
      ++points;
      const double bound = 1e-8 * std::abs(e.dmf);
      if (e.luiro_residual > bound) ++bad;
      const double rel = e.dmf != 0.0 ? e.luiro_residual / std::abs(e.dmf)
                                      : (e.luiro_residual > 0.0 ? INFINITY : 0.0);
      if (rel > worst) {
        worst = rel;
        where = name + fmt(" at x=%.6g", e.x);
      }
    }
  }
  const double t = seconds_since(t0);
  return {bad == 0 && t < 10.0,
          fmt("%ld points, %ld above 1e-8|dmf|, worst relative residual %.3g (%s), %.2fs (< 10s)",
              points, bad, worst, where.c_str(), t)};
}

Result criterion3() {
  long bad = 0, n = 0;
  double slack = INFINITY;
  for (const auto& [name, f] : full_suite()) {
    std::vector<double> d;
    for (const auto& e : suite_profile(f)) d.push_back(e.dmf);
    const double lhs = sup_variation(std::span<const double>(d));
    const auto& sl = f.slopes();
    const double rhs = sup_variation(std::span<const double>(sl));
    ++n;
    if (!(lhs <= rhs + 1e-12)) ++bad;
    slack = std::min(slack, rhs - lhs);
  }
  return {bad == 0, fmt("%ld instances, %ld violations, min slack %.3g", n, bad, slack)};
}

Result criterion4() {
  long bad = 0, pairs = 0, instances = 0;
  double worst_mf = 0.0, worst_a = 0.0;
  for (const auto& [name, f] : full_suite()) {
    const auto K = f.classify().K;
    if (!K) continue;
    ++instances;
    const auto prof = suite_profile(f);
    for (std::size_t i = 0; i + 1 < prof.size(); ++i) {
      const double dx = prof[i + 1].x - prof[i].x;
      if (!(dx > 0.0)) continue;
      ++pairs;
      const double qm = std::abs(prof[i + 1].mf - prof[i].mf) / dx / *K;
      const double qa = std::abs(prof[i + 1].a - prof[i].a) / dx / (*K * *K);
      worst_mf = std::max(worst_mf, qm);
      worst_a = std::max(worst_a, qa);
      if (qm > 1.0 + 1e-6 || qa > 1.0 + 1e-6) ++bad;
    }
  }
  return {bad == 0, fmt("%ld strict instances, %ld grid pairs, %ld violations, max |dMf|/K %.4g, "
                        "max |da|/K^2 %.4g",
                        instances, pairs, bad, worst_mf, worst_a)};
}

Result criterion5() {
  const std::vector<double> q{1.0};
  CounterexampleParams p;
  p.N = 99;
  auto t0 = Clock::now();
  const auto r64 = run_experiment(p, std::span<const double>(q), {}, pool())[0];
  const double t64 = seconds_since(t0);
  CounterexampleParams e;
  e.epsilon = 0.0025;
  e.N = 399;
  e.scalar_mode = ScalarMode::extended;
  t0 = Clock::now();
  const auto rext = run_experiment(e, std::span<const double>(q), {}, pool())[0];
  const double text = seconds_since(t0);
  const bool ok = r64.ratio >= 3.0 && r64.ratio <= 7.0 && t64 < 60.0 &&
                  rext.ratio >= 1.5 * r64.ratio && text < 600.0;
  return {ok, fmt("binary64 (0.01,16,99) ratio %.4f in [3,7] (predicted %.4f, var f' %.10g), %.1fs "
                  "(< 60s); extended (0.0025,16,399) ratio %.4f vs 1.5x = %.4f, %.1fs (< 600s)",
                  r64.ratio, r64.predicted_ratio, r64.var_q_fprime, t64, rext.ratio,
                  1.5 * r64.ratio, text)};
}

Result criterion6() {
  CounterexampleParams p;
  p.epsilon = 1e-4;
  p.M = 100;
  p.N = 9;
  const double re = std::sqrt(p.epsilon);
  long bad = 0;
  std::ostringstream notes;
  for (const auto& c : contact_events<double>(p)) {
    const double Mn = std::pow(100.0, c.n);
    if (c.n % 2 == 1) {
      const double xr = c.x / (Mn * re), dr = -c.dmf / re;
      const bool ok = std::abs(xr - 1.0) <= 0.15 && dr >= 0.8 && dr <= 1.2;
      if (!ok) {
        ++bad;
        notes << fmt(" n=%d x/(M^n sqrt eps)=%.4f -dmf/sqrt eps=%.4f;", c.n, xr, dr);
      }
    } else {
      const double lim = 5.0 * re / p.M;
      if (!(std::abs(c.dmf) <= lim)) {
        ++bad;
        notes << fmt(" n=%d |dmf|=%.4g > 5 sqrt(eps)/M=%.4g;", c.n, std::abs(c.dmf), lim);
      }
    }
  }
  return {bad == 0, fmt("%ld of 10 contacts out of tolerance.", bad) + notes.str()};
}

Result criterion7() {
  CounterexampleParams p;
  p.N = 99;
  const MaximalSolver<double> s(build_f<double>(p));
  const auto samples = counterexample_samples(s, p, 64, pool());
  const double lambda = 16.0 / 9.0;
  const auto m = superlevel_measures<double>(std::span<const ContactSample<double>>(samples), lambda);
  std::vector<double> neg, mag, w;
  long positive = 0, negative = 0;
  for (const auto& c : samples) {
    if (c.weight == 0.0 || !c.e.ddmf) continue;
    neg.push_back(std::max(0.0, -*c.e.ddmf));
    mag.push_back(std::abs(*c.e.ddmf));
    w.push_back(c.weight);
    positive += *c.e.ddmf >= lambda;
    negative += -*c.e.ddmf >= lambda;
  }
  const double wqn = weak_quasi_norm(std::span<const double>(neg), std::span<const double>(w));
  const double wqn_abs = weak_quasi_norm(std::span<const double>(mag), std::span<const double>(w));
  const double predicted = predictions(p, 1.0).superlevel;
  const bool ok = m.negative_part >= 0.15 && wqn >= lambda * 0.15;
  return {ok, fmt("|{-(Mf)'' >= M/9}| = %.4f (>= 0.15, predicted %.4f), weak quasi-norm of "
                  "(-(Mf)'')_+ = %.4f (>= %.4f); samples with (Mf)'' >= M/9: %ld, <= -M/9: %ld; "
                  "|{|(Mf)''| >= M/9}| = %.4f, weak quasi-norm of |(Mf)''| = %.4f",
                  m.negative_part, predicted, wqn, lambda * 0.15, positive, negative, m.absolute,
                  wqn_abs)};
}

Result criterion8() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> len(1, 12);
  std::uniform_real_distribution<double> val(-10.0, 10.0);
  long bad = 0, runs = 0;
  for (int t = 0; t < 500; ++t) {
    std::vector<double> v(static_cast<std::size_t>(len(rng)));
    for (auto& x : v) x = val(rng);
    for (double q : {1.0, 1.5, 2.0, 3.0}) {
      ++runs;
      const std::span<const double> s(v);
      if (q_variation(s, q) != q_variation_bruteforce(s, q)) ++bad;
    }
  }
  const double t = seconds_since(t0);
  return {bad == 0 && t < 5.0, fmt("%ld comparisons, %ld mismatches, %.2fs (< 5s)", runs, bad, t)};
}

Result criterion9() {
  const auto r = radial_experiment(42, 200, pool());
  const bool ok = r.count == 200 && r.all_finite && r.max_ratio <= 20.0 && r.contact_violations == 0;
  return {ok, fmt("%ld instances, all finite %s, max ratio %.4f (<= 20), mean %.4f, "
                  "-a(x) > x at %ld points",
                  r.count, r.all_finite ? "yes" : "no", r.max_ratio, r.mean_ratio,
                  r.contact_violations)};
}

Result criterion10() {
  std::vector<double> grid;
  for (int k = -60; k <= 40; ++k) {
    const double x = std::pow(10.0, k / 20.0);
    grid.push_back(x);
    grid.push_back(-x);
  }
  bool ok = true;
  std::ostringstream notes;
  for (const auto& [name, f] : std::vector<Named>{{"triangle", make_triangle_bump<double>()},
                                                   {"hat(1,1)", make_hat(1.0, 1.0)}}) {
    double prev = INFINITY;
    bool decreasing = true;
    notes << ' ' << name << ":";
    for (int n : {4, 16, 64}) {
      MollifierConfig cfg;
      cfg.n = n;
      const auto r = approximation_report(f, cfg, std::span<const double>(grid), pool());
      decreasing = decreasing && r.sup_error < prev;
      prev = r.sup_error;
      notes << fmt(" n=%d sup|f_n-f|=%.4g", n, r.sup_error);
      if (n == 64) {
        const bool var_ok = r.var_fn_prime <= 1.1 * r.var_fprime;
        ok = ok && var_ok;
        notes << fmt(" var(f_n')=%.6g vs 1.1 var(f')=%.6g%s", r.var_fn_prime, 1.1 * r.var_fprime,
                     var_ok ? "" : " [exceeds]");
      }
    }
    ok = ok && decreasing;
    notes << (decreasing ? " decreasing;" : " NOT decreasing;");
  }
  long psi_bad = 0;
  for (int n : {4, 16, 64}) {
    const double t = 1.0 / n;
    for (double x : {t, -t, 2.0 * t, 0.5, 1.0, -7.0, 1e3}) psi_bad += psi(t, x) != t * t;
  }
  ok = ok && psi_bad == 0;
  notes << fmt(" psi exact mismatches %ld", psi_bad);
  return {ok, notes.str()};
}

Result criterion11() {
  const auto part = run_suite("partition", 42, 100, pool());
  const auto two = run_suite("two-zeros", 42, 10000, pool());
  const auto decay = run_suite("decay", 42, 20, pool());
  const bool ok = part.failed == 0 && part.passed == 100 && two.failed == 0 &&
                  two.passed == 10000 && decay.failed == 0 && decay.passed > 0;
  return {ok, fmt("partition %ld/%ld, two-zeros %ld applicable with %ld violations "
                  "(%ld not applicable skipped), decay %ld pairs with %ld failures",
                  part.passed, part.count, two.passed, two.failed, two.not_applicable,
                  decay.passed + decay.failed, decay.failed)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Result()>> criteria{
      criterion1, criterion2, criterion3, criterion4,  criterion5, criterion6,
      criterion7, criterion8, criterion9, criterion10, criterion11};
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion K]\n");
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "criterion must be in 1..%zu\n", criteria.size());
    return 2;
  }
  int failed = 0;
  for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) {
    if (only != 0 && k != only) continue;
    Result r;
    try {
      r = criteria[static_cast<std::size_t>(k - 1)]();
    } catch (const std::exception& e) {
      r = {false, std::string("error: ") + e.what()};
    }
    std::printf("criterion %d: %s %s\n", k, r.pass ? "PASS" : "FAIL", r.detail.c_str());
    std::fflush(stdout);
    failed += !r.pass;
  }
  return failed == 0 ? 0 : 1;
}
