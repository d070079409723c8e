// maxvar: command line front end.
//
// Exit codes: 0 success, 1 verify found failures, 2 usage or invalid input,
// 3 numeric failure (PrecisionExceeded, SolverFailure, UnattainedSupremum).

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "maxvar/counterexample.hpp"
#include "maxvar/csv.hpp"
#include "maxvar/errors.hpp"
#include "maxvar/executor.hpp"
#include "maxvar/maximal.hpp"
#include "maxvar/mollify.hpp"
#include "maxvar/plot.hpp"
#include "maxvar/pwl_io.hpp"
#include "maxvar/theorem_harness.hpp"
#include "maxvar/variation.hpp"

namespace {

using namespace maxvar;

struct Config {
  std::string fn;
  std::string out;
  int grid = 0;
  std::string range;
  double epsilon = 0.01;
  int M = 16;
  int N = 3;
  std::vector<double> q{1.0};
  std::string scalar = "f64";
  int n = 16;
  std::string suite;
  std::uint64_t seed = 42;
  long count = 0;
  unsigned threads = 0;
  std::vector<double> xs;
};

ScalarMode scalar_mode(const std::string& s) {
  if (s == "f64") return ScalarMode::binary64;
  if (s == "ext") return ScalarMode::extended;
  throw Error(ErrorKind::InvalidInput, "scalar must be f64 or ext, got '" + s + "'");
}

Executor executor(const Config& c) {
  return c.threads == 0 ? Executor::hardware() : Executor(c.threads);
}

void emit(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(c.out, text);
  }
}

void require_fn(const Config& c) {
  if (c.fn.empty()) throw Error(ErrorKind::InvalidInput, "--fn is required");
}

std::pair<double, double> parse_range(const std::string& r) {
  const auto colon = r.find(':', 1);
  if (colon == std::string::npos) {
    throw Error(ErrorKind::InvalidInput, "--range must look like A:B");
  }
  const double a = parse_double(r.substr(0, colon));
  const double b = parse_double(r.substr(colon + 1));
  if (!(a < b)) throw Error(ErrorKind::InvalidInput, "--range needs A < B");
  return {a, b};
}

MaximalEvaluation<double> narrow(const MaximalEvaluation<Extended>& e) {
  MaximalEvaluation<double> d;
  d.x = to_double(e.x);
  d.mf = to_double(e.mf);
  d.a = to_double(e.a);
  d.dmf = to_double(e.dmf);
  if (e.da) d.da = to_double(*e.da);
  if (e.ddmf) d.ddmf = to_double(*e.ddmf);
  d.luiro_residual = to_double(e.luiro_residual);
  d.stationarity_residual = to_double(e.stationarity_residual);
  d.degenerate = e.degenerate;
  return d;
}

template <Real T>
std::vector<MaximalEvaluation<double>> evaluate_points(const PwlFunction<double>& f,
                                                       std::span<const double> xs,
                                                       const Executor& exec) {
  const MaximalSolver<T> solver(convert<T>(f));
  std::vector<MaximalEvaluation<double>> out(xs.size());
  exec.parallel_for(xs.size(), [&](std::size_t i) {
    if constexpr (std::is_same_v<T, double>) {
      out[i] = solver.evaluate(xs[i]);
    } else {
      out[i] = narrow(solver.evaluate(T(xs[i])));
    }
  });
  return out;
}

template <Real T>
std::vector<MaximalEvaluation<double>> profile_grid(const PwlFunction<double>& f,
                                                    const GridSpec& spec,
                                                    const Executor& exec) {
  const MaximalSolver<T> solver(convert<T>(f));
  const auto grid = auto_grid(solver, spec);
  std::vector<double> xs;
  for (const T& x : grid) xs.push_back(to_double(x));
  return evaluate_points<T>(f, xs, exec);
}

int cmd_eval(const Config& c) {
  require_fn(c);
  const auto f = load_pwl(c.fn);
  const auto exec = executor(c);
  const auto rows = scalar_mode(c.scalar) == ScalarMode::extended
                        ? evaluate_points<Extended>(f, c.xs, exec)
                        : evaluate_points<double>(f, c.xs, exec);
  emit(c, profile_csv(rows));
  return 0;
}

int cmd_profile(const Config& c) {
  require_fn(c);
  const auto f = load_pwl(c.fn);
  GridSpec spec;
  spec.points_per_decade = c.grid > 0 ? c.grid : 64;
  if (!c.range.empty()) {
    const auto [a, b] = parse_range(c.range);
    spec.lo = a;
    spec.hi = b;
  }
  const auto exec = executor(c);
  const auto rows = scalar_mode(c.scalar) == ScalarMode::extended
                        ? profile_grid<Extended>(f, spec, exec)
                        : profile_grid<double>(f, spec, exec);
  emit(c, profile_csv(rows));
  return 0;
}

int cmd_variation(const Config& c) {
  require_fn(c);
  const auto table = parse_csv_table(read_text_file(c.fn));
  const std::size_t cx = table.column("x");
  const std::size_t cv = table.column("value");
  std::vector<double> xs, vs, ws;
  for (const auto& r : table.rows) {
    xs.push_back(r[cx]);
    vs.push_back(r[cv]);
  }
  const SampledSignal signal(xs, vs);
  std::optional<double> wqn;
  if (table.has_column("width")) {
    const std::size_t cw = table.column("width");
    std::vector<double> mags;
    for (const auto& r : table.rows) {
      mags.push_back(std::abs(r[cv]));
      ws.push_back(r[cw]);
    }
    wqn = weak_quasi_norm(std::span<const double>(mags), std::span<const double>(ws));
  }
  std::string out = "q,var_q,sup_variation,weak_quasi_norm\n";
  const double sup = sup_variation(signal);
  for (double q : c.q) {
    out += format_double(q) + "," + format_double(q_variation(signal, q)) + "," +
           format_double(sup) + "," + format_optional(wqn) + "\n";
  }
  emit(c, out);
  return 0;
}

ExperimentOptions experiment_options(const Config& c) {
  ExperimentOptions opt;
  if (c.grid > 0) opt.points_per_decade = c.grid;
  return opt;
}

int cmd_counterexample(const Config& c) {
  CounterexampleParams p{c.epsilon, c.M, c.N, scalar_mode(c.scalar)};
  const auto reports = run_experiment(p, c.q, experiment_options(c), executor(c));
  std::string out = experiment_csv_header() + "\n";
  for (const auto& r : reports) out += experiment_csv_row(r) + "\n";
  emit(c, out);
  return 0;
}

// Step k: epsilon / 4^k with N_k = 4^k (N + 1) - 1, so N epsilon stays fixed.
int cmd_sweep(const Config& c) {
  const long steps = c.count > 0 ? c.count : 3;
  std::vector<CounterexampleParams> params;
  double eps = c.epsilon;
  long n = c.N;
  for (long k = 0; k < steps; ++k) {
    if (n > 1'000'000) throw Error(ErrorKind::InvalidParams, "sweep N grows beyond 1e6");
    params.push_back({eps, c.M, static_cast<int>(n), scalar_mode(c.scalar)});
    eps /= 4.0;
    n = 4 * (n + 1) - 1;
  }
  for (const auto& p : params) p.validate();
  std::ostringstream out;
  sweep(params, c.q, out, experiment_options(c), executor(c));
  emit(c, out.str());
  return 0;
}

int cmd_mollify(const Config& c) {
  require_fn(c);
  const auto f = load_pwl(c.fn);
  MollifierConfig cfg;
  cfg.n = c.n;
  cfg.validate();
  const auto fn = materialize(f, cfg, c.grid > 0 ? c.grid : 4096, executor(c));
  emit(c, dump_pwl(fn));
  return 0;
}

long default_count(const std::string& suite) {
  if (suite == "two-zeros") return 10000;
  if (suite == "partition") return 100;
  if (suite == "radial") return 200;
  return 20;
}

int cmd_verify(const Config& c) {
  if (c.suite.empty()) throw Error(ErrorKind::InvalidInput, "--suite is required");
  const long count = c.count > 0 ? c.count : default_count(c.suite);
  const auto rep = run_suite(c.suite, c.seed, count, executor(c));
  nlohmann::ordered_json j;
  j["suite"] = rep.suite;
  j["seed"] = rep.seed;
  j["count"] = rep.count;
  j["passed"] = rep.passed;
  j["failed"] = rep.failed;
  j["not_applicable"] = rep.not_applicable;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& r : rep.records) {
    nlohmann::ordered_json e;
    e["name"] = r.name;
    e["result"] = std::string(outcome_name(r.outcome));
    if (!r.witness.empty()) e["witness"] = r.witness;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  emit(c, j.dump(2) + "\n");
  std::cerr << rep.suite << ": " << rep.passed << " passed, " << rep.failed << " failed, "
            << rep.not_applicable << " not applicable\n";
  return rep.failed > 0 ? 1 : 0;
}

int cmd_plot(const Config& c) {
  require_fn(c);
  emit(c, profile_svg(read_text_file(c.fn)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  if (const char* env = std::getenv("MAXVAR_SCALAR")) c.scalar = env;

  CLI::App app{"Maximal function derivative variation toolkit"};
  app.require_subcommand(1);
  const std::vector<std::string> scalars{"f64", "ext"};

  auto add_fn = [&](CLI::App* s, const std::string& what) {
    s->add_option("--fn", c.fn, what);
  };
  auto add_out = [&](CLI::App* s) { s->add_option("--out", c.out, "Output path (default stdout)"); };
  auto add_scalar = [&](CLI::App* s) {
    s->add_option("--scalar", c.scalar, "Scalar type")->check(CLI::IsMember(scalars));
  };
  auto add_threads = [&](CLI::App* s) {
    s->add_option("--threads", c.threads, "Worker threads (default: hardware)");
  };
  auto add_grid = [&](CLI::App* s, const std::string& what) {
    s->add_option("--grid", c.grid, what)->check(CLI::PositiveNumber);
  };
  auto add_q = [&](CLI::App* s) {
    s->add_option("--q", c.q, "Exponents, comma separated")->delimiter(',');
  };
  auto add_family = [&](CLI::App* s) {
    s->add_option("--epsilon", c.epsilon, "Family parameter epsilon");
    s->add_option("--M", c.M, "Family parameter M");
    s->add_option("--N", c.N, "Family parameter N (odd)");
  };

  auto* eval = app.add_subcommand("eval", "Evaluate Mf and its derivatives at points");
  add_fn(eval, "Function JSON");
  add_out(eval);
  add_scalar(eval);
  add_threads(eval);
  eval->add_option("x", c.xs, "Points")->required();

  auto* profile = app.add_subcommand("profile", "Profile Mf on an automatic grid");
  add_fn(profile, "Function JSON");
  add_grid(profile, "Points per decade (default 64)");
  profile->add_option("--range", c.range, "Grid range A:B");
  add_scalar(profile);
  add_threads(profile);
  add_out(profile);

  auto* variation = app.add_subcommand("variation", "q-variation of a sampled signal");
  add_fn(variation, "CSV with columns x,value[,width]");
  add_q(variation);
  add_out(variation);

  auto* counter = app.add_subcommand("counterexample", "Blow-up experiment for one parameter set");
  add_family(counter);
  add_q(counter);
  add_scalar(counter);
  add_grid(counter, "Base points per decade (default 64)");
  add_threads(counter);
  add_out(counter);

  auto* sweep_cmd = app.add_subcommand("sweep", "Experiments at epsilon/4^k with N epsilon fixed");
  add_family(sweep_cmd);
  sweep_cmd->add_option("--count", c.count, "Number of steps (default 3)");
  add_q(sweep_cmd);
  add_scalar(sweep_cmd);
  add_grid(sweep_cmd, "Base points per decade (default 64)");
  add_threads(sweep_cmd);
  add_out(sweep_cmd);

  auto* mollify = app.add_subcommand("mollify", "Resampled mollified function");
  add_fn(mollify, "Function JSON");
  mollify->add_option("--n", c.n, "Mollifier index (>= 2)");
  add_grid(mollify, "Resampling points per decade (default 4096)");
  add_threads(mollify);
  add_out(mollify);

  auto* verify = app.add_subcommand("verify", "Run a randomized check suite");
  verify->add_option("--suite", c.suite, "Suite name")
      ->check(CLI::IsMember({"two-zeros", "decay", "partition", "radial", "low-speed"}));
  verify->add_option("--seed", c.seed, "Seed");
  verify->add_option("--count", c.count, "Number of cases");
  add_threads(verify);
  add_out(verify);

  auto* plot = app.add_subcommand("plot", "SVG plot of a profile CSV");
  add_fn(plot, "Profile CSV");
  add_out(plot);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    scalar_mode(c.scalar);
    if (eval->parsed()) return cmd_eval(c);
    if (profile->parsed()) return cmd_profile(c);
    if (variation->parsed()) return cmd_variation(c);
    if (counter->parsed()) return cmd_counterexample(c);
    if (sweep_cmd->parsed()) return cmd_sweep(c);
    if (mollify->parsed()) return cmd_mollify(c);
    if (verify->parsed()) return cmd_verify(c);
    if (plot->parsed()) return cmd_plot(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_numeric() ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
