#include "maxvar/counterexample.hpp"

#include <cmath>
#include <sstream>

#include "maxvar/csv.hpp"

namespace maxvar {

void CounterexampleParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 0.25)) {
    throw Error(ErrorKind::InvalidParams, "epsilon must lie in (0, 0.25)");
  }
  if (M < 4) throw Error(ErrorKind::InvalidParams, "M must be at least 4");
  if (N < 1 || N % 2 == 0) throw Error(ErrorKind::InvalidParams, "N must be odd and >= 1");
}

double CounterexampleParams::magnitude_log10() const {
  return std::log10(epsilon) + 2.0 * (N + 2) * std::log10(static_cast<double>(M));
}

double exact_jump_sum(const CounterexampleParams& p) {
  p.validate();
  const long double e = p.epsilon;
  const long double M = p.M;
  long double sum = (1.0L + e / M) + (e - e / M);
  for (int k = 1; k < p.N; k += 2) sum += 2.0L * (e - e / std::pow(M, k + 1));
  sum += e - e / std::pow(M, p.N + 1);
  return static_cast<double>(sum);
}

PredictionRecord predictions(const CounterexampleParams& p, double q) {
  p.validate();
  detail::require_exponent(q);
  PredictionRecord r;
  r.q = q;
  const double e = p.epsilon;
  const double M = p.M;
  const double root_eps = std::sqrt(e);
  // Step values of f' read exactly in long double, then the jump DP.
  std::vector<long double> steps;
  steps.push_back(e / std::pow(static_cast<long double>(M), p.N + 1));
  for (int n = p.N; n >= 0; --n) {
    steps.push_back(n % 2 == 0 ? static_cast<long double>(e)
                               : e / std::pow(static_cast<long double>(M), n + 1));
  }
  steps.push_back(e / static_cast<long double>(M));
  steps.push_back(-1.0L);
  r.exact_var_q_fprime =
      static_cast<double>(q_variation(std::span<const long double>(steps), q));
  r.leading_var_q_fprime =
      std::pow(std::pow(1.0 + e / M, q) + p.N * std::pow(e, q), 1.0 / q);
  r.ratio = std::pow(static_cast<double>(p.N), 1.0 / q) * root_eps / r.exact_var_q_fprime;
  for (int n = 1; n <= p.N; n += 2) r.contact_x.push_back(std::pow(M, n) * root_eps);
  r.dmf_odd = -root_eps;
  r.dmf_even_scale = root_eps / M;
  r.superlevel = (p.N / 2) * root_eps / M;
  return r;
}

std::vector<ExperimentReport> run_experiment(const CounterexampleParams& p,
                                             std::span<const double> q_list,
                                             const ExperimentOptions& opt,
                                             const Executor& exec) {
  if (p.scalar_mode == ScalarMode::extended) {
    return run_experiment<Extended>(p, q_list, opt, exec);
  }
  return run_experiment<double>(p, q_list, opt, exec);
}

std::string experiment_csv_header() {
  return "q,var_q_fprime,var_q_dmf,ratio,predicted_var_q_fprime,predicted_ratio,"
         "superlevel_measure,predicted_superlevel,weak_quasi_norm,grid_size";
}

std::string experiment_csv_row(const ExperimentReport& r) {
  std::ostringstream os;
  os << format_double(r.q) << ',' << format_double(r.var_q_fprime) << ','
     << format_double(r.var_q_dmf) << ',' << format_double(r.ratio) << ','
     << format_double(r.predicted_var_q_fprime) << ',' << format_double(r.predicted_ratio)
     << ',' << format_double(r.superlevel_measure) << ','
     << format_double(r.predicted_superlevel) << ',' << format_double(r.weak_quasi_norm)
     << ',' << r.grid_size;
  return os.str();
}

void sweep(std::span<const CounterexampleParams> params, std::span<const double> q_list,
           std::ostream& out, const ExperimentOptions& opt, const Executor& exec) {
  out << "epsilon,M,N,scalar," << experiment_csv_header() << '\n';
  for (const auto& p : params) {
    for (const auto& r : run_experiment(p, q_list, opt, exec)) {
      out << format_double(p.epsilon) << ',' << p.M << ',' << p.N << ','
          << scalar_mode_name(p.scalar_mode) << ',' << experiment_csv_row(r) << '\n';
    }
  }
}

}  // namespace maxvar
