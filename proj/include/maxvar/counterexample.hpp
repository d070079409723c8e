#pragma once

#include <cmath>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "maxvar/errors.hpp"
#include "maxvar/executor.hpp"
#include "maxvar/maximal.hpp"
#include "maxvar/pwl.hpp"
#include "maxvar/scalar.hpp"
#include "maxvar/variation.hpp"

namespace maxvar {

/// Parameters (epsilon, M, N) of the oscillating family.
struct CounterexampleParams {
  double epsilon = 0.01;
  int M = 16;
  int N = 3;
  ScalarMode scalar_mode = ScalarMode::binary64;

  /// Throws InvalidParams unless 0 < epsilon < 1/4, M >= 4 and N is odd.
  void validate() const;

  /// log10 of epsilon * M^(2(N+2)), the largest intermediate magnitude.
  double magnitude_log10() const;

  /// validate() plus the exponent-range guard for T.
  template <Real T>
  void validate_for() const {
    validate();
    if (!(magnitude_log10() < max_log10<T>())) {
      throw Error(ErrorKind::PrecisionExceeded,
                  "epsilon * M^(2(N+2)) exceeds the exponent range of the " +
                      std::string(std::is_same_v<T, double> ? "binary64" : "extended") +
                      " scalar");
    }
  }
};

namespace detail {

template <Real T>
std::vector<T> powers(const T& base, int count) {
  std::vector<T> out(static_cast<std::size_t>(count) + 1, T(1));
  for (std::size_t k = 1; k < out.size(); ++k) out[k] = out[k - 1] * base;
  return out;
}

}  // namespace detail

/// f(0) = 0, f' = -1 on (0, inf), eps/M on (-1, 0), eps on (-M^{n+1}, -M^n)
/// for even n, eps/M^{n+1} there for odd n, eps/M^{N+1} left of -M^{N+1}.
template <Real T>
PwlFunction<T> build_f(const CounterexampleParams& p) {
  p.validate_for<T>();
  const T eps = T(p.epsilon);
  const auto pw = detail::powers(T(p.M), p.N + 1);
  std::vector<T> bp;
  std::vector<T> sl;
  sl.push_back(eps / pw[p.N + 1]);
  for (int n = p.N; n >= 0; --n) {
    bp.push_back(-pw[n + 1]);
    sl.push_back(n % 2 == 0 ? eps : eps / pw[n + 1]);
  }
  bp.push_back(T(-1));
  sl.push_back(eps / pw[1]);
  bp.push_back(T(0));
  sl.push_back(T(-1));
  const std::size_t anchor = bp.size() - 1;
  return PwlFunction<T>(std::move(bp), T(0), std::move(sl), anchor);
}

/// Affine on the half-open interval (lo, hi]: intercept + slope * x.
template <Real T>
struct AffinePiece {
  T lo;
  T hi;
  T intercept;
  T slope;
};

/// Piecewise-affine comparison function (discontinuous at some piece ends).
template <Real T>
class CompanionG {
 public:
  explicit CompanionG(std::vector<AffinePiece<T>> pieces) : pieces_(std::move(pieces)) {}

  const std::vector<AffinePiece<T>>& pieces() const { return pieces_; }

  T eval(const T& x) const {
    const AffinePiece<T>& q = piece_of(x);
    return q.intercept + q.slope * x;
  }

  /// Exact signed integral over (y, x).
  T integral(const T& y, const T& x) const {
    if (y == x) return T(0);
    if (y > x) return -integral(x, y);
    std::vector<T> terms;
    for (const auto& q : pieces_) {
      const T lo = std::max(q.lo, y);
      const T hi = std::min(q.hi, x);
      if (!(lo < hi)) continue;
      terms.push_back(q.intercept * (hi - lo) + q.slope * (hi * hi - lo * lo) / T(2));
    }
    return sum_by_magnitude(std::move(terms));
  }

 private:
  const AffinePiece<T>& piece_of(const T& x) const {
    for (const auto& q : pieces_) {
      if (x > q.lo && x <= q.hi) return q;
    }
    return pieces_.back();
  }

  std::vector<AffinePiece<T>> pieces_;
};

template <Real T>
CompanionG<T> build_g(const CounterexampleParams& p) {
  p.validate_for<T>();
  const T eps = T(p.epsilon);
  const T Md = T(p.M);
  const auto pw = detail::powers(Md, p.N + 1);
  const T inf = std::numeric_limits<T>::infinity();
  std::vector<AffinePiece<T>> pieces;
  pieces.push_back({T(0), inf, T(0), T(-1)});
  pieces.push_back({T(-1), T(0), T(0), eps / Md});
  for (int n = 0; n <= p.N; ++n) {
    const T lo = -pw[n + 1];
    const T hi = -pw[n];
    if (n % 2 == 0) {
      const T prev = n == 0 ? T(1) / Md : pw[n - 1];
      pieces.push_back({lo, hi, (pw[n] - prev) * eps, eps});
    } else {
      pieces.push_back({lo, hi, -pw[n] * eps, T(0)});
    }
  }
  pieces.push_back({-inf, -pw[p.N + 1], -pw[p.N] * eps, T(0)});
  return CompanionG<T>(std::move(pieces));
}

/// Leading-order predictions for one exponent q.
struct PredictionRecord {
  double q = 1.0;
  /// Exact q-variation of the step values of f'.
  double exact_var_q_fprime = 0.0;
  /// [(1 + eps/M)^q + N eps^q]^(1/q).
  double leading_var_q_fprime = 0.0;
  /// N^(1/q) sqrt(eps) / exact_var_q_fprime.
  double ratio = 0.0;
  /// M^n sqrt(eps) for odd n = 1, 3, ..., N.
  std::vector<double> contact_x;
  /// (Mf)' at a = -M^n: -sqrt(eps) for odd n.
  double dmf_odd = 0.0;
  /// Magnitude scale sqrt(eps)/M of (Mf)' at a = -M^n for even n.
  double dmf_even_scale = 0.0;
  /// floor(N/2) sqrt(eps) / M.
  double superlevel = 0.0;
};

PredictionRecord predictions(const CounterexampleParams& p, double q);

/// Exact jump sum of f' in closed form:
/// (1 + e/M) + (e - e/M) + sum_{odd k<N} 2(e - e/M^{k+1}) + (e - e/M^{N+1}).
double exact_jump_sum(const CounterexampleParams& p);

struct ExperimentReport {
  double q = 1.0;
  double var_q_fprime = 0.0;
  double var_q_dmf = 0.0;
  double ratio = 0.0;
  double predicted_var_q_fprime = 0.0;
  double predicted_ratio = 0.0;
  double superlevel_measure = 0.0;
  double predicted_superlevel = 0.0;
  double weak_quasi_norm = 0.0;
  long grid_size = 0;
};

/// Measures of {x > 0 : |(Mf)''| >= lambda} and {x > 0 : -(Mf)'' >= lambda}
/// from weighted contact samples.
struct SuperlevelMeasures {
  double absolute = 0.0;
  double negative_part = 0.0;
};

template <Real T>
SuperlevelMeasures superlevel_measures(std::span<const ContactSample<T>> samples,
                                       const T& lambda) {
  using std::abs;
  CompensatedSum<T> abs_sum;
  CompensatedSum<T> neg_sum;
  for (const auto& s : samples) {
    if (s.weight == T(0) || !s.e.ddmf) continue;
    if (abs(*s.e.ddmf) >= lambda) abs_sum.add(s.weight);
    if (-*s.e.ddmf >= lambda) neg_sum.add(s.weight);
  }
  return {to_double(abs_sum.value()), to_double(neg_sum.value())};
}

/// Contact point, abscissa and (Mf)' at a = -M^n for n = 0..N.
template <Real T>
struct ContactEvent {
  int n;
  T a;
  T x;
  T dmf;
};

template <Real T>
std::vector<ContactEvent<T>> contact_events(const CounterexampleParams& p) {
  MaximalSolver<T> solver(build_f<T>(p));
  const auto pw = detail::powers(T(p.M), p.N);
  std::vector<ContactEvent<T>> out;
  for (int n = 0; n <= p.N; ++n) {
    const auto e = solver.evaluate_at_contact(-pw[n]);
    out.push_back({n, e.a, e.x, e.dmf});
  }
  return out;
}

/// Positive-side samples for x in (sqrt(eps), 2 M^N sqrt(eps)) with contact
/// events a = -M^n and midpoints a = -1.5 M^n as cell boundaries.
template <Real T>
std::vector<ContactSample<T>> counterexample_samples(const MaximalSolver<T>& solver,
                                                     const CounterexampleParams& p,
                                                     int points_per_decade,
                                                     const Executor& exec) {
  using std::sqrt;
  const T root_eps = sqrt(T(p.epsilon));
  const auto pw = detail::powers(T(p.M), p.N + 1);
  const T t_lo = -solver.value(root_eps).a;
  const T t_hi = -solver.value(T(2) * pw[p.N] * root_eps).a;
  std::vector<T> events;
  for (int n = 0; n <= p.N + 1; ++n) events.push_back(T(3) / T(2) * pw[n]);
  return contact_profile<T>(solver, t_lo, t_hi, points_per_decade,
                            std::span<const T>(events), exec);
}

struct ExperimentOptions {
  int points_per_decade = 64;
  /// Doublings stop once the total variation of (Mf)' changes by less than this.
  double refine_tolerance = 1e-3;
  int max_doublings = 4;
};

template <Real T>
std::vector<ExperimentReport> run_experiment(const CounterexampleParams& p,
                                             std::span<const double> q_list,
                                             const ExperimentOptions& opt = {},
                                             const Executor& exec = Executor()) {
  using std::abs;
  const PwlFunction<T> f = build_f<T>(p);
  const MaximalSolver<T> solver(f);

  int ppd = opt.points_per_decade;
  auto samples = counterexample_samples(solver, p, ppd, exec);
  auto dmf_values = [](const std::vector<ContactSample<T>>& s) {
    std::vector<T> v;
    v.reserve(s.size());
    for (const auto& c : s) v.push_back(c.e.dmf);
    return v;
  };
  std::vector<T> dmf = dmf_values(samples);
  T tv = total_variation(std::span<const T>(dmf));
  for (int d = 0; d < opt.max_doublings; ++d) {
    ppd *= 2;
    auto finer = counterexample_samples(solver, p, ppd, exec);
    std::vector<T> finer_dmf = dmf_values(finer);
    const T finer_tv = total_variation(std::span<const T>(finer_dmf));
    const bool done = abs(finer_tv - tv) <= T(opt.refine_tolerance) * abs(finer_tv);
    samples = std::move(finer);
    dmf = std::move(finer_dmf);
    tv = finer_tv;
    if (done) break;
  }

  const T lambda = T(p.M) / T(9);
  const auto measures = superlevel_measures<T>(samples, lambda);
  std::vector<T> ddmf_abs;
  std::vector<T> widths;
  for (const auto& s : samples) {
    if (s.weight == T(0) || !s.e.ddmf) continue;
    ddmf_abs.push_back(abs(*s.e.ddmf));
    widths.push_back(s.weight);
  }
  const double wqn = to_double(
      weak_quasi_norm(std::span<const T>(ddmf_abs), std::span<const T>(widths)));

  const std::vector<T>& steps = f.slopes();
  std::vector<ExperimentReport> out;
  for (double q : q_list) {
    const PredictionRecord pred = predictions(p, q);
    ExperimentReport r;
    r.q = q;
    const T vf = q_variation(std::span<const T>(steps), q);
    const T vm = q_variation(std::span<const T>(dmf), q);
    r.var_q_fprime = to_double(vf);
    r.var_q_dmf = to_double(vm);
    r.ratio = to_double(vm / vf);
    r.predicted_var_q_fprime = pred.leading_var_q_fprime;
    r.predicted_ratio = pred.ratio;
    r.superlevel_measure = measures.absolute;
    r.predicted_superlevel = pred.superlevel;
    r.weak_quasi_norm = wqn;
    r.grid_size = static_cast<long>(samples.size());
    out.push_back(r);
  }
  return out;
}

/// Dispatches on p.scalar_mode.
std::vector<ExperimentReport> run_experiment(const CounterexampleParams& p,
                                             std::span<const double> q_list,
                                             const ExperimentOptions& opt = {},
                                             const Executor& exec = Executor());

/// Header of the experiment CSV.
std::string experiment_csv_header();
std::string experiment_csv_row(const ExperimentReport& r);

/// Runs every parameter set for every q and writes one CSV row per pair,
/// prefixed with epsilon, M, N and scalar columns.
void sweep(std::span<const CounterexampleParams> params, std::span<const double> q_list,
           std::ostream& out, const ExperimentOptions& opt = {},
           const Executor& exec = Executor());

}  // namespace maxvar
