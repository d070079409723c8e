#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "maxvar/executor.hpp"
#include "maxvar/maximal.hpp"
#include "maxvar/pwl.hpp"

namespace maxvar {

/// Sorted disjoint closed intervals [l_i, r_i].
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<std::pair<double, double>> intervals);

  const std::vector<std::pair<double, double>>& intervals() const { return iv_; }
  bool empty() const { return iv_.empty(); }
  double inf() const;
  double sup() const;
  bool contains(double x) const;
  /// True when the open interval (a, b) meets the set.
  bool meets_open(double a, double b) const;
  /// Point of the set closest to p (ties go left).
  double nearest(double p) const;

 private:
  std::vector<std::pair<double, double>> iv_;
};

/// Points u_1 < ... < u_N of Z with u_1 = inf Z, u_N = sup Z,
/// u_k + 1 < u_{k+2}, and u_{k+1} < u_k + 3 unless (u_k, u_{k+1}) misses Z.
/// Gaps of length >= 2 split Z into blocks; each block is chained by
/// repeatedly taking the point of Z nearest to the previous point plus 2.
std::vector<double> zero_partition(const IntervalSet& Z);

/// Checks every stated condition on u; returns a description of the first
/// failure, or nothing.
std::optional<std::string> partition_defect(const IntervalSet& Z, std::span<const double> u);

enum class CheckOutcome { Holds, Violated, NotApplicable };

std::string_view outcome_name(CheckOutcome o);

struct TwoZerosCheck {
  CheckOutcome outcome = CheckOutcome::NotApplicable;
  double w0 = 0.0;
  double w1 = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// w_i = v_i (sqrt(1 + u_i / v_i) - 1); applicable when w_i <= D v_i for
/// both i, then |w_1 - w_0| <= 2 (2 + D)^2 (|u_1 - u_0| + |v_1 - v_0|) + 1e-12.
TwoZerosCheck check_two_zeros_bound(double u0, double u1, double v0, double v1, double D);

struct DecayCheck {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double measured_c = 0.0;
};

/// sup of -a(x)/x over 65 geometric points of [x0, x1].
double measured_contact_ratio(const MaximalSolver<double>& solver, double x0, double x1);

/// -(Mf)'(x1) >= e^{-c} (x0/x1)^{2+c} (-(Mf)'(x0)) (1 - 1e-9) for 0 < x0 <= x1.
/// Throws ClassViolation when c is below the measured sup of -a(x)/x.
DecayCheck check_decay(const MaximalSolver<double>& solver, double x0, double x1, double c);
DecayCheck check_decay(const PwlFunction<double>& f, double x0, double x1, double c);

struct LowSpeedCheck {
  CheckOutcome outcome = CheckOutcome::NotApplicable;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Relative size of (Mf)'' against its two terms; zero counts as zero.
double second_derivative_scale(const MaximalEvaluation<double>& e, double fprime_x);

/// Requires (Mf)''(x_i) = 0 (relative 1e-9) and -a'(x_i) <= D at both points.
LowSpeedCheck check_low_speed(const MaximalSolver<double>& solver, double x0, double x1,
                              double D);
LowSpeedCheck check_low_speed(const PwlFunction<double>& f, double x0, double x1, double D);

struct ZeroSearch {
  /// Degenerate intervals at located zeros, or the whole range when
  /// identically_zero is set.
  IntervalSet zeros;
  /// Sign changes across a jump of (Mf)'' (a kink of f met by x or a(x)).
  std::vector<double> jumps;
  bool identically_zero = false;
};

/// Zeros of (Mf)'' on [lo, hi] (same sign, 0 excluded) from a geometric grid:
/// grid points where |(Mf)''| <= 1e-9 times its local scale, and sign
/// changes refined by bisection.
ZeroSearch find_second_derivative_zeros(const PwlFunction<double>& f, double lo, double hi,
                                        int points_per_decade = 64);

/// e^{-c - lambda (2 + c)} (1 - e^{-lambda}) / c.
double d_c_lambda(double c, double lambda);

/// Random even single-peak function: 3..12 positive breakpoints log-uniform
/// in [1e-2, 1e2], slope magnitudes log-uniform in [1e-3, 1e3].
PwlFunction<double> random_even_instance(std::uint64_t seed, std::uint64_t index);

/// Per-instance seed derived from (seed, index).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

struct RadialInstance {
  double ratio = 0.0;
  double var_dmf = 0.0;
  double var_fprime = 0.0;
  long contact_violations = 0;
  long grid_points = 0;
};

/// var((Mf)') / var(f') for even f from the refined positive profile:
/// (2 var_(0,inf) + 2 |(Mf)'(0+)|) / var(f'). Also counts grid points with
/// -a(x) > x (1 + 1e-9).
RadialInstance radial_ratio(const PwlFunction<double>& f);

struct RadialReport {
  long count = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  bool all_finite = true;
  long contact_violations = 0;
  /// Counts of ratios in [k/10, (k+1)/10) for k < 19 and [1.9, inf) last.
  std::vector<long> histogram;
  std::vector<double> ratios;
};

RadialReport radial_experiment(std::uint64_t seed, long count,
                               const Executor& exec = Executor());

struct CheckRecord {
  std::string name;
  CheckOutcome outcome = CheckOutcome::Holds;
  std::string witness;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  long count = 0;
  long passed = 0;
  long failed = 0;
  long not_applicable = 0;
  /// One record per failure, plus summary records.
  std::vector<CheckRecord> records;
};

/// Suites: two-zeros, decay, partition, radial, low-speed.
SuiteReport run_suite(const std::string& suite, std::uint64_t seed, long count,
                      const Executor& exec = Executor());

/// Random IntervalSet with 1..8 components (some degenerate) for property runs.
IntervalSet random_interval_set(std::uint64_t seed, std::uint64_t index);

}  // namespace maxvar
