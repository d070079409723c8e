#pragma once

#include <span>
#include <string>
#include <vector>

#include "maxvar/executor.hpp"
#include "maxvar/pwl.hpp"

namespace maxvar {

/// phi(x) = c exp(-1 / (1 - x^2)) on (-1, 1), normalized to unit mass.
struct Kernel {
  static double normalization();
  static double phi(double x);
  /// 2 * int_0^|u| phi; equals 1 for |u| >= 1.
  static double psi(double u);
  /// sup |phi|, attained at 0.
  static double sup_phi();
};

/// t^2 psi(x / t).
double psi(double t, double x);

struct MollifierConfig {
  int n = 16;
  /// Quadrature nodes per unit length of the kernel variable.
  int quadrature_points = 128;

  void validate() const;
};

/// g_n(x) - |x| / sqrt(n) with g_n(x) = int phi(y) f(x + psi_{1/n}(x) y) dy.
double mollified_value(const PwlFunction<double>& f, const MollifierConfig& cfg, double x);

/// g_n(x) alone.
double smoothed_value(const PwlFunction<double>& f, const MollifierConfig& cfg, double x);

/// f_n'(x) for x != 0, from g_n' = int phi(y) f'(u) (1 + y psi_{1/n}'(x)) dy.
double mollified_derivative(const PwlFunction<double>& f, const MollifierConfig& cfg,
                            double x);

/// Samples f_n on a geometric grid on both sides of 0 (points_per_decade
/// per decade, plus dense points around every breakpoint of f) and joins them
/// by chords, anchored at f_n(0) = f(0). Tails continue with the exact
/// asymptotic slopes.
PwlFunction<double> materialize(const PwlFunction<double>& f, const MollifierConfig& cfg,
                                int points_per_decade = 4096,
                                const Executor& exec = Executor());

struct ApproximationReport {
  int n = 0;
  double sup_error = 0.0;
  double var_fprime = 0.0;
  double var_fn_prime = 0.0;
  double slope_window_lo = 0.0;
  double slope_window_hi = 0.0;
  long slope_window_violations = 0;
  double delta_n = 0.0;
  long contact_violations = 0;
  long grid_points = 0;
};

/// Diagnostics of f_n against f on the given grid (0 is skipped).
ApproximationReport approximation_report(const PwlFunction<double>& f,
                                         const MollifierConfig& cfg,
                                         std::span<const double> grid,
                                         const Executor& exec = Executor());

}  // namespace maxvar
