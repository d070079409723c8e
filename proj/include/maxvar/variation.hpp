#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "maxvar/errors.hpp"
#include "maxvar/pwl.hpp"
#include "maxvar/scalar.hpp"
#include "maxvar/summation.hpp"

namespace maxvar {

/// Values sampled at strictly increasing abscissae.
struct SampledSignal {
  std::vector<double> abscissae;
  std::vector<double> values;

  SampledSignal() = default;
  SampledSignal(std::vector<double> x, std::vector<double> v);

  std::size_t size() const { return values.size(); }
};

namespace detail {

// Indices of the two ends and every strict turning point, with runs of equal
// values collapsed to their first index.
template <Real T>
std::vector<std::size_t> turning_points(std::span<const T> v) {
  std::vector<std::size_t> idx;
  if (v.empty()) return idx;
  std::vector<std::size_t> runs;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (runs.empty() || v[i] != v[runs.back()]) runs.push_back(i);
  }
  idx.push_back(runs.front());
  for (std::size_t k = 1; k + 1 < runs.size(); ++k) {
    const T& l = v[runs[k - 1]];
    const T& c = v[runs[k]];
    const T& r = v[runs[k + 1]];
    if ((c > l && c > r) || (c < l && c < r)) idx.push_back(runs[k]);
  }
  if (runs.size() > 1) idx.push_back(runs.back());
  return idx;
}

template <Real T>
T power_of(const T& base, double q) {
  using std::pow;
  if (q == 1.0) return base;
  if (q == 2.0) return base * base;
  return pow(base, T(q));
}

template <Real T>
T root_of(const T& s, double q) {
  using std::pow;
  using std::sqrt;
  if (q == 1.0) return s;
  if (q == 2.0) return sqrt(s);
  return pow(s, T(1) / T(q));
}

inline void require_exponent(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) {
    throw Error(ErrorKind::InvalidExponent, "q must be a finite number >= 1");
  }
}

}  // namespace detail

/// Sum of |consecutive differences|.
template <Real T>
T total_variation(std::span<const T> v) {
  return jump_sum<T>(v);
}

template <Real T>
T total_variation(const StepFunction<T>& s) {
  return s.total_variation();
}

/// q-variation of a value sequence. q = 1 is the plain sum of differences;
/// otherwise a quadratic dynamic program over turning points.
template <Real T>
T q_variation(std::span<const T> v, double q) {
  using std::abs;
  detail::require_exponent(q);
  if (q == 1.0) return total_variation(v);
  const auto idx = detail::turning_points(v);
  std::vector<T> best(idx.size(), T(0));
  T top = T(0);
  for (std::size_t j = 0; j < idx.size(); ++j) {
    T b = T(0);
    for (std::size_t i = 0; i < j; ++i) {
      b = std::max(b, best[i] + detail::power_of(abs(v[idx[j]] - v[idx[i]]), q));
    }
    best[j] = b;
    top = std::max(top, b);
  }
  return detail::root_of(top, q);
}

/// max - min.
template <Real T>
T sup_variation(std::span<const T> v) {
  if (v.empty()) return T(0);
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

/// max over sample values lambda of lambda times the total width of samples
/// whose value is at least lambda.
template <Real T>
T weak_quasi_norm(std::span<const T> values, std::span<const T> widths) {
  if (values.size() != widths.size()) {
    throw Error(ErrorKind::InvalidInput, "values and widths differ in length");
  }
  std::vector<std::size_t> order(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t l, std::size_t r) { return values[l] > values[r]; });
  T best = T(0);
  CompensatedSum<T> width;
  for (std::size_t k = 0; k < order.size();) {
    const T lambda = values[order[k]];
    while (k < order.size() && values[order[k]] == lambda) width.add(widths[order[k++]]);
    if (lambda > T(0)) best = std::max(best, lambda * width.value());
  }
  return best;
}

/// Exhaustive enumeration over all increasing index subsequences.
double q_variation_bruteforce(std::span<const double> v, double q);

double total_variation(const SampledSignal& s);
double q_variation(const SampledSignal& s, double q);
double sup_variation(const SampledSignal& s);
double q_variation_bruteforce(const SampledSignal& s, double q);

}  // namespace maxvar
