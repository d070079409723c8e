#pragma once

#include <algorithm>
#include <cstddef>
#include <type_traits>
#include <vector>

#include "maxvar/scalar.hpp"

namespace maxvar {

// Neumaier compensated accumulator.
template <Real T>
class CompensatedSum {
 public:
  void add(const T& v) {
    using std::abs;
    T t = sum_ + v;
    if (abs(sum_) >= abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_ = T(0);
  T comp_ = T(0);
};

/// Sums terms from the largest magnitude downward with compensation.
template <Real T>
T sum_by_magnitude(std::vector<T> terms) {
  using std::abs;
  std::sort(terms.begin(), terms.end(),
            [](const T& a, const T& b) { return abs(a) > abs(b); });
  CompensatedSum<T> acc;
  for (const T& t : terms) acc.add(t);
  return acc.value();
}

/// Accumulator type for sums of differences: binary64 input is widened to
/// the extended scalar, where differences of doubles of similar magnitude
/// and their short sums are exact.
template <Real T>
using WideOf = std::conditional_t<std::is_same_v<T, double>, Extended, T>;

/// Sum of |v[i] - v[i-1]|, rounded once to T.
template <Real T, typename Seq>
T jump_sum(const Seq& v) {
  using std::abs;
  using W = WideOf<T>;
  CompensatedSum<W> acc;
  for (std::size_t i = 1; i < v.size(); ++i) acc.add(abs(W(v[i]) - W(v[i - 1])));
  return static_cast<T>(acc.value());
}

}  // namespace maxvar
