#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxvar/errors.hpp"
#include "maxvar/scalar.hpp"
#include "maxvar/summation.hpp"

namespace maxvar {

namespace detail {

template <Real T>
void require_strictly_increasing(const std::vector<T>& xs, const char* what) {
  using std::isfinite;
  using boost::multiprecision::isfinite;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!isfinite(xs[i])) {
      throw Error(ErrorKind::InvalidInput, std::string(what) + " must be finite");
    }
    if (i > 0 && !(xs[i - 1] < xs[i])) {
      throw Error(ErrorKind::InvalidInput,
                  std::string(what) + " must be strictly increasing");
    }
  }
}

// Index of the breakpoint closest to zero.
template <Real T>
std::size_t nearest_to_zero(const std::vector<T>& xs) {
  using std::abs;
  std::size_t best = 0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (abs(xs[i]) < abs(xs[best])) best = i;
  }
  return best;
}

}  // namespace detail

/// Piecewise-constant function. Piece k is (b_{k-1}, b_k) with b_{-1} = -inf
/// and b_m = +inf, so there is one more value than breakpoints. At a
/// breakpoint the value of the piece to the right is reported.
template <Real T>
class StepFunction {
 public:
  StepFunction(std::vector<T> breakpoints, std::vector<T> values)
      : bp_(std::move(breakpoints)), values_(std::move(values)) {
    detail::require_strictly_increasing(bp_, "step breakpoints");
    if (values_.size() != bp_.size() + 1) {
      throw Error(ErrorKind::InvalidInput,
                  "step function needs one value per piece");
    }
    if (!bp_.empty()) {
      origin_ = detail::nearest_to_zero(bp_);
      prefix_.assign(bp_.size(), T(0));
      CompensatedSum<T> acc;
      for (std::size_t i = origin_ + 1; i < bp_.size(); ++i) {
        acc.add(values_[i] * (bp_[i] - bp_[i - 1]));
        prefix_[i] = acc.value();
      }
      CompensatedSum<T> left;
      for (std::size_t i = origin_; i-- > 0;) {
        left.add(-values_[i + 1] * (bp_[i + 1] - bp_[i]));
        prefix_[i] = left.value();
      }
    }
  }

  const std::vector<T>& breakpoints() const { return bp_; }
  const std::vector<T>& values() const { return values_; }
  std::size_t piece_count() const { return values_.size(); }

  std::size_t piece_index(const T& x) const {
    return static_cast<std::size_t>(
        std::upper_bound(bp_.begin(), bp_.end(), x) - bp_.begin());
  }

  T eval(const T& x) const { return values_[piece_index(x)]; }

  /// Exact signed integral over (y, x).
  T integral(const T& y, const T& x) const {
    if (bp_.empty()) return values_[0] * (x - y);
    return primitive(x) - primitive(y);
  }

  T average(const T& y, const T& x) const {
    if (y == x) throw Error(ErrorKind::DegenerateInterval, "average over y == x");
    return integral(y, x) / (x - y);
  }

  /// Sum of absolute jumps.
  T total_variation() const { return jump_sum<T>(values_); }

 private:
  // Integral from the breakpoint nearest zero to x.
  T primitive(const T& x) const {
    const std::size_t k = piece_index(x);
    // Reference breakpoint on the side of x's piece nearest the origin.
    std::size_t j;
    if (k == 0) {
      j = 0;
    } else if (k == bp_.size()) {
      j = bp_.size() - 1;
    } else {
      j = (k - 1 >= origin_) ? k - 1 : k;
    }
    return prefix_[j] + values_[k] * (x - bp_[j]);
  }

  std::vector<T> bp_;
  std::vector<T> values_;
  std::size_t origin_ = 0;
  std::vector<T> prefix_;
};

template <Real T>
struct ClassReport {
  bool single_peak = false;
  /// Peak location (nearest point to zero on the top plateau).
  std::optional<T> peak;
  /// True when the function is nondecreasing on (-inf, 0) and nonincreasing
  /// on (0, inf).
  bool peak_at_zero = false;
  /// Minimal two-sided difference-quotient bound; empty when unbounded.
  std::optional<T> K;
  std::string note;
};

/// Continuous piecewise-linear function with two linear tails.
///
/// Breakpoints b_0 < ... < b_{m-1}; slopes has m + 1 entries: left tail,
/// bounded pieces, right tail. Node values are derived once from a single
/// anchor value outward, so continuity holds by construction.
template <Real T>
class PwlFunction {
 public:
  PwlFunction(std::vector<T> breakpoints, T anchor_value, std::vector<T> slopes,
              std::size_t anchor_index = 0)
      : bp_(std::move(breakpoints)),
        slopes_(std::move(slopes)),
        anchor_index_(anchor_index) {
    using std::isfinite;
    using boost::multiprecision::isfinite;
    if (bp_.empty()) {
      throw Error(ErrorKind::InvalidInput, "at least one breakpoint required");
    }
    detail::require_strictly_increasing(bp_, "breakpoints");
    if (slopes_.size() != bp_.size() + 1) {
      throw Error(ErrorKind::InvalidInput,
                  "slopes must have breakpoints + 1 entries");
    }
    for (const T& s : slopes_) {
      if (!isfinite(s)) throw Error(ErrorKind::InvalidInput, "slopes must be finite");
    }
    if (anchor_index_ >= bp_.size()) {
      throw Error(ErrorKind::InvalidInput, "anchor index out of range");
    }
    if (!isfinite(anchor_value)) {
      throw Error(ErrorKind::InvalidInput, "anchor value must be finite");
    }
    derive_values(anchor_value);
    derive_primitive();
  }

  const std::vector<T>& breakpoints() const { return bp_; }
  const std::vector<T>& slopes() const { return slopes_; }
  const std::vector<T>& node_values() const { return vals_; }
  std::size_t anchor_index() const { return anchor_index_; }
  /// Value at the anchor breakpoint.
  T anchor_value() const { return vals_[anchor_index_]; }
  std::size_t piece_count() const { return slopes_.size(); }

  /// 0 for the left tail, k for (b_{k-1}, b_k), m for the right tail. A
  /// breakpoint belongs to the piece on its right.
  std::size_t piece_index(const T& x) const {
    return static_cast<std::size_t>(
        std::upper_bound(bp_.begin(), bp_.end(), x) - bp_.begin());
  }

  bool is_breakpoint(const T& x) const {
    return std::binary_search(bp_.begin(), bp_.end(), x);
  }

  T eval(const T& x) const {
    const std::size_t k = piece_index(x);
    const std::size_t m = bp_.size();
    if (k == 0) return vals_[0] + slopes_[0] * (x - bp_[0]);
    if (k == m) return vals_[m - 1] + slopes_[m] * (x - bp_[m - 1]);
    if (x - bp_[k - 1] <= bp_[k] - x) {
      return vals_[k - 1] + slopes_[k] * (x - bp_[k - 1]);
    }
    return vals_[k] - slopes_[k] * (bp_[k] - x);
  }

  /// Slope of the piece containing x (right slope at breakpoints).
  T slope_at(const T& x) const { return slopes_[piece_index(x)]; }

  /// Integral from the breakpoint nearest zero to x; differences of this are
  /// cheap but should only be taken across the origin or between nearby
  /// points.
  T primitive(const T& x) const {
    const std::size_t k = piece_index(x);
    const std::size_t m = bp_.size();
    std::size_t j;
    if (k == 0) {
      j = 0;
    } else if (k == m) {
      j = m - 1;
    } else {
      j = (x - bp_[k - 1] <= bp_[k] - x) ? k - 1 : k;
    }
    return cum_[j] + (x - bp_[j]) * (vals_[j] + eval(x)) / T(2);
  }

  /// Exact signed integral over (y, x): per-piece trapezoids summed from the
  /// largest contribution down.
  T integral(const T& y, const T& x) const {
    if (y == x) return T(0);
    if (y > x) return -integral(x, y);
    std::vector<T> terms;
    T lo = y;
    T f_lo = eval(y);
    for (std::size_t i = piece_index(y); i < bp_.size() && bp_[i] < x; ++i) {
      terms.push_back((bp_[i] - lo) * (f_lo + vals_[i]) / T(2));
      lo = bp_[i];
      f_lo = vals_[i];
    }
    terms.push_back((x - lo) * (f_lo + eval(x)) / T(2));
    return sum_by_magnitude(std::move(terms));
  }

  T average(const T& y, const T& x) const {
    if (y == x) throw Error(ErrorKind::DegenerateInterval, "average over y == x");
    return integral(y, x) / (x - y);
  }

  StepFunction<T> derivative() const { return StepFunction<T>(bp_, slopes_); }

  /// x -> f(-x).
  PwlFunction reflect() const {
    const std::size_t m = bp_.size();
    std::vector<T> bp(m);
    std::vector<T> sl(m + 1);
    for (std::size_t i = 0; i < m; ++i) bp[i] = -bp_[m - 1 - i];
    for (std::size_t i = 0; i <= m; ++i) sl[i] = -slopes_[m - i];
    return PwlFunction(std::move(bp), vals_[anchor_index_], std::move(sl),
                       m - 1 - anchor_index_);
  }

  /// Top plateau [lo, hi] if the function is single-peak.
  std::optional<std::pair<T, T>> peak_plateau() const {
    const std::size_t m = bp_.size();
    // A rising right tail or falling left tail has no maximum.
    if (slopes_[m] > T(0) || slopes_[0] < T(0)) return std::nullopt;
    std::size_t i = 0;
    while (i <= m && slopes_[i] >= T(0)) ++i;
    for (std::size_t j = i; j <= m; ++j) {
      if (slopes_[j] > T(0)) return std::nullopt;
    }
    // Pieces [0, i) are nondecreasing, [i, m] nonincreasing.
    std::size_t last_pos = m + 1;
    for (std::size_t j = 0; j < i; ++j) {
      if (slopes_[j] > T(0)) last_pos = j;
    }
    std::size_t first_neg = m + 1;
    for (std::size_t j = i; j <= m; ++j) {
      if (slopes_[j] < T(0)) {
        first_neg = j;
        break;
      }
    }
    const T inf = std::numeric_limits<T>::infinity();
    T lo = last_pos == m + 1 ? -inf : bp_[last_pos];
    T hi = first_neg == m + 1 ? inf : bp_[first_neg - 1];
    if (last_pos != m + 1 && first_neg != m + 1 && hi < lo) return std::nullopt;
    return std::make_pair(lo, hi);
  }

  std::optional<T> peak() const {
    auto plateau = peak_plateau();
    if (!plateau) return std::nullopt;
    return std::clamp(T(0), plateau->first, plateau->second);
  }

  /// Nondecreasing on (-inf, 0) and nonincreasing on (0, inf).
  bool single_peak_at_zero() const {
    auto plateau = peak_plateau();
    return plateau && plateau->first <= T(0) && T(0) <= plateau->second;
  }

  ClassReport<T> classify() const {
    using std::abs;
    ClassReport<T> report;
    auto plateau = peak_plateau();
    report.single_peak = plateau.has_value();
    if (!plateau) {
      report.note = "not single-peak";
      return report;
    }
    report.peak = std::clamp(T(0), plateau->first, plateau->second);
    report.peak_at_zero = plateau->first <= T(0) && T(0) <= plateau->second;
    if (!report.peak_at_zero) {
      report.note = "peak not at 0";
      return report;
    }
    if (!(plateau->first == T(0) && plateau->second == T(0))) {
      report.note = "flat top";
      return report;
    }
    T K = T(1);
    for (const T& s : slopes_) {
      if (s == T(0)) {
        report.note = "zero slope";
        return report;
      }
      K = std::max(K, std::max(abs(s), T(1) / abs(s)));
    }
    report.K = K;
    return report;
  }

 private:
  void derive_values(const T& anchor_value) {
    const std::size_t m = bp_.size();
    vals_.assign(m, T(0));
    vals_[anchor_index_] = anchor_value;
    for (std::size_t i = anchor_index_ + 1; i < m; ++i) {
      vals_[i] = vals_[i - 1] + slopes_[i] * (bp_[i] - bp_[i - 1]);
    }
    for (std::size_t i = anchor_index_; i-- > 0;) {
      vals_[i] = vals_[i + 1] - slopes_[i + 1] * (bp_[i + 1] - bp_[i]);
    }
  }

  void derive_primitive() {
    const std::size_t m = bp_.size();
    origin_ = detail::nearest_to_zero(bp_);
    cum_.assign(m, T(0));
    CompensatedSum<T> right;
    for (std::size_t i = origin_ + 1; i < m; ++i) {
      right.add((bp_[i] - bp_[i - 1]) * (vals_[i] + vals_[i - 1]) / T(2));
      cum_[i] = right.value();
    }
    CompensatedSum<T> left;
    for (std::size_t i = origin_; i-- > 0;) {
      left.add(-(bp_[i + 1] - bp_[i]) * (vals_[i + 1] + vals_[i]) / T(2));
      cum_[i] = left.value();
    }
  }

  std::vector<T> bp_;
  std::vector<T> slopes_;
  std::size_t anchor_index_;
  std::vector<T> vals_;
  std::size_t origin_ = 0;
  std::vector<T> cum_;
};

template <Real T>
PwlFunction<T> make_hat(T left_slope, T right_slope) {
  return PwlFunction<T>({T(0)}, T(0), {left_slope, -right_slope}, 0);
}

/// max(0, 1 - |x|).
template <Real T>
PwlFunction<T> make_triangle_bump() {
  return PwlFunction<T>({T(-1), T(0), T(1)}, T(1), {T(0), T(1), T(-1), T(0)}, 1);
}

template <Real T>
PwlFunction<T> make_constant(T value) {
  return PwlFunction<T>({T(0)}, value, {T(0), T(0)}, 0);
}

template <Real T, Real U>
PwlFunction<T> convert(const PwlFunction<U>& f) {
  std::vector<T> bp;
  std::vector<T> sl;
  for (const U& b : f.breakpoints()) bp.push_back(static_cast<T>(b));
  for (const U& s : f.slopes()) sl.push_back(static_cast<T>(s));
  return PwlFunction<T>(std::move(bp), static_cast<T>(f.anchor_value()),
                        std::move(sl), f.anchor_index());
}

}  // namespace maxvar
