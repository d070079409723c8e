#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "maxvar/errors.hpp"
#include "maxvar/executor.hpp"
#include "maxvar/pwl.hpp"
#include "maxvar/scalar.hpp"

namespace maxvar {

/// Per-point record of the uncentered maximal function and its derivatives.
/// For x > 0 the optimal interval is [a, x]; for x < 0 it is [x, a].
template <Real T>
struct MaximalEvaluation {
  T x{};
  T mf{};
  T a{};
  T dmf{};
  std::optional<T> da;    // empty when a sits on a breakpoint
  std::optional<T> ddmf;  // empty when x or a sits on a breakpoint
  T luiro_residual{};
  T stationarity_residual{};
  /// The optimal interval collapsed to {x}; mf = f(x), dmf = f'(x).
  bool degenerate = false;
};

template <Real T>
struct MaximalValue {
  T mf;
  T a;
};

namespace detail {

template <Real T>
T sqrt_of(const T& v) {
  using std::sqrt;
  return sqrt(v);
}

// Nonnegative-distance candidates u of (s/2) u^2 + s d u + c0 = 0 with d >= 0.
// Solved in the variable v = u / d so that c0 / s never has to be formed; in
// the flat tails of wide-range inputs that quotient overflows while the roots
// themselves are moderate.
template <Real T>
std::vector<T> stationary_offsets(const T& s, const T& d, const T& c0) {
  using std::abs;
  if (s == T(0)) return {};
  if (d == T(0)) {
    if ((c0 > T(0)) == (s > T(0)) && c0 != T(0)) return {};
    return {sqrt_of(T(2)) * sqrt_of(abs(c0)) / sqrt_of(abs(s))};
  }
  const T gamma = (T(2) * c0 / d) / (s * d);
  const T disc = T(1) - gamma;
  if (!(disc >= T(0))) return {};
  const T v1 = T(-1) - sqrt_of(disc);
  return {d * v1, d * (gamma / v1)};
}

template <Real T>
T bisect(auto&& phi, T lo, T hi, int iterations = 400) {
  T flo = phi(lo);
  for (int i = 0; i < iterations; ++i) {
    const T mid = lo + (hi - lo) / T(2);
    if (mid <= lo || mid >= hi) break;
    const T fm = phi(mid);
    if ((fm > T(0)) == (flo > T(0))) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return lo + (hi - lo) / T(2);
}

/// Maximal value and contact point for x > 0 of a function that is
/// nondecreasing left of 0 and nonincreasing right of 0.
///
/// Candidates are every breakpoint left of x plus the per-piece roots of the
/// stationarity condition f(y) = A_f(y, x), which on a piece of slope s with
/// u = r - y reads (s/2) u^2 + s d u + (I_r - f_r d) = 0.
template <Real T>
MaximalValue<T> maximal_value_right(const PwlFunction<T>& f, const T& x) {
  using std::abs;
  const auto& bp = f.breakpoints();
  const auto& sl = f.slopes();
  const std::size_t m = bp.size();
  const T px = f.primitive(x);
  const T fx = f.eval(x);
  const T tol = stationarity_tolerance<T>();
  // Primitive differences cancel badly over short intervals, e.g. a
  // breakpoint a few ulps left of x; sum the pieces directly there.
  auto average_from = [&](const T& y) {
    if (x - y <= T(1e-4) * (abs(x) + abs(y))) return f.integral(y, x) / (x - y);
    return (px - f.primitive(y)) / (x - y);
  };

  T best_a = x;
  T best = fx;
  T best_res = T(0);
  bool overflow = false;
  // Values within rounding of each other: a stationary candidate beats a
  // non-stationary one (near a contact event a breakpoint can match the true
  // maximum to the last bit); among stationary ones the smallest |a| wins.
  auto consider = [&](const T& y) {
    if (!(y < x)) return;
    const T value = average_from(y);
    if (!(abs(value) <= std::numeric_limits<T>::max())) {
      overflow = true;
      return;
    }
    const T scale = std::max(T(1), abs(best));
    const T tie = T(8) * std::numeric_limits<T>::epsilon() * scale;
    const T res = abs(f.eval(y) - value);
    bool take = value > best + tie;
    if (!take && value >= best - tie) {
      const bool stat = res <= tol * scale;
      const bool best_stat = best_res <= tol * scale;
      if (stat != best_stat) {
        take = stat;
      } else {
        take = stat ? abs(y) < abs(best_a) : res < best_res;
      }
    }
    if (take) {
      best = value;
      best_a = y;
      best_res = res;
    }
  };

  for (std::size_t i = 0; i < m && bp[i] < x; ++i) consider(bp[i]);

  const std::size_t last = f.piece_index(x);
  for (std::size_t k = 0; k <= last; ++k) {
    const bool left_tail = (k == 0);
    const T s = sl[k];
    if (s == T(0)) continue;
    const T r = (k < m && bp[k] < x) ? bp[k] : x;
    const T fr = (r == x) ? fx : f.eval(r);
    const T d = x - r;
    const T c0 = (px - f.primitive(r)) - fr * d;
    for (const T& u : stationary_offsets(s, d, c0)) {
      if (u < T(0)) continue;
      if (!left_tail && u > r - bp[k - 1]) continue;
      consider(r - u);
    }
  }

  // A root whose average is not representable cannot be ruled out.
  if (overflow) {
    throw Error(ErrorKind::PrecisionExceeded,
                "an average over the optimal interval exceeds the exponent range of the scalar");
  }

  if (sl[0] == T(0) && f.node_values()[0] > best + tol * std::max(T(1), abs(best))) {
    throw Error(ErrorKind::UnattainedSupremum,
                "averages approach the flat left tail only at infinity");
  }

  // Polish by bisection on phi(y) = A_f(y, x) - f(y) inside the winning piece.
  const T scale = std::max(T(1), abs(best));
  if (best_a < x && abs(f.eval(best_a) - best) > tol * scale) {
    const std::size_t k = f.piece_index(best_a);
    auto phi = [&](const T& y) { return average_from(y) - f.eval(y); };
    T lo = k == 0 ? best_a - (x - best_a) : bp[k - 1];
    T hi = (k < m && bp[k] < x) ? bp[k] : x - (x - best_a) / T(1024);
    if (k > 0 && best_a == bp[k - 1] && k >= 2) lo = bp[k - 2];
    if (phi(lo) > T(0) && phi(hi) < T(0)) {
      const T a = bisect<T>(phi, lo, hi);
      const T value = average_from(a);
      if (value >= best - tol * scale) {
        best = value;
        best_a = a;
      }
    }
    if (abs(f.eval(best_a) - best) > T(1e3) * tol * scale) {
      throw Error(ErrorKind::SolverFailure, "stationarity residual too large");
    }
  }
  return {best, best_a};
}

/// The x > 0 whose contact point is a < 0: the root of
/// H(x) = int_a^x (f - f(a)) beyond the point where f drops below f(a).
template <Real T>
std::optional<T> contact_abscissa_right(const PwlFunction<T>& f, const T& a) {
  const auto& bp = f.breakpoints();
  const auto& sl = f.slopes();
  const std::size_t m = bp.size();
  // H(l) = int_a^r (f - f(a)) + int_r^l (f - f(a)) with r the right end of
  // a's piece; the first part is the exact triangle (s/2)(r - a)^2, which
  // stays accurate when f is nearly flat around a.
  const std::size_t ka = f.piece_index(a);
  const T ra = ka < m ? bp[ka] : T(0);
  const T head = sl[ka] * (ra - a) * (ra - a) / T(2);
  const T pr = f.primitive(ra);
  const T fr = f.eval(ra);
  T l = T(0);
  for (std::size_t k = f.piece_index(T(0)); k <= m; ++k) {
    const bool tail = (k == m);
    const T r = tail ? T(0) : bp[k];
    if (!tail && r <= l) continue;
    const T rise = sl[ka] * (ra - a);  // f(ra) - f(a)
    const T h = head + ((f.primitive(l) - pr) - fr * (l - ra)) + rise * (l - ra);
    const T beta = (f.eval(l) - fr) + rise;
    const T s = sl[k];
    std::optional<T> u;
    if (h <= T(0) && l > T(0)) {
      u = T(0);
    } else if (s == T(0)) {
      if (beta < T(0)) u = -h / beta;
    } else {
      const T disc = beta * beta - T(2) * s * h;
      if (disc >= T(0)) {
        const T sq = sqrt_of(disc);
        if (s < T(0)) {
          u = beta <= T(0) ? T(2) * h / (-beta + sq) : (-beta - sq) / s;
        } else if (beta < T(0)) {
          // Rising piece: first crossing is the smaller positive root.
          u = T(2) * h / (-beta + sq);
        }
      }
    }
    if (u && *u >= T(0) && (tail || *u <= r - l)) return l + *u;
    if (tail) break;
    l = r;
  }
  return std::nullopt;
}

}  // namespace detail

/// Uncentered maximal function solver for a function that is nondecreasing
/// on (-inf, 0) and nonincreasing on (0, inf). Holds the function, its
/// reflection and its derivative; all queries are const and thread-safe.
template <Real T>
class MaximalSolver {
 public:
  explicit MaximalSolver(PwlFunction<T> f)
      : f_(std::move(f)), reflected_(f_.reflect()), df_(f_.derivative()) {
    if (!f_.single_peak_at_zero()) {
      throw Error(ErrorKind::NotSinglePeak,
                  "function must be nondecreasing left of 0 and nonincreasing right of 0");
    }
  }

  const PwlFunction<T>& function() const { return f_; }
  const StepFunction<T>& derivative() const { return df_; }

  MaximalValue<T> value(const T& x) const {
    if (x == T(0)) return {f_.eval(T(0)), T(0)};
    if (x > T(0)) return detail::maximal_value_right(f_, x);
    auto v = detail::maximal_value_right(reflected_, -x);
    return {v.mf, -v.a};
  }

  /// The x whose contact point is a, if any.
  std::optional<T> contact_abscissa(const T& a) const {
    if (a < T(0)) return detail::contact_abscissa_right(f_, a);
    if (a > T(0)) {
      auto x = detail::contact_abscissa_right(reflected_, -a);
      if (x) return -*x;
    }
    return std::nullopt;
  }

  MaximalEvaluation<T> evaluate(const T& x) const {
    if (x == T(0)) {
      MaximalEvaluation<T> e;
      e.x = T(0);
      e.mf = f_.eval(T(0));
      e.degenerate = true;
      return e;
    }
    return evaluate_pair(x, value(x).a);
  }

  MaximalEvaluation<T> evaluate_at_contact(const T& a) const {
    auto x = contact_abscissa(a);
    if (!x) {
      throw Error(ErrorKind::SolverFailure, "point is not the contact of any x");
    }
    return evaluate_pair(*x, a);
  }

  /// Applies the derivative formulas to a known optimal pair (x, a).
  MaximalEvaluation<T> evaluate_pair(const T& x, const T& a) const {
    using std::abs;
    MaximalEvaluation<T> e;
    e.x = x;
    e.a = a;
    const T fx = f_.eval(x);
    if (x == a) {
      e.degenerate = true;
      e.mf = fx;
      e.dmf = f_.slope_at(x);
      return e;
    }
    e.mf = (f_.primitive(x) - f_.primitive(a)) / (x - a);
    e.stationarity_residual = abs(f_.eval(a) - e.mf);
    e.dmf = (fx - e.mf) / (x - a);
    e.luiro_residual = abs(e.dmf - df_.average(a, x));
    const T fpa = f_.slope_at(a);
    if (!f_.is_breakpoint(a) && fpa != T(0)) {
      e.da = e.dmf / fpa;
      if (!f_.is_breakpoint(x)) {
        e.ddmf = (f_.slope_at(x) - (T(2) - *e.da) * e.dmf) / (x - a);
      }
    }
    return e;
  }

 private:
  PwlFunction<T> f_;
  PwlFunction<T> reflected_;
  StepFunction<T> df_;
};

template <Real T>
MaximalValue<T> maximal_value(const PwlFunction<T>& f, const T& x) {
  return MaximalSolver<T>(f).value(x);
}

/// (f(x) - Mf(x)) / (x - a).
template <Real T>
T maximal_derivative(const PwlFunction<T>& f, const T& x, const T& a, const T& mf) {
  return (f.eval(x) - mf) / (x - a);
}

/// dmf / f'(a); empty when a is a breakpoint (or f'(a) = 0).
template <Real T>
std::optional<T> a_prime(const PwlFunction<T>& f, const T& /*x*/, const T& dmf,
                         const T& a) {
  if (f.is_breakpoint(a)) return std::nullopt;
  const T s = f.slope_at(a);
  if (s == T(0)) return std::nullopt;
  return dmf / s;
}

/// (f'(x) - (2 - a'(x)) (Mf)'(x)) / (x - a); empty on breakpoint contact.
template <Real T>
std::optional<T> maximal_second_derivative(const PwlFunction<T>& f, const T& x,
                                           const T& dmf, const T& a,
                                           const std::optional<T>& da) {
  if (!da || f.is_breakpoint(x) || f.is_breakpoint(a)) return std::nullopt;
  return (f.slope_at(x) - (T(2) - *da) * dmf) / (x - a);
}

/// |dmf - average of f' over the optimal interval|.
template <Real T>
T luiro_residual(const PwlFunction<T>& f, const T& x, const T& a, const T& dmf) {
  using std::abs;
  return abs(dmf - f.derivative().average(a, x));
}

/// sup over r > 0 of the average over (x - r, x + r), including the r -> 0
/// limit f(x).
template <Real T>
T centered_maximal_value(const PwlFunction<T>& f, const T& x) {
  using std::abs;
  std::vector<T> radii;
  for (const T& b : f.breakpoints()) {
    if (b != x) radii.push_back(abs(b - x));
  }
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  T best = f.eval(x);
  auto consider = [&](const T& r) {
    if (r > T(0)) best = std::max(best, f.integral(x - r, x + r) / (T(2) * r));
  };
  for (const T& r : radii) consider(r);

  T r0 = T(0);
  for (std::size_t i = 0; i <= radii.size(); ++i) {
    const bool last = (i == radii.size());
    const T r1 = last ? T(0) : radii[i];
    // J'(r) = f(x + r) + f(x - r) = p0 + q (r - r0) on this segment.
    const T probe = last ? r0 + T(1) : (r0 + r1) / T(2);
    const T q = f.slope_at(x + probe) - f.slope_at(x - probe);
    const T p0 = f.eval(x + r0) + f.eval(x - r0);
    const T j0 = f.integral(x - r0, x + r0);
    if (q != T(0)) {
      for (const T& u : detail::stationary_offsets(q, r0, r0 * p0 - j0)) {
        if (u < T(0) || (!last && u > r1 - r0)) continue;
        consider(r0 + u);
      }
    }
    if (last) {
      const T tol = stationarity_tolerance<T>() * std::max(T(1), abs(best));
      if (q > T(0) || (q == T(0) && p0 / T(2) > best + tol)) {
        throw Error(ErrorKind::UnattainedSupremum,
                    "centered averages increase without bound");
      }
      break;
    }
    r0 = r1;
  }
  return best;
}

/// Grid description. Without an explicit range the grid is built from the
/// function's scales (breakpoints and contact events) on both sides of 0.
struct GridSpec {
  int points_per_decade = 64;
  std::optional<double> lo;
  std::optional<double> hi;
  bool positive_only = false;
};

namespace detail {

template <Real T>
std::vector<T> geometric_points(const T& lo, const T& hi, int per_decade) {
  using std::log10;
  using std::pow;
  std::vector<T> out;
  if (!(lo > T(0)) || !(hi > lo)) return out;
  const double decades = to_double(log10(hi / lo));
  const long n = std::max(1L, static_cast<long>(std::ceil(decades * per_decade)));
  const T ratio = hi / lo;
  for (long i = 0; i <= n; ++i) {
    out.push_back(lo * pow(ratio, T(i) / T(n)));
  }
  out.back() = hi;
  return out;
}

// Positive side: breakpoints of f right of 0 plus contact events for the
// breakpoints left of 0.
template <Real T>
std::vector<T> one_sided_grid(const MaximalSolver<T>& solver,
                              const PwlFunction<T>& side_fn, const GridSpec& spec,
                              bool mirrored, std::optional<T> lo, std::optional<T> hi) {
  std::vector<T> scales;
  for (const T& b : side_fn.breakpoints()) {
    if (b > T(0)) scales.push_back(b);
    if (b < T(0)) {
      auto x = solver.contact_abscissa(mirrored ? -b : b);
      if (x) scales.push_back(mirrored ? -*x : *x);
    }
  }
  T g_lo = T(1e-2), g_hi = T(1e2);
  if (!scales.empty()) {
    g_lo = *std::min_element(scales.begin(), scales.end()) / T(100);
    g_hi = *std::max_element(scales.begin(), scales.end()) * T(100);
  }
  if (lo) g_lo = *lo;
  if (hi) g_hi = *hi;
  std::vector<T> pts = geometric_points(g_lo, g_hi, spec.points_per_decade);
  for (const T& s : scales) {
    if (s >= g_lo && s <= g_hi) pts.push_back(s);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace detail

/// Sorted grid avoiding 0 that contains every x at which a(x) crosses a
/// breakpoint of f (found through the exact inverse of x -> a(x)).
template <Real T>
std::vector<T> auto_grid(const MaximalSolver<T>& solver, const GridSpec& spec) {
  std::optional<T> lo, hi;
  if (spec.lo) lo = T(*spec.lo);
  if (spec.hi) hi = T(*spec.hi);
  const bool want_positive = !hi || *hi > T(0);
  const bool want_negative = !spec.positive_only && (!lo || *lo < T(0));
  std::vector<T> out;
  if (want_negative) {
    std::optional<T> nlo, nhi;
    if (hi && *hi < T(0)) nlo = -*hi;
    if (lo) nhi = -*lo;
    PwlFunction<T> mirror = solver.function().reflect();
    for (const T& x : detail::one_sided_grid(solver, mirror, spec, true, nlo, nhi)) {
      out.push_back(-x);
    }
  }
  if (want_positive) {
    std::optional<T> plo, phi;
    if (lo && *lo > T(0)) plo = lo;
    if (hi) phi = hi;
    for (const T& x :
         detail::one_sided_grid(solver, solver.function(), spec, false, plo, phi)) {
      out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Per-point evaluations ordered by grid index.
template <Real T>
std::vector<MaximalEvaluation<T>> profile(const MaximalSolver<T>& solver,
                                          std::span<const T> xs,
                                          const Executor& exec = Executor()) {
  for (const T& x : xs) {
    if (x == T(0)) throw Error(ErrorKind::InvalidInput, "grid must avoid 0");
  }
  std::vector<MaximalEvaluation<T>> out(xs.size());
  exec.parallel_for(xs.size(), [&](std::size_t i) { out[i] = solver.evaluate(xs[i]); });
  return out;
}

template <Real T>
std::vector<MaximalEvaluation<T>> profile(const PwlFunction<T>& f, const GridSpec& spec,
                                          const Executor& exec = Executor()) {
  MaximalSolver<T> solver(f);
  const auto xs = auto_grid(solver, spec);
  return profile<T>(solver, std::span<const T>(xs), exec);
}

/// Sample of the positive-side profile parametrized by the contact point.
/// weight is the x-length represented by the sample (zero at cell ends).
template <Real T>
struct ContactSample {
  MaximalEvaluation<T> e;
  T weight{};
};

/// Positive-side profile sampled in t = -a on [t_lo, t_hi], t_lo > 0.
///
/// Cells are geometric in t and split at every breakpoint of f and every
/// extra event, so no cell straddles a kink of f. Each cell contributes its
/// two ends plus Gauss-Legendre nodes whose weights are converted to x-length
/// through dx/dt = -f'(a) / (Mf)'(x). Parametrizing by a resolves windows in
/// which a(x) sweeps a whole piece while x barely moves. Output is in
/// increasing t, which is increasing x; computed x may tie where the window
/// is narrower than one ulp of x, so callers must not re-sort by x.
template <Real T>
std::vector<ContactSample<T>> contact_profile(const MaximalSolver<T>& solver,
                                              const T& t_lo, const T& t_hi,
                                              int points_per_decade,
                                              std::span<const T> extra_events = {},
                                              const Executor& exec = Executor()) {
  if (!(t_lo > T(0)) || !(t_hi > t_lo)) {
    throw Error(ErrorKind::InvalidInput, "contact range must satisfy 0 < t_lo < t_hi");
  }
  std::vector<T> ts = detail::geometric_points(t_lo, t_hi, points_per_decade);
  for (const T& b : solver.function().breakpoints()) {
    if (-b > t_lo && -b < t_hi) ts.push_back(-b);
  }
  for (const T& t : extra_events) {
    if (t > t_lo && t < t_hi) ts.push_back(t);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  using Rule = boost::math::quadrature::gauss<T, 7>;
  const auto& xi = Rule::abscissa();
  const auto& wi = Rule::weights();
  // Per cell: left end, then the nodes in increasing t.
  std::vector<std::pair<T, T>> nodes;  // (t, weight in t)
  for (std::size_t i = 0; i < ts.size(); ++i) {
    nodes.emplace_back(ts[i], T(0));
    if (i + 1 == ts.size()) break;
    const T mid = (ts[i] + ts[i + 1]) / T(2);
    const T half = (ts[i + 1] - ts[i]) / T(2);
    for (std::size_t j = xi.size(); j-- > 0;) {
      if (xi[j] != T(0)) nodes.emplace_back(mid - half * xi[j], half * wi[j]);
    }
    for (std::size_t j = 0; j < xi.size(); ++j) {
      nodes.emplace_back(mid + half * xi[j], half * wi[j]);
    }
  }

  std::vector<ContactSample<T>> out(nodes.size());
  exec.parallel_for(nodes.size(), [&](std::size_t i) {
    const T a = -nodes[i].first;
    out[i].e = solver.evaluate_at_contact(a);
    if (nodes[i].second != T(0)) {
      out[i].weight = nodes[i].second * (-solver.function().slope_at(a) / out[i].e.dmf);
    }
  });
  return out;
}

}  // namespace maxvar
