#include "maxvar/theorem_harness.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <random>
#include <sstream>

#include "maxvar/counterexample.hpp"
#include "maxvar/csv.hpp"
#include "maxvar/errors.hpp"

namespace maxvar {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

// Uniform on (0, hi].
double open_closed(std::mt19937_64& rng, double hi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return hi * (1.0 - u(rng));
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

IntervalSet::IntervalSet(std::vector<std::pair<double, double>> intervals)
    : iv_(std::move(intervals)) {
  for (std::size_t i = 0; i < iv_.size(); ++i) {
    const auto [l, r] = iv_[i];
    if (!std::isfinite(l) || !std::isfinite(r) || r < l) {
      throw Error(ErrorKind::InvalidInput, "interval ends must be finite with l <= r");
    }
    if (i > 0 && !(iv_[i - 1].second < l)) {
      throw Error(ErrorKind::InvalidInput, "intervals must be sorted and disjoint");
    }
  }
}

double IntervalSet::inf() const {
  if (iv_.empty()) throw Error(ErrorKind::EmptySet, "empty interval set");
  return iv_.front().first;
}

double IntervalSet::sup() const {
  if (iv_.empty()) throw Error(ErrorKind::EmptySet, "empty interval set");
  return iv_.back().second;
}

bool IntervalSet::contains(double x) const {
  return std::any_of(iv_.begin(), iv_.end(),
                     [&](const auto& iv) { return iv.first <= x && x <= iv.second; });
}

bool IntervalSet::meets_open(double a, double b) const {
  return std::any_of(iv_.begin(), iv_.end(),
                     [&](const auto& iv) { return iv.first < b && a < iv.second; });
}

double IntervalSet::nearest(double p) const {
  if (iv_.empty()) throw Error(ErrorKind::EmptySet, "empty interval set");
  double best = iv_.front().first;
  double dist = std::abs(p - best);
  for (const auto& [l, r] : iv_) {
    const double c = std::clamp(p, l, r);
    const double d = std::abs(p - c);
    if (d < dist) {
      dist = d;
      best = c;
    }
  }
  return best;
}

std::vector<double> zero_partition(const IntervalSet& Z) {
  if (Z.empty()) throw Error(ErrorKind::EmptySet, "zero_partition needs a nonempty set");
  const auto& iv = Z.intervals();
  // Blocks [lo, hi] separated by gaps of length >= 2.
  std::vector<std::pair<double, double>> blocks{{iv.front().first, iv.front().second}};
  for (std::size_t i = 1; i < iv.size(); ++i) {
    if (iv[i].first - iv[i - 1].second >= 2.0) {
      blocks.emplace_back(iv[i].first, iv[i].second);
    } else {
      blocks.back().second = iv[i].second;
    }
  }
  std::vector<double> u;
  for (const auto& [lo, hi] : blocks) {
    double t = lo;
    u.push_back(t);
    while (hi - t >= 3.0) {
      // Gaps inside a block are shorter than 2, so Z meets (t + 1, t + 3)
      // and its point nearest t + 2 lies there.
      t = Z.nearest(t + 2.0);
      u.push_back(t);
    }
    if (hi > t) u.push_back(hi);
  }
  return u;
}

std::optional<std::string> partition_defect(const IntervalSet& Z, std::span<const double> u) {
  if (u.empty()) return "empty sequence";
  if (u.front() != Z.inf()) return "first point is not inf Z";
  if (u.back() != Z.sup()) return "last point is not sup Z";
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (!Z.contains(u[k])) return "u_" + std::to_string(k + 1) + " not in Z";
    if (k + 1 < u.size()) {
      if (!(u[k] < u[k + 1])) return "not increasing at k = " + std::to_string(k + 1);
      if (!(u[k + 1] < u[k] + 3.0) && Z.meets_open(u[k], u[k + 1])) {
        return "step of at least 3 over Z at k = " + std::to_string(k + 1);
      }
    }
    if (k + 2 < u.size() && !(u[k] + 1.0 < u[k + 2])) {
      return "u_k + 1 >= u_{k+2} at k = " + std::to_string(k + 1);
    }
  }
  return std::nullopt;
}

std::string_view outcome_name(CheckOutcome o) {
  switch (o) {
    case CheckOutcome::Holds:
      return "holds";
    case CheckOutcome::Violated:
      return "violated";
    case CheckOutcome::NotApplicable:
      return "not_applicable";
  }
  return "unknown";
}

TwoZerosCheck check_two_zeros_bound(double u0, double u1, double v0, double v1, double D) {
  if (!(u0 > 0 && u1 > 0 && v0 > 0 && v1 > 0 && D > 0)) {
    throw Error(ErrorKind::InvalidInput, "two-zeros inputs must be positive");
  }
  // v (sqrt(1 + u/v) - 1) rewritten without cancellation.
  auto w = [](double u, double v) { return u / (std::sqrt(1.0 + u / v) + 1.0); };
  TwoZerosCheck c;
  c.w0 = w(u0, v0);
  c.w1 = w(u1, v1);
  if (c.w0 > D * v0 || c.w1 > D * v1) return c;
  c.lhs = std::abs(c.w1 - c.w0);
  c.rhs = 2.0 * (2.0 + D) * (2.0 + D) * (std::abs(u1 - u0) + std::abs(v1 - v0)) + 1e-12;
  c.outcome = c.lhs <= c.rhs ? CheckOutcome::Holds : CheckOutcome::Violated;
  return c;
}

double measured_contact_ratio(const MaximalSolver<double>& solver, double x0, double x1) {
  if (!(x0 > 0.0) || !(x1 >= x0)) {
    throw Error(ErrorKind::InvalidInput, "need 0 < x0 <= x1");
  }
  std::vector<double> xs{x0};
  if (x1 > x0) {
    for (int i = 1; i <= 64; ++i) xs.push_back(x0 * std::pow(x1 / x0, i / 64.0));
    xs.back() = x1;
  }
  double c = 0.0;
  for (double x : xs) c = std::max(c, -solver.value(x).a / x);
  return c;
}

DecayCheck check_decay(const MaximalSolver<double>& solver, double x0, double x1, double c) {
  DecayCheck r;
  r.measured_c = measured_contact_ratio(solver, x0, x1);
  if (c < r.measured_c) {
    throw Error(ErrorKind::ClassViolation,
                "c = " + fmt(c) + " is below sup -a(x)/x = " + fmt(r.measured_c));
  }
  const double w0 = -solver.evaluate(x0).dmf;
  const double w1 = -solver.evaluate(x1).dmf;
  r.lhs = w1;
  r.rhs = std::exp(-c) * std::pow(x0 / x1, 2.0 + c) * w0 * (1.0 - 1e-9);
  r.holds = r.lhs >= r.rhs;
  return r;
}

DecayCheck check_decay(const PwlFunction<double>& f, double x0, double x1, double c) {
  return check_decay(MaximalSolver<double>(f), x0, x1, c);
}

double second_derivative_scale(const MaximalEvaluation<double>& e, double fprime_x) {
  const double da = e.da.value_or(0.0);
  return (std::abs(fprime_x) + std::abs((2.0 - da) * e.dmf)) / std::abs(e.x - e.a);
}

namespace {

bool is_zero(const MaximalEvaluation<double>& e, double fprime_x) {
  return e.ddmf && std::abs(*e.ddmf) <= 1e-9 * second_derivative_scale(e, fprime_x);
}

}  // namespace

LowSpeedCheck check_low_speed(const MaximalSolver<double>& solver, double x0, double x1,
                              double D) {
  const auto& f = solver.function();
  const auto e0 = solver.evaluate(x0);
  const auto e1 = solver.evaluate(x1);
  LowSpeedCheck r;
  for (const auto* e : {&e0, &e1}) {
    if (e->degenerate || !is_zero(*e, f.slope_at(e->x))) return r;
    if (!e->da || -*e->da > D) return r;
  }
  r.lhs = std::abs(e0.dmf - e1.dmf);
  const double tol = 1e-12 + 1e-9 * std::max(std::abs(e0.dmf), std::abs(e1.dmf));
  r.rhs = 2.0 * (2.0 + D) * (2.0 + D) *
              (std::abs(f.slope_at(x1) - f.slope_at(x0)) +
               std::abs(f.slope_at(e1.a) - f.slope_at(e0.a))) +
          tol;
  r.outcome = r.lhs <= r.rhs ? CheckOutcome::Holds : CheckOutcome::Violated;
  return r;
}

LowSpeedCheck check_low_speed(const PwlFunction<double>& f, double x0, double x1, double D) {
  return check_low_speed(MaximalSolver<double>(f), x0, x1, D);
}

namespace {

// Sign of (Mf)'' at x: 0 for an accepted zero, +-1 otherwise, nullopt when
// undefined (x or a(x) on a breakpoint).
std::optional<int> ddmf_sign(const MaximalSolver<double>& solver, double x) {
  const auto e = solver.evaluate(x);
  if (!e.ddmf) return std::nullopt;
  if (is_zero(e, solver.function().slope_at(x))) return 0;
  return *e.ddmf > 0 ? 1 : -1;
}

}  // namespace

ZeroSearch find_second_derivative_zeros(const PwlFunction<double>& f, double lo, double hi,
                                        int points_per_decade) {
  const bool negative = hi < 0.0;
  if (!(lo < hi) || (lo <= 0.0 && hi >= 0.0)) {
    throw Error(ErrorKind::InvalidInput, "range must lie on one side of 0 with lo < hi");
  }
  if (points_per_decade < 1) throw Error(ErrorKind::InvalidInput, "grid must be positive");
  const MaximalSolver<double> solver(f);
  const double plo = negative ? -hi : lo;
  const double phi = negative ? -lo : hi;
  std::vector<double> xs = detail::geometric_points(plo, phi, points_per_decade);
  // Kinks of (Mf)'': x on a breakpoint, or a(x) on one.
  for (double b : f.breakpoints()) {
    const double pb = negative ? -b : b;
    if (pb > plo && pb < phi) xs.push_back(pb);
    const auto x = solver.contact_abscissa(b);
    if (x) {
      const double px = negative ? -*x : *x;
      if (px > plo && px < phi) xs.push_back(px);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (negative) {
    for (double& x : xs) x = -x;
    std::reverse(xs.begin(), xs.end());
  }

  std::vector<double> pts;
  std::vector<int> signs;
  for (double x : xs) {
    const auto s = ddmf_sign(solver, x);
    if (!s) continue;
    pts.push_back(x);
    signs.push_back(*s);
  }

  ZeroSearch out;
  if (!pts.empty() && std::all_of(signs.begin(), signs.end(), [](int s) { return s == 0; })) {
    out.identically_zero = true;
    out.zeros = IntervalSet({{lo, hi}});
    return out;
  }

  std::vector<std::pair<double, double>> zeros;
  auto add_zero = [&](double l, double r) {
    if (!zeros.empty() && zeros.back().second >= l) {
      zeros.back().second = std::max(zeros.back().second, r);
    } else {
      zeros.emplace_back(l, r);
    }
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (signs[i] == 0) {
      // Runs of accepted zeros merge into one interval.
      add_zero(pts[i], pts[i]);
      if (i + 1 < pts.size() && signs[i + 1] == 0) add_zero(pts[i], pts[i + 1]);
      continue;
    }
    if (i + 1 == pts.size() || signs[i + 1] == 0 || signs[i + 1] == signs[i]) continue;
    double l = pts[i];
    double r = pts[i + 1];
    const int sl = signs[i];
    std::optional<double> found;
    for (int it = 0; it < 200; ++it) {
      const double m = l + (r - l) / 2.0;
      if (m <= l || m >= r) break;
      auto s = ddmf_sign(solver, m);
      if (!s) s = ddmf_sign(solver, std::nextafter(m, r));
      if (!s) break;
      if (*s == 0) {
        found = m;
        break;
      }
      (*s == sl ? l : r) = m;
    }
    if (found) {
      add_zero(*found, *found);
    } else {
      out.jumps.push_back(l + (r - l) / 2.0);
    }
  }
  out.zeros = IntervalSet(std::move(zeros));
  return out;
}

double d_c_lambda(double c, double lambda) {
  if (!(c > 0.0) || !(lambda > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "c and lambda must be positive");
  }
  return std::exp(-c - lambda * (2.0 + c)) * (1.0 - std::exp(-lambda)) / c;
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

PwlFunction<double> random_even_instance(std::uint64_t seed, std::uint64_t index) {
  std::mt19937_64 rng(split_seed(seed, index));
  std::uniform_int_distribution<int> count(3, 12);
  const int m = count(rng);
  std::vector<double> pos;
  while (static_cast<int>(pos.size()) < m) {
    pos.push_back(log_uniform(rng, 1e-2, 1e2));
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  }
  std::vector<double> mags(static_cast<std::size_t>(m) + 1);
  for (double& s : mags) s = log_uniform(rng, 1e-3, 1e3);
  // Mirror: breakpoints -b_m..-b_1, 0, b_1..b_m; slopes +mags reversed, -mags.
  std::vector<double> bp;
  std::vector<double> slopes;
  for (int i = m - 1; i >= 0; --i) bp.push_back(-pos[static_cast<std::size_t>(i)]);
  bp.push_back(0.0);
  for (double b : pos) bp.push_back(b);
  for (int i = m; i >= 0; --i) slopes.push_back(mags[static_cast<std::size_t>(i)]);
  for (double s : mags) slopes.push_back(-s);
  return PwlFunction<double>(std::move(bp), 0.0, std::move(slopes),
                             static_cast<std::size_t>(m));
}

namespace {

double hat_slope(double A, double B) { return A * (1.0 - std::sqrt(1.0 + B / A)); }

// Variation of (Mf)' on (0, inf) from a positive grid: the sum of grid
// increments, closed at both ends by the exact limits at 0+ and infinity.
double positive_variation(const MaximalSolver<double>& solver, int ppd,
                          long* grid_points, long* violations) {
  const auto& f = solver.function();
  const auto& s = f.slopes();
  const std::size_t z = f.piece_index(0.0);  // piece right of 0
  const double at_zero = hat_slope(s[z - 1], -s[z]);
  const double at_inf = hat_slope(s.front(), -s.back());
  GridSpec spec;
  spec.points_per_decade = ppd;
  spec.positive_only = true;
  const auto xs = auto_grid(solver, spec);
  CompensatedSum<double> var;
  double prev = at_zero;
  long bad = 0;
  for (double x : xs) {
    const auto e = solver.evaluate(x);
    var.add(std::abs(e.dmf - prev));
    prev = e.dmf;
    if (-e.a > x * (1.0 + 1e-9)) ++bad;
  }
  var.add(std::abs(at_inf - prev));
  if (grid_points) *grid_points = static_cast<long>(xs.size());
  if (violations) *violations = bad;
  return var.value();
}

}  // namespace

RadialInstance radial_ratio(const PwlFunction<double>& f) {
  const MaximalSolver<double> solver(f);
  const auto& s = f.slopes();
  const std::size_t z = f.piece_index(0.0);
  if (!f.is_breakpoint(0.0)) {
    throw Error(ErrorKind::InvalidInput, "even instance needs a breakpoint at 0");
  }
  RadialInstance r;
  r.var_fprime = f.derivative().total_variation();
  const double jump = 2.0 * std::abs(hat_slope(s[z - 1], -s[z]));
  double prev = -1.0;
  for (int ppd = 64; ppd <= 1024; ppd *= 2) {
    const double v = positive_variation(solver, ppd, &r.grid_points, &r.contact_violations);
    r.var_dmf = 2.0 * v + jump;
    if (prev >= 0.0 && std::abs(v - prev) <= 1e-6 * v) break;
    prev = v;
  }
  r.ratio = r.var_dmf / r.var_fprime;
  return r;
}

RadialReport radial_experiment(std::uint64_t seed, long count, const Executor& exec) {
  if (count < 1) throw Error(ErrorKind::InvalidInput, "count must be at least 1");
  std::vector<RadialInstance> inst(static_cast<std::size_t>(count));
  exec.parallel_for(inst.size(),
                    [&](std::size_t i) { inst[i] = radial_ratio(random_even_instance(seed, i)); });
  RadialReport r;
  r.count = count;
  r.histogram.assign(20, 0);
  CompensatedSum<double> sum;
  for (const auto& x : inst) {
    r.ratios.push_back(x.ratio);
    r.all_finite = r.all_finite && std::isfinite(x.ratio);
    r.max_ratio = std::max(r.max_ratio, x.ratio);
    sum.add(x.ratio);
    r.contact_violations += x.contact_violations;
    const auto bin = static_cast<std::size_t>(std::clamp(x.ratio * 10.0, 0.0, 19.0));
    ++r.histogram[bin];
  }
  r.mean_ratio = sum.value() / static_cast<double>(count);
  return r;
}

IntervalSet random_interval_set(std::uint64_t seed, std::uint64_t index) {
  std::mt19937_64 rng(split_seed(seed, index));
  std::uniform_int_distribution<int> count(1, 8);
  std::uniform_real_distribution<double> start(-10.0, 10.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int k = count(rng);
  std::vector<std::pair<double, double>> iv;
  double l = start(rng);
  for (int i = 0; i < k; ++i) {
    const double len = unit(rng) < 0.3 ? 0.0 : 4.0 * unit(rng);
    iv.emplace_back(l, l + len);
    l = l + len + 0.05 + 4.95 * unit(rng);
  }
  return IntervalSet(std::move(iv));
}

namespace {

void tally(SuiteReport& rep, CheckRecord rec) {
  switch (rec.outcome) {
    case CheckOutcome::Holds:
      ++rep.passed;
      break;
    case CheckOutcome::Violated:
      ++rep.failed;
      break;
    case CheckOutcome::NotApplicable:
      ++rep.not_applicable;
      break;
  }
  rep.records.push_back(std::move(rec));
}

void suite_two_zeros(SuiteReport& rep) {
  std::mt19937_64 rng(split_seed(rep.seed, 0));
  const double D = 5.0;
  long applicable = 0;
  long drawn = 0;
  while (applicable < rep.count && drawn < 100 * rep.count) {
    const double u0 = open_closed(rng, 10.0), u1 = open_closed(rng, 10.0);
    const double v0 = open_closed(rng, 10.0), v1 = open_closed(rng, 10.0);
    const auto c = check_two_zeros_bound(u0, u1, v0, v1, D);
    ++drawn;
    if (c.outcome == CheckOutcome::NotApplicable) continue;
    ++applicable;
    CheckRecord rec{"tuple " + std::to_string(drawn), c.outcome, {}};
    if (c.outcome == CheckOutcome::Violated) {
      rec.witness = "u=(" + fmt(u0) + "," + fmt(u1) + ") v=(" + fmt(v0) + "," + fmt(v1) +
                    ") lhs=" + fmt(c.lhs) + " rhs=" + fmt(c.rhs);
    }
    tally(rep, std::move(rec));
  }
  rep.not_applicable = drawn - applicable;
}

void suite_partition(SuiteReport& rep) {
  for (long i = 0; i < rep.count; ++i) {
    const auto Z = random_interval_set(rep.seed, static_cast<std::uint64_t>(i));
    const auto u = zero_partition(Z);
    const auto defect = partition_defect(Z, u);
    CheckRecord rec{"set " + std::to_string(i),
                    defect ? CheckOutcome::Violated : CheckOutcome::Holds, {}};
    if (defect) rec.witness = *defect;
    tally(rep, std::move(rec));
  }
}

// Hats, the counterexample f(0.01, 16, 3) and `count` random even instances.
std::vector<std::pair<std::string, PwlFunction<double>>> strict_suite(std::uint64_t seed,
                                                                      long count) {
  std::vector<std::pair<std::string, PwlFunction<double>>> fs;
  fs.emplace_back("hat(1,1)", make_hat(1.0, 1.0));
  fs.emplace_back("hat(1,100)", make_hat(1.0, 100.0));
  fs.emplace_back("hat(0.01,1)", make_hat(0.01, 1.0));
  fs.emplace_back("counterexample(0.01,16,3)", build_f<double>(CounterexampleParams{}));
  for (long i = 0; i < count; ++i) {
    fs.emplace_back("random " + std::to_string(i),
                    random_even_instance(seed, static_cast<std::uint64_t>(i)));
  }
  return fs;
}

// 25 positive points spanning the function's scales.
std::vector<double> sample_points(const MaximalSolver<double>& solver) {
  GridSpec spec;
  spec.points_per_decade = 4;
  spec.positive_only = true;
  const auto xs = auto_grid(solver, spec);
  std::vector<double> out;
  const std::size_t n = 25;
  for (std::size_t k = 0; k < n; ++k) out.push_back(xs[k * (xs.size() - 1) / (n - 1)]);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void suite_decay(SuiteReport& rep, const Executor& exec) {
  const auto fs = strict_suite(rep.seed, rep.count);
  std::vector<std::vector<CheckRecord>> per(fs.size());
  exec.parallel_for(fs.size(), [&](std::size_t i) {
    const MaximalSolver<double> solver(fs[i].second);
    const auto xs = sample_points(solver);
    for (std::size_t p = 0; p < xs.size(); ++p) {
      for (std::size_t q = p; q < xs.size(); ++q) {
        const double c = measured_contact_ratio(solver, xs[p], xs[q]);
        const auto d = check_decay(solver, xs[p], xs[q], c);
        CheckRecord rec{fs[i].first + " x0=" + fmt(xs[p]) + " x1=" + fmt(xs[q]),
                        d.holds ? CheckOutcome::Holds : CheckOutcome::Violated, {}};
        if (!d.holds) rec.witness = "lhs=" + fmt(d.lhs) + " rhs=" + fmt(d.rhs) + " c=" + fmt(c);
        per[i].push_back(std::move(rec));
      }
    }
  });
  for (auto& v : per) {
    for (auto& r : v) tally(rep, std::move(r));
  }
}

void suite_low_speed(SuiteReport& rep, const Executor& exec) {
  const auto fs = strict_suite(rep.seed, rep.count);
  std::vector<std::vector<CheckRecord>> per(fs.size());
  exec.parallel_for(fs.size(), [&](std::size_t i) {
    const MaximalSolver<double> solver(fs[i].second);
    const auto xs = sample_points(solver);
    const auto zs = find_second_derivative_zeros(fs[i].second, xs.front(), xs.back(), 32);
    std::vector<double> pts;
    if (zs.identically_zero) {
      pts = xs;
    } else {
      for (const auto& [l, r] : zs.zeros.intervals()) {
        pts.push_back(l);
        if (r > l) pts.push_back(r);
      }
    }
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      const auto e0 = solver.evaluate(pts[k]);
      const auto e1 = solver.evaluate(pts[k + 1]);
      const double D = std::max({-e0.da.value_or(0.0), -e1.da.value_or(0.0), 1e-12});
      const auto c = check_low_speed(solver, pts[k], pts[k + 1], D);
      CheckRecord rec{fs[i].first + " x0=" + fmt(pts[k]) + " x1=" + fmt(pts[k + 1]),
                      c.outcome, {}};
      if (c.outcome != CheckOutcome::Holds) {
        rec.witness = "lhs=" + fmt(c.lhs) + " rhs=" + fmt(c.rhs) + " D=" + fmt(D);
      }
      per[i].push_back(std::move(rec));
    }
  });
  for (auto& v : per) {
    for (auto& r : v) tally(rep, std::move(r));
  }
}

void suite_radial(SuiteReport& rep, const Executor& exec) {
  const auto r = radial_experiment(rep.seed, rep.count, exec);
  for (long i = 0; i < r.count; ++i) {
    const double x = r.ratios[static_cast<std::size_t>(i)];
    const bool ok = std::isfinite(x) && x <= 20.0;
    CheckRecord rec{"instance " + std::to_string(i),
                    ok ? CheckOutcome::Holds : CheckOutcome::Violated, {}};
    if (!ok) rec.witness = "ratio=" + fmt(x);
    tally(rep, std::move(rec));
  }
  CheckRecord contact{"contact -a(x) <= x",
                      r.contact_violations == 0 ? CheckOutcome::Holds : CheckOutcome::Violated,
                      "max_ratio=" + fmt(r.max_ratio) + " mean_ratio=" + fmt(r.mean_ratio) +
                          " violations=" + std::to_string(r.contact_violations)};
  tally(rep, std::move(contact));
}

}  // namespace

SuiteReport run_suite(const std::string& suite, std::uint64_t seed, long count,
                      const Executor& exec) {
  if (count < 1) throw Error(ErrorKind::InvalidInput, "count must be at least 1");
  SuiteReport rep;
  rep.suite = suite;
  rep.seed = seed;
  rep.count = count;
  if (suite == "two-zeros") {
    suite_two_zeros(rep);
  } else if (suite == "partition") {
    suite_partition(rep);
  } else if (suite == "decay") {
    suite_decay(rep, exec);
  } else if (suite == "low-speed") {
    suite_low_speed(rep, exec);
  } else if (suite == "radial") {
    suite_radial(rep, exec);
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown suite '" + suite + "'");
  }
  return rep;
}

}  // namespace maxvar
