#include "maxvar/mollify.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "maxvar/maximal.hpp"

namespace maxvar {

namespace {

double bump(double x) {
  const double s = 1.0 - x * x;
  return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

// Composite 20-point Gauss-Legendre on panels no wider than 1/16; the bump
// is analytic inside (-1, 1) and flat to all orders at the ends.
double bump_integral(double lo, double hi) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) * 16.0)));
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    sum += Rule::integrate(bump, lo + (hi - lo) * p / panels,
                           lo + (hi - lo) * (p + 1) / panels);
  }
  return sum;
}

using Panel = boost::math::quadrature::gauss<double, 10>;

// int_lo^hi g over panels of at most 10 / nodes_per_unit in length.
template <typename Fn>
double panel_integral(Fn&& g, double lo, double hi, int nodes_per_unit) {
  const double len = hi - lo;
  if (!(len > 0.0)) return 0.0;
  const int panels =
      std::max(1, static_cast<int>(std::ceil(len * nodes_per_unit / 10.0)));
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + len * p / panels;
    const double b = lo + len * (p + 1) / panels;
    sum += Panel::integrate(g, a, b);
  }
  return sum;
}

// Kernel-variable cut points: -1, the images of breakpoints inside the
// window, 1.
std::vector<double> cuts(const PwlFunction<double>& f, double x, double h) {
  std::vector<double> ys{-1.0};
  for (double b : f.breakpoints()) {
    const double y = (b - x) / h;
    if (y > -1.0 && y < 1.0) ys.push_back(y);
  }
  ys.push_back(1.0);
  return ys;
}

double bandwidth(const MollifierConfig& cfg, double x) {
  return psi(1.0 / cfg.n, x);
}

// d/dx psi_{1/n}(x) = 2 sign(x) phi(n |x|) / n.
double bandwidth_derivative(const MollifierConfig& cfg, double x) {
  const double s = x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0);
  return 2.0 * s * Kernel::phi(cfg.n * std::abs(x)) / cfg.n;
}

}  // namespace

double Kernel::normalization() {
  static const double c = [] {
    using boost::math::quadrature::gauss_kronrod;
    return 1.0 / gauss_kronrod<double, 61>::integrate(bump, -1.0, 1.0, 15, 1e-14);
  }();
  return c;
}

double Kernel::phi(double x) { return normalization() * bump(x); }

double Kernel::psi(double u) {
  const double a = std::abs(u);
  if (a >= 1.0) return 1.0;
  if (a == 0.0) return 0.0;
  // Integrate the shorter side for accuracy near 1.
  if (a > 0.5) return 1.0 - 2.0 * normalization() * bump_integral(a, 1.0);
  return 2.0 * normalization() * bump_integral(0.0, a);
}

double Kernel::sup_phi() { return phi(0.0); }

double psi(double t, double x) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidInput, "bandwidth scale must be positive");
  if (std::abs(x) >= t) return t * t;
  return t * t * Kernel::psi(x / t);
}

void MollifierConfig::validate() const {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "mollifier index n must be at least 2");
  if (quadrature_points < 16) {
    throw Error(ErrorKind::InvalidInput, "quadrature_points must be at least 16");
  }
}

double smoothed_value(const PwlFunction<double>& f, const MollifierConfig& cfg, double x) {
  cfg.validate();
  const double h = bandwidth(cfg, x);
  if (h == 0.0) return f.eval(x);
  const auto ys = cuts(f, x, h);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    sum += panel_integral([&](double y) { return Kernel::phi(y) * f.eval(x + h * y); },
                          ys[i], ys[i + 1], cfg.quadrature_points);
  }
  return sum;
}

double mollified_value(const PwlFunction<double>& f, const MollifierConfig& cfg, double x) {
  return smoothed_value(f, cfg, x) - std::abs(x) / std::sqrt(static_cast<double>(cfg.n));
}

double mollified_derivative(const PwlFunction<double>& f, const MollifierConfig& cfg,
                            double x) {
  cfg.validate();
  if (x == 0.0) throw Error(ErrorKind::InvalidInput, "f_n is not differentiable at 0");
  const double h = bandwidth(cfg, x);
  const double dh = bandwidth_derivative(cfg, x);
  const auto ys = cuts(f, x, h);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    const double slope = f.slope_at(x + h * (ys[i] + ys[i + 1]) / 2.0);
    sum += slope * panel_integral([&](double y) { return Kernel::phi(y) * (1.0 + y * dh); },
                                  ys[i], ys[i + 1], cfg.quadrature_points);
  }
  const double s = x > 0 ? 1.0 : -1.0;
  return sum - s / std::sqrt(static_cast<double>(cfg.n));
}

PwlFunction<double> materialize(const PwlFunction<double>& f, const MollifierConfig& cfg,
                                int points_per_decade, const Executor& exec) {
  cfg.validate();
  double scale = 1.0;
  double smallest = 1.0 / cfg.n;
  for (double b : f.breakpoints()) {
    scale = std::max(scale, std::abs(b));
    if (b != 0.0) smallest = std::min(smallest, std::abs(b));
  }
  const double lo = 1e-3 * smallest;
  const double hi = 100.0 * scale;
  std::vector<double> pos = detail::geometric_points(lo, hi, points_per_decade);
  std::vector<double> xs;
  for (double p : pos) {
    xs.push_back(p);
    xs.push_back(-p);
  }
  for (double b : f.breakpoints()) {
    if (b == 0.0) continue;
    const double h = bandwidth(cfg, b);
    for (int k = -32; k <= 32; ++k) xs.push_back(b + 1.5 * h * k / 32.0);
  }
  xs.push_back(0.0);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<double> vals(xs.size());
  exec.parallel_for(xs.size(), [&](std::size_t i) {
    vals[i] = xs[i] == 0.0 ? f.eval(0.0) : mollified_value(f, cfg, xs[i]);
  });

  const double tilt = 1.0 / std::sqrt(static_cast<double>(cfg.n));
  std::vector<double> slopes;
  slopes.reserve(xs.size() + 1);
  slopes.push_back(f.slopes().front() + tilt);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    slopes.push_back((vals[i + 1] - vals[i]) / (xs[i + 1] - xs[i]));
  }
  slopes.push_back(f.slopes().back() - tilt);
  const auto zero = static_cast<std::size_t>(
      std::lower_bound(xs.begin(), xs.end(), 0.0) - xs.begin());
  const double anchor = vals[zero];
  return PwlFunction<double>(std::move(xs), anchor, std::move(slopes), zero);
}

ApproximationReport approximation_report(const PwlFunction<double>& f,
                                         const MollifierConfig& cfg,
                                         std::span<const double> grid,
                                         const Executor& exec) {
  cfg.validate();
  ApproximationReport r;
  r.n = cfg.n;
  double D = 0.0;
  for (double s : f.slopes()) D = std::max(D, std::abs(s));
  const double root_n = std::sqrt(static_cast<double>(cfg.n));
  r.slope_window_lo = 1.0 / (2.0 * root_n);
  r.slope_window_hi = 2.0 * D + 1.0;
  r.delta_n = 1.0 / root_n;
  r.var_fprime = f.derivative().total_variation();

  const PwlFunction<double> fn = materialize(f, cfg, 4096, exec);
  r.var_fn_prime = fn.derivative().total_variation();

  const MaximalSolver<double> solver(f);
  const MaximalSolver<double> solver_n(fn);
  std::vector<double> err(grid.size(), 0.0);
  std::vector<char> window_bad(grid.size(), 0);
  std::vector<char> contact_bad(grid.size(), 0);
  exec.parallel_for(grid.size(), [&](std::size_t i) {
    const double x = grid[i];
    if (x == 0.0) return;
    err[i] = std::abs(mollified_value(f, cfg, x) - f.eval(x));
    const double s = x > 0 ? 1.0 : -1.0;
    const double d = -s * mollified_derivative(f, cfg, x);
    window_bad[i] = !(d >= r.slope_window_lo && d <= r.slope_window_hi);
    const double reach = std::abs(solver.value(x).a);
    const double reach_n = std::abs(solver_n.value(x).a);
    const double bound = std::max(reach, std::abs(x) / 2.0 * (1.0 + r.delta_n));
    contact_bad[i] = reach_n > bound * (1.0 + 1e-9);
  });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] == 0.0) continue;
    ++r.grid_points;
    r.sup_error = std::max(r.sup_error, err[i]);
    r.slope_window_violations += window_bad[i];
    r.contact_violations += contact_bad[i];
  }
  return r;
}

}  // namespace maxvar
