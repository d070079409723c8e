#include <cmath>
#include <functional>

#include "doctest.h"
#include "maxvar/mollify.hpp"

using namespace maxvar;

namespace {

double bump(double x) { return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0; }

double simpson(const std::function<double(double)>& g, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
  const double m = (a + b) / 2.0, lm = (a + m) / 2.0, rm = (m + b) / 2.0;
  const double flm = g(lm), frm = g(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson(g, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson(g, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double adaptive(const std::function<double(double)>& g, double a, double b, double tol) {
  const double fa = g(a), fb = g(b), fm = g((a + b) / 2.0);
  return simpson(g, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50);
}

}  // namespace

TEST_CASE("kernel normalization and psi against adaptive Simpson") {
  const double mass = adaptive(bump, -1.0, 1.0, 1e-15);
  CHECK(Kernel::normalization() == doctest::Approx(1.0 / mass).epsilon(1e-11));
  CHECK(Kernel::normalization() == doctest::Approx(2.25228362104358).epsilon(1e-12));
  const double oracle = 0.0625 * 2.0 * adaptive(bump, 0.0, 0.5, 1e-16) / mass;
  CHECK(psi(0.25, 0.125) == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(Kernel::psi(0.5) == doctest::Approx(0.754065433445342).epsilon(1e-12));
  CHECK(Kernel::psi(0.9) == doctest::Approx(2.0 * adaptive(bump, 0.0, 0.9, 1e-16) / mass).epsilon(1e-10));
}

TEST_CASE("psi exact values") {
  for (int n : {2, 4, 16, 64}) {
    const double t = 1.0 / n;
    for (double x : {t, -t, 1.0, -3.0, 100.0}) CHECK(psi(t, x) == t * t);
  }
  CHECK(psi(0.25, 0.0) == 0.0);
  CHECK(Kernel::psi(1.0) == 1.0);
  CHECK_THROWS_AS(psi(0.0, 1.0), Error);
}

TEST_CASE("hat at x = 1, n = 16") {
  const auto f = make_hat(1.0, 1.0);
  MollifierConfig cfg;
  cfg.n = 16;
  const double g = smoothed_value(f, cfg, 1.0);
  CHECK(std::abs(g - f.eval(1.0)) <= 1.0 / 256.0);
  CHECK(mollified_value(f, cfg, 1.0) == doctest::Approx(g - 0.25).epsilon(1e-15));
  const double d = -mollified_derivative(f, cfg, 1.0);
  CHECK(d >= 0.125);
  CHECK(d <= 3.0);
}

TEST_CASE("smoothed value stays within the window range of f") {
  const auto f = make_triangle_bump<double>();
  MollifierConfig cfg;
  cfg.n = 4;
  for (double x : {-2.0, -0.9, -0.2, -0.01, 0.003, 0.1, 0.26, 1.0, 1.01, 5.0}) {
    const double h = psi(0.25, x);
    double lo = 1e300, hi = -1e300;
    for (int k = 0; k <= 2000; ++k) {
      const double v = f.eval(x - h + 2.0 * h * k / 2000.0);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    for (double b : f.breakpoints()) {
      if (b >= x - h && b <= x + h) {
        lo = std::min(lo, f.eval(b));
        hi = std::max(hi, f.eval(b));
      }
    }
    const double g = smoothed_value(f, cfg, x);
    CHECK(g >= lo - 1e-13);
    CHECK(g <= hi + 1e-13);
  }
}

TEST_CASE("evenness and quadrature convergence") {
  const auto hat = make_hat(1.0, 1.0);
  const auto tri = make_triangle_bump<double>();
  MollifierConfig cfg;
  cfg.n = 16;
  MollifierConfig fine = cfg;
  fine.quadrature_points *= 2;
  for (double x : {1e-3, 0.02, 0.0625, 0.3, 0.99, 1.0, 1.003, 4.0}) {
    CHECK(mollified_value(hat, cfg, -x) == doctest::Approx(mollified_value(hat, cfg, x)).epsilon(1e-10));
    CHECK(mollified_value(tri, cfg, -x) == doctest::Approx(mollified_value(tri, cfg, x)).epsilon(1e-10));
    for (const auto* f : {&hat, &tri}) {
      const double a = mollified_value(*f, cfg, x), b = mollified_value(*f, fine, x);
      CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("derivative against central differences") {
  const auto tri = make_triangle_bump<double>();
  MollifierConfig cfg;
  cfg.n = 8;
  for (double x : {0.01, 0.05, 0.2, 0.998, 1.0, 1.002, 3.0, -0.4}) {
    const double h = 1e-6 * std::max(1e-2, std::abs(x));
    const double fd = (mollified_value(tri, cfg, x + h) - mollified_value(tri, cfg, x - h)) / (2 * h);
    CHECK(mollified_derivative(tri, cfg, x) == doctest::Approx(fd).epsilon(1e-5));
  }
  CHECK_THROWS_AS(mollified_derivative(tri, cfg, 0.0), Error);
}

TEST_CASE("values near zero approach f(0)") {
  const auto f = make_hat(1.0, 1.0);
  MollifierConfig cfg;
  cfg.n = 16;
  CHECK(std::abs(mollified_value(f, cfg, 1e-9) - f.eval(0.0)) < 1e-8);
}

TEST_CASE("sup error decreases with n") {
  for (const auto& f : {make_hat(1.0, 1.0), make_triangle_bump<double>()}) {
    double prev = 1e300;
    for (int n : {4, 16, 64}) {
      MollifierConfig cfg;
      cfg.n = n;
      double err = 0.0;
      for (int k = -40; k <= 40; ++k) {
        const double x = std::pow(10.0, k / 20.0);
        for (double y : {x, -x}) {
          const double e = std::abs(mollified_value(f, cfg, y) - f.eval(y));
          CHECK(e <= x / std::sqrt(n) + 1.0 / (n * n) + 1e-12);
          err = std::max(err, e);
        }
      }
      CHECK(err < prev);
      prev = err;
    }
  }
}

TEST_CASE("materialized f_n matches pointwise values") {
  const auto f = make_triangle_bump<double>();
  MollifierConfig cfg;
  cfg.n = 16;
  const auto fn = materialize(f, cfg, 256);
  CHECK(fn.classify().single_peak);
  for (double x : {-3.0, -0.5, 0.01, 0.7, 1.0, 2.5}) {
    CHECK(fn.eval(x) == doctest::Approx(mollified_value(f, cfg, x)).epsilon(1e-4));
  }
}

TEST_CASE("config validation") {
  MollifierConfig cfg;
  cfg.n = 1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.n = 4;
  cfg.quadrature_points = 8;
  CHECK_THROWS_AS(cfg.validate(), Error);
}
