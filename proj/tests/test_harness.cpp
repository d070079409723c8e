#include <cmath>
#include <random>

#include "doctest.h"
#include "maxvar/counterexample.hpp"
#include "maxvar/theorem_harness.hpp"

using namespace maxvar;

namespace {

std::vector<double> partition_of(std::vector<std::pair<double, double>> iv) {
  return zero_partition(IntervalSet(std::move(iv)));
}

// Independent restatement of the four conditions.
bool partition_ok(const IntervalSet& Z, const std::vector<double>& u) {
  if (u.empty() || u.front() != Z.inf() || u.back() != Z.sup()) return false;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (!Z.contains(u[k])) return false;
    if (k + 1 < u.size()) {
      if (!(u[k] < u[k + 1])) return false;
      if (!(u[k + 1] < u[k] + 3.0) && Z.meets_open(u[k], u[k + 1])) return false;
    }
    if (k + 2 < u.size() && !(u[k] + 1.0 < u[k + 2])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("interval set") {
  const IntervalSet Z({{0.0, 0.0}, {5.0, 6.0}});
  CHECK(Z.inf() == 0.0);
  CHECK(Z.sup() == 6.0);
  CHECK(Z.contains(5.5));
  CHECK_FALSE(Z.contains(2.0));
  CHECK(Z.meets_open(4.0, 5.5));
  CHECK_FALSE(Z.meets_open(0.0, 5.0));
  CHECK(Z.nearest(2.0) == 0.0);
  CHECK(Z.nearest(3.0) == 5.0);
  CHECK_THROWS_AS(IntervalSet({{1.0, 0.0}}), Error);
  CHECK_THROWS_AS(IntervalSet({{0.0, 2.0}, {1.0, 3.0}}), Error);
}

TEST_CASE("zero partition examples") {
  CHECK(partition_of({{0.0, 0.0}, {5.0, 6.0}}) == std::vector<double>{0.0, 5.0, 6.0});
  CHECK(partition_of({{3.0, 3.0}}) == std::vector<double>{3.0});
  const auto u = partition_of({{0.0, 10.0}});
  CHECK(u.front() == 0.0);
  CHECK(u.back() == 10.0);
  for (std::size_t k = 0; k + 1 < u.size(); ++k) {
    CHECK(u[k + 1] - u[k] > 0.0);
    CHECK(u[k + 1] - u[k] < 3.0);
  }
  CHECK(partition_ok(IntervalSet({{0.0, 10.0}}), u));
  try {
    zero_partition(IntervalSet());
    FAIL("expected EmptySet");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptySet);
  }
}

TEST_CASE("property: zero partition on random interval sets") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    const auto Z = random_interval_set(17, i);
    const auto u = zero_partition(Z);
    CHECK(partition_ok(Z, u));
    CHECK_FALSE(partition_defect(Z, std::span<const double>(u)));
  }
  // The defect finder catches a broken chain.
  const IntervalSet Z({{0.0, 10.0}});
  const std::vector<double> bad{0.0, 5.0, 10.0};
  CHECK(partition_defect(Z, std::span<const double>(bad)));
}

TEST_CASE("two zeros bound examples") {
  const auto sym = check_two_zeros_bound(1, 1, 1, 1, 1);
  CHECK(sym.outcome == CheckOutcome::Holds);
  CHECK(sym.w0 == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
  CHECK(sym.lhs == 0.0);
  const auto r = check_two_zeros_bound(100, 100, 0.01, 0.02, 100);
  CHECK(r.outcome == CheckOutcome::Holds);
  CHECK(r.w0 == doctest::Approx(0.01 * (std::sqrt(1.0 + 1e4) - 1.0)).epsilon(1e-14));
  // D = 1 rejects w0 = 0.99 > D v0 = 0.01.
  CHECK(check_two_zeros_bound(100, 100, 0.01, 0.02, 1).outcome == CheckOutcome::NotApplicable);
}

TEST_CASE("property: two zeros bound on random tuples") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  long applicable = 0;
  for (int i = 0; i < 20000; ++i) {
    const double a = 10.0 - u(rng), b = 10.0 - u(rng), c = 10.0 - u(rng), d = 10.0 - u(rng);
    const auto r = check_two_zeros_bound(a, b, c, d, 5.0);
    CHECK(r.outcome != CheckOutcome::Violated);
    applicable += r.outcome == CheckOutcome::Holds;
  }
  CHECK(applicable > 10000);
}

TEST_CASE("decay") {
  const auto hat = make_hat(1.0, 1.0);
  const auto r = check_decay(hat, 0.5, 7.0, 1.0);
  CHECK(r.holds);
  CHECK(r.lhs > r.rhs);
  const auto eq = check_decay(hat, 2.0, 2.0, 1.0);
  CHECK(eq.holds);
  CHECK(eq.rhs == doctest::Approx(std::exp(-1.0) * eq.lhs).epsilon(1e-8));
  CHECK_THROWS_AS(check_decay(hat, 0.5, 7.0, 0.1), Error);
  CounterexampleParams p;
  p.N = 99;
  const MaximalSolver<double> s(build_f<double>(p));
  const double x0 = 16.0 * 0.1, x1 = 4096.0 * 0.1;
  const double c = measured_contact_ratio(s, x0, x1);
  CHECK(check_decay(s, x0, x1, c).holds);
}

TEST_CASE("low speed") {
  const auto hat = make_hat(1.0, 1.0);
  const auto same = check_low_speed(hat, 0.5, 0.5, 1.0);
  CHECK(same.outcome == CheckOutcome::Holds);
  CHECK(same.lhs == 0.0);
  const auto pair = check_low_speed(hat, 0.5, 7.0, 10.0);
  CHECK(pair.outcome == CheckOutcome::Holds);
  CHECK(pair.lhs == 0.0);
  // The triangle bump has (Mf)'' = 0 on a stretch of (0, 1).
  const auto tri = make_triangle_bump<double>();
  const auto z = find_second_derivative_zeros(tri, 0.01, 100.0);
  REQUIRE_FALSE(z.zeros.empty());
  const auto [l, r] = z.zeros.intervals().front();
  CHECK(check_low_speed(tri, l, l + 0.5 * (r - l), 10.0).outcome == CheckOutcome::Holds);
  // Not zeros of (Mf)'': preconditions fail.
  CHECK(check_low_speed(tri, 2.0, 3.0, 10.0).outcome == CheckOutcome::NotApplicable);
}

TEST_CASE("second derivative zero search") {
  const auto hat = find_second_derivative_zeros(make_hat(1.0, 1.0), 0.1, 10.0);
  CHECK(hat.identically_zero);
  REQUIRE(hat.zeros.intervals().size() == 1);
  CHECK(hat.zeros.inf() == 0.1);
  CHECK(hat.zeros.sup() == 10.0);
  // One sign change per decade pair of the oscillating family.
  const auto cx = find_second_derivative_zeros(build_f<double>(CounterexampleParams{}), 0.1, 819.2);
  CHECK_FALSE(cx.identically_zero);
  const auto changes = cx.zeros.intervals().size() + cx.jumps.size();
  CHECK(changes >= 2);
  // Single-signed (Mf)'' right of the triangle's support.
  const auto mono = find_second_derivative_zeros(make_triangle_bump<double>(), 1.5, 100.0);
  CHECK(mono.zeros.empty());
  CHECK(mono.jumps.empty());
}

TEST_CASE("d_c_lambda") {
  CHECK(d_c_lambda(1.0, 1.0) ==
        doctest::Approx(std::exp(-1.0 - 3.0) * (1.0 - std::exp(-1.0))).epsilon(1e-15));
  CHECK(d_c_lambda(2.0, 0.5) > 0.0);
}

TEST_CASE("radial ratio") {
  const auto r = radial_ratio(make_hat(1.0, 1.0));
  CHECK(r.ratio == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-9));
  CHECK(r.var_fprime == 2.0);
  CHECK(r.contact_violations == 0);
  const auto rep = radial_experiment(42, 10);
  CHECK(rep.count == 10);
  CHECK(rep.all_finite);
  CHECK(rep.max_ratio <= 20.0);
  CHECK(rep.contact_violations == 0);
  long total = 0;
  for (long h : rep.histogram) total += h;
  CHECK(total == 10);
}

TEST_CASE("random instances are deterministic, even and strict") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto f = random_even_instance(42, i);
    const auto g = random_even_instance(42, i);
    CHECK(f.breakpoints() == g.breakpoints());
    CHECK(f.slopes() == g.slopes());
    const auto c = f.classify();
    CHECK(c.single_peak);
    CHECK(c.K);
    for (double b : f.breakpoints()) CHECK(f.eval(-b) == doctest::Approx(f.eval(b)).epsilon(1e-13));
  }
  CHECK(split_seed(1, 2) != split_seed(2, 1));
}

TEST_CASE("suites") {
  for (const char* s : {"two-zeros", "partition", "decay", "low-speed", "radial"}) {
    const auto r = run_suite(s, 42, 5);
    CHECK(r.failed == 0);
    CHECK(r.passed > 0);
  }
  CHECK_THROWS_AS(run_suite("nope", 1, 1), Error);
}
