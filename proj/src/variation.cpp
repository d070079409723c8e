#include "maxvar/variation.hpp"

#include <cmath>

namespace maxvar {

SampledSignal::SampledSignal(std::vector<double> x, std::vector<double> v)
    : abscissae(std::move(x)), values(std::move(v)) {
  if (abscissae.size() != values.size()) {
    throw Error(ErrorKind::InvalidInput, "abscissae and values differ in length");
  }
  detail::require_strictly_increasing(abscissae, "abscissae");
}

namespace {

void extend(std::span<const double> v, double q, std::size_t last, double sum,
            double& best) {
  best = std::max(best, sum);
  for (std::size_t next = last + 1; next < v.size(); ++next) {
    extend(v, q, next, sum + detail::power_of(std::abs(v[next] - v[last]), q), best);
  }
}

// q = 1: path sums in the wide scalar, rounded once at the end.
void extend_linear(std::span<const double> v, std::size_t last, const Extended& sum,
                   Extended& best) {
  if (sum > best) best = sum;
  for (std::size_t next = last + 1; next < v.size(); ++next) {
    const Extended step = abs(Extended(v[next]) - Extended(v[last]));
    extend_linear(v, next, sum + step, best);
  }
}

}  // namespace

double q_variation_bruteforce(std::span<const double> v, double q) {
  detail::require_exponent(q);
  if (v.size() > 20) {
    throw Error(ErrorKind::TooLarge, "brute force is limited to 20 samples");
  }
  if (q == 1.0) {
    Extended best = 0;
    for (std::size_t first = 0; first < v.size(); ++first) extend_linear(v, first, Extended(0), best);
    return static_cast<double>(best);
  }
  double best = 0.0;
  for (std::size_t first = 0; first < v.size(); ++first) extend(v, q, first, 0.0, best);
  return detail::root_of(best, q);
}

double total_variation(const SampledSignal& s) {
  return total_variation(std::span<const double>(s.values));
}

double q_variation(const SampledSignal& s, double q) {
  return q_variation(std::span<const double>(s.values), q);
}

double sup_variation(const SampledSignal& s) {
  return sup_variation(std::span<const double>(s.values));
}

double q_variation_bruteforce(const SampledSignal& s, double q) {
  return q_variation_bruteforce(std::span<const double>(s.values), q);
}

}  // namespace maxvar
