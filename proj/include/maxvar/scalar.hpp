#pragma once

#include <cmath>
#include <concepts>
#include <limits>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/float128.hpp>

namespace maxvar {

// 113-bit significand, 15-bit exponent.
using Extended = boost::multiprecision::float128;

enum class ScalarMode { binary64, extended };

template <typename T>
concept Real = std::is_same_v<T, double> || std::is_same_v<T, long double> ||
               std::is_same_v<T, Extended>;

template <Real T>
inline double to_double(const T& v) {
  return static_cast<double>(v);
}

inline constexpr std::string_view scalar_mode_name(ScalarMode m) {
  return m == ScalarMode::binary64 ? "f64" : "ext";
}

/// Relative stationarity tolerance used by the maximal solver.
template <Real T>
inline T stationarity_tolerance() {
  if constexpr (std::is_same_v<T, double>) {
    return T(1e-12);
  } else {
    return T(1e-24);
  }
}

/// log10 of the largest finite value of T.
template <Real T>
inline double max_log10() {
  return static_cast<double>(std::numeric_limits<T>::max_exponent10);
}

}  // namespace maxvar
