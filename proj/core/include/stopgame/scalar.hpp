#pragma once

#include <cmath>
#include <concepts>
#include <string>

#include "stopgame/rational.hpp"

namespace stopgame {

/// The two arithmetic modes: exact rationals (default, all golden and oracle
/// comparisons) and double (refinement studies only, absolute tolerance 1e-9).
template <class T>
concept Scalar = std::same_as<T, Rat> || std::same_as<T, double>;

inline constexpr double kFloatTolerance = 1e-9;

template <Scalar T>
T scalar_cast(const Rat& r) {
  if constexpr (std::same_as<T, Rat>) {
    return r;
  } else {
    return r.to_double();
  }
}

template <Scalar T>
constexpr bool scalar_exact() {
  return std::same_as<T, Rat>;
}

/// Exact equality for Rat, |a-b| <= 1e-9 for double.
template <Scalar T>
bool approx_equal(const T& a, const T& b) {
  if constexpr (std::same_as<T, Rat>) {
    return a == b;
  } else {
    return std::fabs(a - b) <= kFloatTolerance;
  }
}

template <Scalar T>
T scalar_abs(const T& x) {
  if constexpr (std::same_as<T, Rat>) {
    return abs(x);
  } else {
    return std::fabs(x);
  }
}

template <Scalar T>
std::string scalar_str(const T& x);

template <>
std::string scalar_str<Rat>(const Rat& x);
template <>
std::string scalar_str<double>(const double& x);

inline const char* scalar_mode_name(bool exact) {
  return exact ? "rational" : "float";
}

}  // namespace stopgame
