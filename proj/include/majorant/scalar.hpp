#pragma once

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

#include "majorant/errors.hpp"

namespace majorant {

using Rational = mpq_class;

enum class Mode { Exact, Float };

template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, double>;

template <Scalar T>
constexpr Mode mode_of() {
  if constexpr (std::same_as<T, Rational>) {
    return Mode::Exact;
  } else {
    return Mode::Float;
  }
}

std::string_view mode_name(Mode m);
Mode parse_mode(std::string_view name);

inline bool is_zero(const Rational& v) { return sgn(v) == 0; }
inline bool is_zero(double v) { return v == 0.0; }

inline Rational abs_value(const Rational& v) { return Rational(abs(v)); }
inline double abs_value(double v) { return std::fabs(v); }

inline bool is_finite(const Rational&) { return true; }
inline bool is_finite(double v) { return std::isfinite(v); }

inline double to_double(const Rational& v) { return v.get_d(); }
inline double to_double(double v) { return v; }

/// Converts a double into the target scalar; the rational conversion is exact.
template <Scalar T>
T from_double(double v) {
  if constexpr (std::same_as<T, Rational>) {
    if (!std::isfinite(v)) throw ModeError("non-finite value has no rational form");
    return Rational(v);
  } else {
    return v;
  }
}

template <Scalar T>
T convert_scalar(const Rational& v) {
  if constexpr (std::same_as<T, Rational>) {
    return v;
  } else {
    return v.get_d();
  }
}

template <Scalar T>
T convert_scalar(double v) {
  return from_double<T>(v);
}

template <Scalar T>
T factorial(unsigned n) {
  T out = 1;
  for (unsigned k = 2; k <= n; ++k) out *= T(k);
  return out;
}

/// Exact values print as "p/q" (or "p" when q = 1); floats use the shortest
/// decimal that round-trips.
std::string format_scalar(const Rational& v);
std::string format_scalar(double v);

Rational parse_rational(std::string_view text);
double parse_double(std::string_view text);

template <Scalar T>
T parse_scalar(std::string_view text) {
  if constexpr (std::same_as<T, Rational>) {
    return parse_rational(text);
  } else {
    return parse_double(text);
  }
}

}  // namespace majorant
