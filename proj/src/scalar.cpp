#include "majorant/scalar.hpp"

#include <charconv>
#include <cctype>
#include <system_error>

namespace majorant {

std::string_view mode_name(Mode m) { return m == Mode::Exact ? "exact" : "float"; }

Mode parse_mode(std::string_view name) {
  if (name == "exact") return Mode::Exact;
  if (name == "float") return Mode::Float;
  throw ParseError("unknown mode '" + std::string(name) + "' (expected exact or float)");
}

std::string format_scalar(const Rational& v) { return v.get_str(10); }

std::string format_scalar(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  std::string_view digits = s;
  bool negative = false;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (!all_digits(digits)) throw ParseError("malformed rational literal '" + std::string(whole) + "'");
  mpz_class z(std::string(digits), 10);
  return negative ? mpz_class(-z) : z;
}

// Finite decimal literal such as "-1.25e-3", converted exactly.
Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    if (!exp_part.empty() && exp_part.front() == '+') exp_part.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(exp_part.data(), exp_part.data() + exp_part.size(), exponent);
    if (ec != std::errc() || ptr != exp_part.data() + exp_part.size() || exp_part.empty())
      throw ParseError("malformed decimal literal '" + std::string(text) + "'");
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
      throw ParseError("malformed decimal literal '" + std::string(text) + "'");
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) throw ParseError("malformed decimal literal '" + std::string(text) + "'");
    digits = std::string(s);
  }
  if (exponent > 4096 || exponent < -4096) throw ParseError("decimal exponent out of range in '" + std::string(text) + "'");
  Rational out{mpz_class(digits, 10)};
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent < 0) {
    out /= scale;
  } else {
    out *= scale;
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw ParseError("malformed rational literal '" + std::string(text) + "'");
    mpz_class den(std::string(den_text), 10);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational out(num, den);
    out.canonicalize();
    return out;
  }
  if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text);
  return Rational(parse_integer(text, text));
}

double parse_double(std::string_view text) {
  if (text.find('/') != std::string_view::npos)
    throw ParseError("rational literal '" + std::string(text) + "' is not allowed in float mode");
  std::string_view s = text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError("malformed float literal '" + std::string(text) + "'");
  if (!std::isfinite(v)) throw ParseError("non-finite float literal '" + std::string(text) + "'");
  return v;
}

}  // namespace majorant
