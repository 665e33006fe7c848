#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace islands {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "a", "-a", "a/b" or a decimal literal. Decimal literals are read
/// as IEEE binary64 and converted exactly, so "0.5" is 1/2 and "0.1" is the
/// dyadic rational closest to one tenth.
inline Rational parse_rational(std::string_view token) {
  if (token.empty()) throw std::invalid_argument("empty number");
  std::string text(token);
  const bool decimal = text.find_first_of(".eE") != std::string::npos &&
                       text.find('/') == std::string::npos;
  if (decimal) {
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || errno == ERANGE) {
      throw std::invalid_argument("bad decimal literal '" + text + "'");
    }
    return Rational(value);
  }

  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);

  auto digits_only = [](const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
  };
  if (!digits_only(num, true) || !digits_only(den, false)) {
    throw std::invalid_argument("bad number '" + text + "'");
  }
  BigInt n(num[0] == '+' ? num.substr(1) : num, 10);
  BigInt d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Canonical exact form: "a" for integers, "a/b" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline std::string to_string(const BigInt& z) { return z.get_str(10); }

/// Fixed-point decimal rendering with `digits` fractional digits, rounded
/// half away from zero. Exact; no floating point involved.
inline std::string to_decimal(const Rational& r, int digits = 6) {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const bool negative = sgn(r) < 0;
  Rational a = abs(r);
  BigInt scaled = (a.get_num() * scale * 2 + a.get_den()) / (a.get_den() * 2);
  std::string s = scaled.get_str(10);
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) {
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    }
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative && scaled != 0) s.insert(0, "-");
  return s;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

inline BigInt factorial(std::int64_t n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
  return out;
}

inline BigInt power(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

}  // namespace islands
