#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hinv {

namespace detail {

inline std::int64_t checked_cast128(__int128 v, const char* what) {
  if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
    throw std::overflow_error(std::string("integer overflow in ") + what);
  return static_cast<std::int64_t>(v);
}

}  // namespace detail

/// Exact rational on int64 with 128-bit intermediates. Covers everything the
/// combinatorics needs (L <= 15 or so); overflow throws rather than wraps.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    const __int128 n = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
    const __int128 d = static_cast<__int128>(a.den) * b.den;
    return reduced(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    const __int128 n = static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den;
    const __int128 d = static_cast<__int128>(a.den) * b.den;
    return reduced(n, d);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return reduced(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }

  [[nodiscard]] double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

 private:
  static Rational reduced(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    Rational r;
    r.num = detail::checked_cast128(n, "Rational");
    r.den = detail::checked_cast128(d, "Rational");
    return r;
  }
};

/// n! as an exact int64; valid for n <= 20.
inline std::int64_t factorial_exact(int n) {
  if (n < 0) throw std::invalid_argument("factorial_exact: negative argument");
  if (n > 20) throw std::overflow_error("factorial_exact: n > 20 exceeds int64");
  std::int64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Binomial coefficient as an exact int64.
inline std::int64_t binomial_exact(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return detail::checked_cast128(r, "binomial_exact");
}

/// base^exp exactly (int64, checked).
inline std::int64_t ipow_exact(std::int64_t base, int exp) {
  if (exp < 0) throw std::invalid_argument("ipow_exact: negative exponent");
  __int128 r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    detail::checked_cast128(r, "ipow_exact");
  }
  return detail::checked_cast128(r, "ipow_exact");
}

}  // namespace hinv
