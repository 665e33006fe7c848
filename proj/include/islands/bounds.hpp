#pragma once

// Closed-form bounds on expected hole and island counts, evaluated
// exactly. Upper bounds hold for n points uniform in a convex body of
// volume 1; lower bounds hold for every set in general position.

#include <cstdint>
#include <string>

#include "islands/errors.hpp"
#include "islands/rational.hpp"

namespace islands::bounds {

struct BoundValue {
  Rational value;
  std::string formula_id;
  std::int64_t d = 0, k = 0, n = 0;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

/// n(n-1)...(n-terms+1)
inline BigInt falling(std::int64_t n, std::int64_t terms) {
  BigInt out = 1;
  for (std::int64_t t = 0; t < terms; ++t) out *= BigInt(static_cast<long>(n - t));
  return out;
}

inline Rational pow_q(const Rational& base, std::int64_t e) {
  Rational out = 1;
  for (std::int64_t i = 0; i < e; ++i) out *= base;
  return out;
}

inline void check_dkn(std::int64_t d, std::int64_t k, std::int64_t n, const char* name) {
  require(d >= 2, std::string(name) + ": need d >= 2");
  require(k >= d + 1, std::string(name) + ": need k >= d+1");
  require(n >= k, std::string(name) + ": need n >= k");
}

}  // namespace detail

/// Expected number of k-islands is at most
///   2^{d-1} (2 d^{2d-1} C(k,⌊d/2⌋))^{k-d-1} (k-d) n(n-1)...(n-k+2) / (n-k+1)^{k-d-1}.
inline BoundValue bound_theorem1(std::int64_t d, std::int64_t k, std::int64_t n) {
  detail::check_dkn(d, k, n, "theorem1");
  const BigInt inner = 2 * power(BigInt(static_cast<long>(d)), static_cast<unsigned long>(2 * d - 1)) * binomial(k, d / 2);
  Rational v = Rational(power(BigInt(2), static_cast<unsigned long>(d - 1)));
  v *= detail::pow_q(Rational(inner), k - d - 1);
  v *= Rational(BigInt(static_cast<long>(k - d)));
  v *= Rational(detail::falling(n, k - 1));
  v /= detail::pow_q(Rational(BigInt(static_cast<long>(n - k + 1))), k - d - 1);
  v.canonicalize();
  return {v, "theorem1", d, k, n};
}

/// Expected number of k-holes: the island bound divided by (k-d)(k-d-1)!.
inline BoundValue bound_theorem2(std::int64_t d, std::int64_t k, std::int64_t n) {
  detail::check_dkn(d, k, n, "theorem2");
  const BigInt inner = 2 * power(BigInt(static_cast<long>(d)), static_cast<unsigned long>(2 * d - 1)) * binomial(k, d / 2);
  Rational v = Rational(power(BigInt(2), static_cast<unsigned long>(d - 1)));
  v *= detail::pow_q(Rational(inner), k - d - 1);
  v *= Rational(detail::falling(n, k - 1));
  v /= Rational(factorial(k - d - 1));
  v /= detail::pow_q(Rational(BigInt(static_cast<long>(n - k + 1))), k - d - 1);
  v.canonicalize();
  return {v, "theorem2", d, k, n};
}

/// Expected number of empty simplices: 2^{d-1} d! C(n,d).
inline BoundValue bound_corollary3(std::int64_t d, std::int64_t n) {
  detail::require(d >= 2, "corollary3: need d >= 2");
  detail::require(n >= d + 1, "corollary3: need n >= d+1");
  const BigInt v = power(BigInt(2), static_cast<unsigned long>(d - 1)) * factorial(d) * binomial(n, d);
  return {Rational(v), "corollary3", d, d + 1, n};
}

/// Sharper planar 4-hole bound 12 n(n-1)(n-2)/(n-3).
inline BoundValue bound_planar4_improved(std::int64_t n) {
  detail::require(n >= 4, "planar4_improved: need n >= 4");
  Rational v(BigInt(12) * detail::falling(n, 3), BigInt(static_cast<long>(n - 3)));
  v.canonicalize();
  return {v, "planar4_improved", 2, 4, n};
}

/// Every n-point set in general position has at least C(n-1,d) empty
/// simplices.
inline BoundValue lower_bound_empty_simplices(std::int64_t d, std::int64_t n) {
  detail::require(d >= 1, "lower_bound_empty_simplices: need d >= 1");
  detail::require(n >= d + 1, "lower_bound_empty_simplices: need n >= d+1");
  return {Rational(binomial(n - 1, d)), "lower_empty_simplices", d, d + 1, n};
}

/// Every n-point set in general position has at least C(n,d)/C(k,d)
/// k-islands for d <= k <= n: each d-subset extends to a k-island and each
/// k-island covers C(k,d) of them.
inline BoundValue lower_bound_islands(std::int64_t d, std::int64_t k, std::int64_t n) {
  detail::require(d >= 1, "lower_bound_islands: need d >= 1");
  detail::require(k >= d && n >= k, "lower_bound_islands: need d <= k <= n");
  Rational v(binomial(n, d), binomial(k, d));
  v.canonicalize();
  return {v, "lower_islands", d, k, n};
}

}  // namespace islands::bounds
