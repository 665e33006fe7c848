#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace islands::sampling {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Folds a seed and any number of stream coordinates into one key.
constexpr std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) noexcept {
  std::uint64_t key = mix64(seed + 0x9e3779b97f4a7c15ULL);
  for (auto s : stream) key = mix64(key ^ mix64(s + 0x632be59bd9b4e019ULL));
  return key;
}

/// Counter-based generator: output i is mix64(key + (i+1)·γ), i.e. a
/// SplitMix64 stream whose starting state is the key. Distinct keys give
/// independent substreams, so points can be drawn in any order.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(key) {}

  constexpr std::uint64_t next() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform integer in [0, 2^53).
  constexpr std::uint64_t next53() noexcept { return next() >> 11; }

  /// Uniform double in [0, 1) on the 2^-53 grid.
  double uniform() noexcept { return std::ldexp(static_cast<double>(next53()), -53); }

  /// Uniform double in (0, 1].
  double uniform_open0() noexcept { return std::ldexp(static_cast<double>(next53() + 1), -53); }

  /// Standard normal via Box–Muller (one of the pair).
  double normal() noexcept {
    const double u1 = uniform_open0();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  constexpr std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace islands::sampling
