#pragma once

// Orientation signs over integer coordinates. A point list is scaled by
// the positive lcm of all denominators, which preserves every orientation
// sign, and the determinants are then evaluated in integer arithmetic:
// native 128-bit when the planar coordinates are small enough, GMP
// otherwise.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "islands/point.hpp"
#include "islands/rational.hpp"

namespace islands::geom {

class LatticeCoordinates {
 public:
  explicit LatticeCoordinates(std::span<const Point> pts) : n_(pts.size()) {
    dim_ = pts.empty() ? 0 : pts[0].dim();
    BigInt lcm = 1;
    for (const auto& p : pts) {
      for (const auto& c : p.coords()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    }
    big_.reserve(n_ * dim_);
    bool small = dim_ == 2;
    for (const auto& p : pts) {
      for (const auto& c : p.coords()) {
        big_.push_back(c.get_num() * (lcm / c.get_den()));
        if (small && mpz_sizeinbase(big_.back().get_mpz_t(), 2) > kSmallBits) small = false;
      }
    }
    if (small) {
      small_.reserve(big_.size());
      for (const auto& z : big_) small_.push_back(to_int128(z));
    }
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return dim_; }

  /// Orientation sign of the simplex with vertices idx[0..d].
  int orientation(std::span<const std::size_t> idx) const {
    if (!small_.empty()) return orientation_small(idx);
    if (dim_ == 1) return sgn(at(idx[1], 0) - at(idx[0], 0));
    if (dim_ == 2) return orientation2(idx);
    if (dim_ == 3) return orientation3(idx);
    return orientation_general(idx);
  }

 private:
  static constexpr std::size_t kSmallBits = 61;

  static __int128 to_int128(const BigInt& z) {
    const bool neg = sgn(z) < 0;
    BigInt a = abs(z);
    const BigInt two64 = BigInt(1) << 64;
    const BigInt hi = a / two64;
    const BigInt lo = a % two64;
    const unsigned __int128 value =
        (static_cast<unsigned __int128>(mpz_get_ui(hi.get_mpz_t())) << 64) |
        static_cast<unsigned __int128>(mpz_get_ui(lo.get_mpz_t()));
    return neg ? -static_cast<__int128>(value) : static_cast<__int128>(value);
  }

  const BigInt& at(std::size_t point, std::size_t axis) const { return big_[point * dim_ + axis]; }

  int orientation_small(std::span<const std::size_t> idx) const {
    const __int128* a = &small_[idx[0] * 2];
    const __int128* b = &small_[idx[1] * 2];
    const __int128* c = &small_[idx[2] * 2];
    const __int128 det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    return (det > 0) - (det < 0);
  }

  int orientation2(std::span<const std::size_t> idx) const {
    BigInt bx = at(idx[1], 0) - at(idx[0], 0), by = at(idx[1], 1) - at(idx[0], 1);
    BigInt cx = at(idx[2], 0) - at(idx[0], 0), cy = at(idx[2], 1) - at(idx[0], 1);
    BigInt det = bx * cy - by * cx;
    return sgn(det);
  }

  int orientation3(std::span<const std::size_t> idx) const {
    BigInt m[3][3];
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) m[i][j] = at(idx[i + 1], j) - at(idx[0], j);
    }
    BigInt det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                 m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                 m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    return sgn(det);
  }

  // Fraction-free (Bareiss) elimination.
  int orientation_general(std::span<const std::size_t> idx) const {
    const std::size_t d = dim_;
    std::vector<BigInt> m(d * d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) m[i * d + j] = at(idx[i + 1], j) - at(idx[0], j);
    }
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < d; ++k) {
      if (sgn(m[k * d + k]) == 0) {
        std::size_t p = k + 1;
        while (p < d && sgn(m[p * d + k]) == 0) ++p;
        if (p == d) return 0;
        for (std::size_t j = 0; j < d; ++j) std::swap(m[k * d + j], m[p * d + j]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < d; ++i) {
        for (std::size_t j = k + 1; j < d; ++j) {
          m[i * d + j] = (m[i * d + j] * m[k * d + k] - m[i * d + k] * m[k * d + j]) / prev;
        }
      }
      prev = m[k * d + k];
    }
    return sign * sgn(m[(d - 1) * d + (d - 1)]);
  }

  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<BigInt> big_;
  std::vector<__int128> small_;
};

}  // namespace islands::geom
