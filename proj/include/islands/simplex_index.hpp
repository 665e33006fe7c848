#pragma once

// Per-set tables derived once from exact orientations and then shared by
// every enumeration engine:
//   OrientationTable  sign of every sorted (d+1)-tuple;
//   SimplexContents   for every (d+1)-tuple T, the bitmask of points of
//                     S \ T inside the closed simplex conv(T).
// Under general position, conv(I) ∩ S is the union of the contents of the
// (d+1)-subsets of I (Carathéodory), which is all the engines need.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "islands/combinatorics.hpp"
#include "islands/errors.hpp"
#include "islands/lattice.hpp"
#include "islands/pointset.hpp"

namespace islands::enumerate {

inline constexpr std::size_t kMaxTableWords = std::size_t{1} << 24;

class OrientationTable {
 public:
  explicit OrientationTable(const PointSet& s)
      : n_(s.size()), dim_(s.dim()), binom_(s.size(), s.dim() + 1) {
    const std::uint64_t tuples = binom_(n_, dim_ + 1);
    if (tuples > kMaxTableWords * 8) {
      throw CapExceeded("orientation table for n=" + std::to_string(n_) + ", d=" +
                        std::to_string(dim_) + " is too large");
    }
    signs_.resize(tuples);
    geom::LatticeCoordinates lattice(s.points());
    for_each_combination(n_, dim_ + 1, [&](std::span<const std::size_t> idx) {
      const int sign = lattice.orientation(idx);
      signs_[binom_.rank(idx)] = static_cast<std::int8_t>(sign);
      if (sign == 0) degenerate_ = true;
      return true;
    });
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return dim_; }
  bool has_zero() const noexcept { return degenerate_; }
  const BinomialTable& binomials() const noexcept { return binom_; }

  int sorted_sign(std::span<const std::size_t> sorted) const { return signs_[binom_.rank(sorted)]; }

  /// Sign for indices in any order (permutation parity applied).
  int sign(std::span<const std::size_t> idx) const {
    std::array<std::size_t, 16> buf{};
    std::copy(idx.begin(), idx.end(), buf.begin());
    std::span<std::size_t> tuple(buf.data(), idx.size());
    const int parity = sort_with_parity(tuple);
    return parity * sorted_sign(tuple);
  }

 private:
  std::size_t n_;
  std::size_t dim_;
  BinomialTable binom_;
  std::vector<std::int8_t> signs_;
  bool degenerate_ = false;
};

class SimplexContents {
 public:
  /// Requires general position (every (d+1)-tuple nondegenerate).
  explicit SimplexContents(const PointSet& s) : table_(s) {
    const std::size_t n = s.size();
    const std::size_t d = s.dim();
    if (table_.has_zero()) throw PreconditionError("point set is not in general position");
    words_ = (n + 63) / 64;
    const std::uint64_t tuples = table_.binomials()(n, d + 1);
    if (tuples * words_ > kMaxTableWords) {
      throw CapExceeded("simplex table for n=" + std::to_string(n) + ", d=" + std::to_string(d) +
                        " exceeds the memory cap; use a smaller n");
    }
    masks_.assign(tuples * words_, 0);
    empty_.assign(tuples, 1);

    std::array<std::size_t, 16> probe{};
    for_each_combination(n, d + 1, [&](std::span<const std::size_t> t) {
      const std::uint64_t r = table_.binomials().rank(t);
      const int s_sign = table_.sorted_sign(t);
      std::uint64_t* m = &masks_[r * words_];
      std::size_t ti = 0;
      for (std::size_t p = 0; p < n; ++p) {
        if (ti < t.size() && t[ti] == p) {
          ++ti;
          continue;
        }
        bool inside = true;
        for (std::size_t j = 0; j <= d && inside; ++j) {
          std::copy(t.begin(), t.end(), probe.begin());
          probe[j] = p;
          inside = table_.sign(std::span<const std::size_t>(probe.data(), d + 1)) == s_sign;
        }
        if (inside) {
          m[p / 64] |= std::uint64_t{1} << (p % 64);
          empty_[r] = 0;
        }
      }
      return true;
    });
  }

  const OrientationTable& orientations() const noexcept { return table_; }
  std::size_t size() const noexcept { return table_.size(); }
  std::size_t dim() const noexcept { return table_.dim(); }
  std::size_t words() const noexcept { return words_; }

  std::uint64_t rank(std::span<const std::size_t> sorted) const { return table_.binomials().rank(sorted); }
  const std::uint64_t* mask(std::uint64_t rank) const { return &masks_[rank * words_]; }
  bool is_empty(std::uint64_t rank) const { return empty_[rank] != 0; }

 private:
  OrientationTable table_;
  std::size_t words_ = 1;
  std::vector<std::uint64_t> masks_;
  std::vector<std::uint8_t> empty_;
};

}  // namespace islands::enumerate
