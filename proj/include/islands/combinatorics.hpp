#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace islands {

/// Visits every r-subset of {0,...,n-1} in lexicographic order. The visitor
/// receives a sorted index span and returns false to stop early. Returns
/// false iff the visit was stopped.
template <class Visitor>
bool for_each_combination(std::size_t n, std::size_t r, Visitor&& visit) {
  if (r > n) return true;
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    if (!visit(std::span<const std::size_t>(idx))) return false;
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Pascal table of binomial coefficients as 64-bit values, for
/// combinatorial-number-system ranking of small subsets.
class BinomialTable {
 public:
  BinomialTable() = default;
  BinomialTable(std::size_t max_n, std::size_t max_k)
      : cols_(max_k + 1), table_((max_n + 1) * (max_k + 1), 0) {
    for (std::size_t n = 0; n <= max_n; ++n) {
      at(n, 0) = 1;
      for (std::size_t k = 1; k <= max_k && k <= n; ++k) {
        at(n, k) = at(n - 1, k - 1) + (k <= n - 1 ? at(n - 1, k) : 0);
      }
    }
  }

  std::uint64_t operator()(std::size_t n, std::size_t k) const {
    return k < cols_ && (n * cols_ + k) < table_.size() ? table_[n * cols_ + k] : 0;
  }

  /// Rank of a sorted subset in colexicographic order.
  std::uint64_t rank(std::span<const std::size_t> sorted) const {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) r += (*this)(sorted[i], i + 1);
    return r;
  }

 private:
  std::uint64_t& at(std::size_t n, std::size_t k) { return table_[n * cols_ + k]; }

  std::size_t cols_ = 0;
  std::vector<std::uint64_t> table_;
};

/// Sorts a tiny index array in place and returns the permutation parity
/// (+1 even, -1 odd).
inline int sort_with_parity(std::span<std::size_t> idx) {
  int parity = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
      std::swap(idx[j - 1], idx[j]);
      parity = -parity;
    }
  }
  return parity;
}

}  // namespace islands
