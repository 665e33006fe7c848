#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "islands/rational.hpp"

namespace islands {

/// A point of R^d with exact rational coordinates. Immutable.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<Rational> coords) : coords_(coords) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Rational> coords() const noexcept { return coords_; }

  /// Drops the last coordinate.
  Point projected() const {
    return Point(std::vector<Rational>(coords_.begin(), coords_.end() - (coords_.empty() ? 0 : 1)));
  }

  /// Keeps the first `m` coordinates.
  Point truncated(std::size_t m) const {
    return Point(std::vector<Rational>(coords_.begin(), coords_.begin() + static_cast<std::ptrdiff_t>(m)));
  }

  friend bool operator==(const Point& a, const Point& b) { return a.coords_ == b.coords_; }

 private:
  std::vector<Rational> coords_;
};

/// Coordinatewise lexicographic comparison: negative, zero or positive.
inline int lex_compare(const Point& a, const Point& b) {
  const std::size_t m = std::min(a.dim(), b.dim());
  for (std::size_t i = 0; i < m; ++i) {
    const int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  if (a.dim() == b.dim()) return 0;
  return a.dim() < b.dim() ? -1 : 1;
}

inline bool lex_less(const Point& a, const Point& b) { return lex_compare(a, b) < 0; }

struct LexLess {
  bool operator()(const Point& a, const Point& b) const { return lex_less(a, b); }
};

inline std::ostream& operator<<(std::ostream& os, const Point& p) {
  os << '(';
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) os << ", ";
    os << to_string(p[i]);
  }
  return os << ')';
}

}  // namespace islands
