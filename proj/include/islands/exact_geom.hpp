#pragma once

// Exact geometric kernel. Every predicate here works on rationals; there
// are no tolerances anywhere.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "islands/combinatorics.hpp"
#include "islands/errors.hpp"
#include "islands/point.hpp"
#include "islands/rational.hpp"

namespace islands::geom {

using Matrix = std::vector<std::vector<Rational>>;

/// Determinant by Gaussian elimination over the rationals.
inline Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (sgn(m[row][col]) == 0) continue;
      const Rational factor = m[row][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[row][j] -= factor * m[col][j];
    }
  }
  return det;
}

/// Solves a square system; nullopt when singular.
inline std::optional<std::vector<Rational>> solve_linear(Matrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || sgn(a[row][col]) == 0) continue;
      const Rational factor = a[row][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
      b[row] -= factor * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

inline void require_same_dim(std::span<const Point> pts, std::size_t dim, const char* op) {
  for (const auto& p : pts) {
    if (p.dim() != dim) {
      throw PreconditionError(std::string(op) + ": dimension mismatch (expected " +
                              std::to_string(dim) + ", got " + std::to_string(p.dim()) + ")");
    }
  }
}

inline std::vector<Rational> difference(const Point& a, const Point& b) {
  std::vector<Rational> out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational squared_distance(const Point& a, const Point& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Rational t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

/// Dimension of the affine hull (-1 for an empty list).
inline int affine_rank(std::span<const Point> pts) {
  if (pts.empty()) return -1;
  Matrix rows;
  for (std::size_t i = 1; i < pts.size(); ++i) rows.push_back(difference(pts[i], pts[0]));
  const std::size_t cols = pts[0].dim();
  int rank = 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && sgn(rows[pivot][c]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
    ++rank;
  }
  return rank;
}

inline bool affinely_independent(std::span<const Point> pts) {
  return affine_rank(pts) == static_cast<int>(pts.size()) - 1;
}

/// Signed determinant of the edge vectors p_i - p_0 (i = 1..d).
inline Rational orientation_determinant(std::span<const Point> simplex) {
  if (simplex.empty()) throw PreconditionError("orientation: empty simplex");
  const std::size_t d = simplex[0].dim();
  require_same_dim(simplex, d, "orientation");
  if (simplex.size() != d + 1) {
    throw PreconditionError("orientation: need d+1 = " + std::to_string(d + 1) + " points, got " +
                            std::to_string(simplex.size()));
  }
  if (d == 2) {
    const Point& a = simplex[0];
    return (simplex[1][0] - a[0]) * (simplex[2][1] - a[1]) -
           (simplex[1][1] - a[1]) * (simplex[2][0] - a[0]);
  }
  Matrix m;
  m.reserve(d);
  for (std::size_t i = 1; i <= d; ++i) m.push_back(difference(simplex[i], simplex[0]));
  return determinant(std::move(m));
}

/// Sign of the orientation determinant: -1, 0 or +1.
inline int orientation(std::span<const Point> simplex) {
  return sgn(orientation_determinant(simplex));
}

/// d-dimensional volume |det| / d!.
inline Rational simplex_volume(std::span<const Point> simplex) {
  const Rational det = orientation_determinant(simplex);
  return Rational(abs(det) / Rational(factorial(static_cast<std::int64_t>(simplex[0].dim()))));
}

/// Squared Euclidean distance from q to aff(A), as a ratio of Gram
/// determinants.
inline Rational squared_distance_to_affine_hull(const Point& q, std::span<const Point> a) {
  if (a.empty()) throw PreconditionError("distance to affine hull: empty point list");
  require_same_dim(a, q.dim(), "distance to affine hull");
  if (!affinely_independent(a)) {
    throw PreconditionError("distance to affine hull: points are affinely dependent");
  }
  std::vector<std::vector<Rational>> vecs;
  for (std::size_t i = 1; i < a.size(); ++i) vecs.push_back(difference(a[i], a[0]));
  const auto w = difference(q, a[0]);
  if (vecs.empty()) return dot(w, w);

  const std::size_t m = vecs.size();
  Matrix base(m, std::vector<Rational>(m));
  Matrix extended(m + 1, std::vector<Rational>(m + 1));
  for (std::size_t i = 0; i <= m; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      const auto& u = i < m ? vecs[i] : w;
      const auto& v = j < m ? vecs[j] : w;
      extended[i][j] = dot(u, v);
      if (i < m && j < m) base[i][j] = extended[i][j];
    }
  }
  return Rational(determinant(std::move(extended)) / determinant(std::move(base)));
}

namespace detail {

/// Orthogonal projection of q onto aff(T) for affinely independent T.
/// Returns the barycentric coordinates (first entry for T[0]) and the
/// squared distance, or nullopt when T is dependent.
struct Projection {
  std::vector<Rational> barycentric;
  Rational squared_distance;
};

inline std::optional<Projection> project_to_affine_hull(const Point& q,
                                                         std::span<const Point> t) {
  const auto w = difference(q, t[0]);
  if (t.size() == 1) return Projection{{Rational(1)}, dot(w, w)};
  std::vector<std::vector<Rational>> vecs;
  for (std::size_t i = 1; i < t.size(); ++i) vecs.push_back(difference(t[i], t[0]));
  const std::size_t m = vecs.size();
  Matrix gram(m, std::vector<Rational>(m));
  std::vector<Rational> rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) gram[i][j] = gram[j][i] = dot(vecs[i], vecs[j]);
    rhs[i] = dot(vecs[i], w);
  }
  auto mu = solve_linear(std::move(gram), rhs);
  if (!mu) return std::nullopt;
  Projection out;
  out.barycentric.resize(m + 1);
  Rational sum = 0;
  Rational along = 0;
  for (std::size_t i = 0; i < m; ++i) {
    out.barycentric[i + 1] = (*mu)[i];
    sum += (*mu)[i];
    along += (*mu)[i] * rhs[i];
  }
  out.barycentric[0] = 1 - sum;
  out.squared_distance = dot(w, w) - along;
  return out;
}

}  // namespace detail

/// Exact squared distance from q to conv(P): the minimum, over affinely
/// independent T ⊆ P whose projection of q lands in conv(T), of the
/// squared distance to aff(T).
inline Rational squared_distance_to_convex_hull(const Point& q, std::span<const Point> p) {
  if (p.empty()) throw PreconditionError("distance to convex hull: empty point list");
  require_same_dim(p, q.dim(), "distance to convex hull");
  const std::size_t d = q.dim();
  std::optional<Rational> best;
  std::vector<Point> subset;
  for (std::size_t r = 1; r <= std::min(p.size(), d + 1); ++r) {
    for_each_combination(p.size(), r, [&](std::span<const std::size_t> idx) {
      subset.clear();
      for (auto i : idx) subset.push_back(p[i]);
      auto proj = detail::project_to_affine_hull(q, subset);
      if (!proj) return true;
      for (const auto& lambda : proj->barycentric) {
        if (sgn(lambda) < 0) return true;
      }
      if (!best || proj->squared_distance < *best) best = proj->squared_distance;
      return sgn(*best) != 0;
    });
    if (best && sgn(*best) == 0) break;
  }
  return *best;
}

enum class HullLocation { interior, boundary, outside };

inline const char* to_string(HullLocation loc) {
  switch (loc) {
    case HullLocation::interior: return "interior";
    case HullLocation::boundary: return "boundary";
    case HullLocation::outside: return "outside";
  }
  return "?";
}

/// q in the closed simplex S (d+1 points, nondegenerate): every facet
/// replacement keeps the orientation sign or produces zero.
inline bool in_closed_simplex(const Point& q, std::span<const Point> simplex, int simplex_sign) {
  std::vector<Point> probe(simplex.begin(), simplex.end());
  for (std::size_t j = 0; j < probe.size(); ++j) {
    Point saved = std::move(probe[j]);
    probe[j] = q;
    const int s = orientation(probe);
    probe[j] = std::move(saved);
    if (s != 0 && s != simplex_sign) return false;
  }
  return true;
}

/// Classifies q against conv(P). Membership follows Carathéodory: q is in
/// conv(P) iff it lies in some (d+1)-point simplex of P. A member is on
/// the boundary iff it lies on a supporting hyperplane spanned by d points
/// of P. Lower-dimensional hulls have no interior.
inline HullLocation point_in_hull(const Point& q, std::span<const Point> p) {
  if (p.empty()) throw PreconditionError("point_in_hull: empty point list");
  const std::size_t d = q.dim();
  require_same_dim(p, d, "point_in_hull");

  if (affine_rank(p) < static_cast<int>(d)) {
    return sgn(squared_distance_to_convex_hull(q, p)) == 0 ? HullLocation::boundary
                                                          : HullLocation::outside;
  }

  bool member = false;
  std::vector<Point> simplex;
  for_each_combination(p.size(), d + 1, [&](std::span<const std::size_t> idx) {
    simplex.clear();
    for (auto i : idx) simplex.push_back(p[i]);
    const int s = orientation(simplex);
    if (s == 0) return true;
    member = in_closed_simplex(q, simplex, s);
    return !member;
  });
  if (!member) return HullLocation::outside;

  bool on_boundary = false;
  std::vector<Point> probe;
  for_each_combination(p.size(), d, [&](std::span<const std::size_t> idx) {
    probe.clear();
    for (auto i : idx) probe.push_back(p[i]);
    if (!affinely_independent(probe)) return true;
    probe.push_back(q);
    const int side_q = orientation(probe);
    if (side_q != 0) return true;
    int side = 0;
    bool supporting = true;
    for (const auto& x : p) {
      probe.back() = x;
      const int s = orientation(probe);
      if (s == 0) continue;
      if (side == 0) side = s;
      if (s != side) {
        supporting = false;
        break;
      }
    }
    on_boundary = supporting;
    return !on_boundary;
  });
  return on_boundary ? HullLocation::boundary : HullLocation::interior;
}

}  // namespace islands::geom
