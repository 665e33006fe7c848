#pragma once

// d-dimensional Horton sets: construction and an exact verifier.
//
// Points are taken in order of increasing first coordinate, and
// H_{i,m} is the set of points whose rank is congruent to i mod m. A set
// is d-Horton when it is in strongly general position, has at most one
// point or satisfies
//   (i)   d > 2: the projection dropping the last coordinate is
//         (d-1)-Horton;
//   (ii)  every class H_{i,p_d} is d-Horton;
//   (iii) every I ⊆ {0..p_d-1} with |I| >= 2 splits into nonempty J and
//         I\J with the union over J deep below the union over I\J.
// p_2 = 2, p_3 = 3, p_4 = 5, ... Every finite subset of R is 1-Horton.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "islands/combinatorics.hpp"
#include "islands/errors.hpp"
#include "islands/exact_geom.hpp"
#include "islands/pointset.hpp"

namespace islands::horton {

inline constexpr std::size_t kMaxDim = 6;

/// p_d, the (d-1)-th prime.
inline std::size_t horton_prime(std::size_t d) {
  static constexpr std::size_t primes[] = {2, 3, 5, 7, 11};
  if (d < 2 || d > kMaxDim) {
    throw PreconditionError("Horton classes are defined for 2 <= d <= " + std::to_string(kMaxDim));
  }
  return primes[d - 2];
}

struct HortonParams {
  BigInt scale_seed = 2;        // initial scale, squared after each failed round
  std::size_t max_rounds = 16;  // construction gives up after this many scales
  std::size_t verify_cap = 256;
};

struct HortonReport {
  bool strongly_general = false;
  bool projection_ok = false;  // clause (i), recursively
  bool classes_ok = false;     // clause (ii), recursively
  bool partitions_ok = false;  // clause (iii) at the top level
  std::vector<std::string> witnesses;

  bool ok() const { return strongly_general && projection_ok && classes_ok && partitions_ok; }
};

inline nlohmann::json to_json(const HortonReport& r) {
  return {{"strongly_general", r.strongly_general}, {"projection_ok", r.projection_ok},
          {"classes_ok", r.classes_ok},             {"partitions_ok", r.partitions_ok},
          {"horton", r.ok()},                      {"witnesses", r.witnesses}};
}

namespace detail {

/// Hyperplane {x : normal·(x - base) = 0} with normal[d-1] != 0, so
/// "above" means a larger last coordinate.
struct Hyperplane {
  std::vector<Rational> normal;
  Point base;

  int side(const Point& y) const {
    Rational acc = 0;
    for (std::size_t j = 0; j < normal.size(); ++j) acc += normal[j] * (y[j] - base[j]);
    return sgn(acc) * sgn(normal.back());
  }
};

/// Normal of span(dirs) for d-1 direction vectors in R^d (cofactors), or
/// an empty vector when they are dependent.
inline std::vector<Rational> normal_of(const std::vector<std::vector<Rational>>& dirs, std::size_t d) {
  std::vector<Rational> n(d);
  if (d == 2) {
    n[0] = -dirs[0][1];
    n[1] = dirs[0][0];
  } else if (d == 3) {
    const auto& u = dirs[0];
    const auto& v = dirs[1];
    n[0] = u[1] * v[2] - u[2] * v[1];
    n[1] = u[2] * v[0] - u[0] * v[2];
    n[2] = u[0] * v[1] - u[1] * v[0];
  } else {
    for (std::size_t j = 0; j < d; ++j) {
      geom::Matrix m;
      for (const auto& row : dirs) m.push_back(row);
      std::vector<Rational> e(d, Rational(0));
      e[j] = 1;
      m.push_back(std::move(e));
      n[j] = geom::determinant(std::move(m));
    }
  }
  for (const auto& c : n) {
    if (sgn(c) != 0) return n;
  }
  return {};
}

/// Hyperplane through `pts` and the given directions. Returns false for a
/// degenerate span; throws for a vertical hyperplane.
inline bool make_hyperplane(std::span<const Point> pts, const std::vector<std::vector<Rational>>& extra,
                            Hyperplane& out) {
  const std::size_t d = pts[0].dim();
  std::vector<std::vector<Rational>> dirs;
  for (std::size_t i = 1; i < pts.size(); ++i) dirs.push_back(geom::difference(pts[i], pts[0]));
  dirs.insert(dirs.end(), extra.begin(), extra.end());
  auto n = normal_of(dirs, d);
  if (n.empty()) return false;
  if (sgn(n.back()) == 0) {
    throw PreconditionError("a spanned hyperplane is vertical, so 'below' is undefined");
  }
  out.normal = std::move(n);
  out.base = pts[0];
  return true;
}

/// Hyperplanes spanned by d affinely independent points of A.
inline std::vector<Hyperplane> spanned_hyperplanes(std::span<const Point> a) {
  const std::size_t d = a[0].dim();
  std::vector<Hyperplane> out;
  std::vector<Point> pick;
  for_each_combination(a.size(), d, [&](std::span<const std::size_t> idx) {
    pick.clear();
    for (auto i : idx) pick.push_back(a[i]);
    Hyperplane h;
    if (make_hyperplane(pick, {}, h)) out.push_back(std::move(h));
    return true;
  });
  return out;
}

/// Every point of `pts` on the `side` (+1 above, -1 below) of every plane.
inline bool all_on_side(std::span<const Point> pts, const std::vector<Hyperplane>& planes, int side) {
  for (const auto& h : planes) {
    for (const auto& y : pts) {
      if (h.side(y) != side) return false;
    }
  }
  return true;
}

/// Candidate hyperplane families for a side X. With |X| >= d that is all
/// spanned hyperplanes. A smaller X may be completed to d points; adding
/// points of X + t·e_j for tiny t yields a single hyperplane through X
/// containing those axis directions, and keeps strict inequalities.
inline std::vector<std::vector<Hyperplane>> families(std::span<const Point> x) {
  const std::size_t d = x[0].dim();
  if (x.size() >= d) return {spanned_hyperplanes(x)};
  std::vector<std::vector<Hyperplane>> out;
  const std::size_t need = d - x.size();
  for_each_combination(d - 1, need, [&](std::span<const std::size_t> axes) {
    std::vector<std::vector<Rational>> extra;
    for (auto j : axes) {
      std::vector<Rational> e(d, Rational(0));
      e[j] = 1;
      extra.push_back(std::move(e));
    }
    Hyperplane h;
    if (make_hyperplane(x, extra, h)) out.push_back({std::move(h)});
    return true;
  });
  return out;
}

/// Deep-below for sides of any size; an empty side holds vacuously.
inline bool deep_below_extended(std::span<const Point> b, std::span<const Point> a) {
  if (a.empty() || b.empty()) return true;
  bool lower_ok = false;
  for (const auto& fam : families(a)) {
    if (all_on_side(b, fam, -1)) {
      lower_ok = true;
      break;
    }
  }
  if (!lower_ok) return false;
  for (const auto& fam : families(b)) {
    if (all_on_side(a, fam, +1)) return true;
  }
  return false;
}

inline std::vector<Point> projected(std::span<const Point> pts) {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(p.projected());
  return out;
}

/// Class i mod m of points already sorted by first coordinate.
inline std::vector<Point> residue_class(std::span<const Point> pts, std::size_t i, std::size_t m) {
  std::vector<Point> out;
  for (std::size_t j = i; j < pts.size(); j += m) out.push_back(pts[j]);
  return out;
}

inline std::string describe_set(std::size_t mask, std::size_t p) {
  std::string s = "{";
  bool first = true;
  for (std::size_t c = 0; c < p; ++c) {
    if (mask >> c & 1U) {
      s += (first ? "" : ",") + std::to_string(c);
      first = false;
    }
  }
  return s + "}";
}

class Verifier {
 public:
  std::vector<std::string> witnesses;

  /// Clause (iii) at this node; returns false with a witness I.
  bool partitions(std::span<const Point> pts, const std::string& path) {
    const std::size_t d = pts[0].dim();
    const std::size_t p = horton_prime(d);
    std::vector<std::vector<Point>> classes;
    for (std::size_t c = 0; c < p; ++c) classes.push_back(residue_class(pts, c, p));
    const std::size_t full = (std::size_t{1} << p) - 1;
    for (std::size_t set = 1; set <= full; ++set) {
      if (std::popcount(set) < 2) continue;
      bool found = false;
      // Nonempty proper J ⊂ I.
      for (std::size_t j = (set - 1) & set; j != 0 && !found; j = (j - 1) & set) {
        std::vector<Point> lo, hi;
        for (std::size_t c = 0; c < p; ++c) {
          if (!(set >> c & 1U)) continue;
          auto& dst = (j >> c & 1U) ? lo : hi;
          dst.insert(dst.end(), classes[c].begin(), classes[c].end());
        }
        found = deep_below_extended(lo, hi);
      }
      if (!found) {
        note(path + ": I=" + describe_set(set, p) + " has no deep-below partition");
        return false;
      }
    }
    return true;
  }

  /// Full definition for points sorted by first coordinate.
  bool horton(std::span<const Point> pts, const std::string& path) {
    if (pts.size() <= 1) return true;
    const std::size_t d = pts[0].dim();
    if (d == 1) return true;
    return projection(pts, path) && classes(pts, path) && partitions(pts, path);
  }

  bool projection(std::span<const Point> pts, const std::string& path) {
    const std::size_t d = pts[0].dim();
    if (d <= 2 || pts.size() <= 1) return true;
    const auto proj = projected(pts);
    return horton(proj, path + "/pi");
  }

  bool classes(std::span<const Point> pts, const std::string& path) {
    if (pts.size() <= 1) return true;
    const std::size_t p = horton_prime(pts[0].dim());
    for (std::size_t c = 0; c < p; ++c) {
      const auto cls = residue_class(pts, c, p);
      if (!horton(cls, path + "/" + std::to_string(c) + "mod" + std::to_string(p))) return false;
    }
    return true;
  }

 private:
  void note(std::string w) {
    if (witnesses.size() < 8) witnesses.push_back(std::move(w));
  }
};

}  // namespace detail

/// B strictly below every hyperplane spanned by d affinely independent
/// points of A, and A strictly above every hyperplane spanned by d points
/// of B. Both sides need at least d points.
inline bool is_deep_below(std::span<const Point> b, std::span<const Point> a) {
  if (a.empty() || b.empty()) throw PreconditionError("is_deep_below: empty side");
  const std::size_t d = a[0].dim();
  geom::require_same_dim(a, d, "is_deep_below");
  geom::require_same_dim(b, d, "is_deep_below");
  if (a.size() < d || b.size() < d) {
    throw PreconditionError("is_deep_below needs at least d points on each side");
  }
  return detail::all_on_side(b, detail::spanned_hyperplanes(a), -1) &&
         detail::all_on_side(a, detail::spanned_hyperplanes(b), +1);
}

/// Exact certification of the d-Horton definition.
inline HortonReport verify_horton(const PointSet& s, std::size_t cap = 256) {
  if (s.size() > cap) {
    throw CapExceeded("verify-horton is capped at n=" + std::to_string(cap) + " (got n=" +
                      std::to_string(s.size()) + "); raise it with --cap");
  }
  const std::size_t d = s.dim();
  if (d > kMaxDim) throw PreconditionError("verify-horton supports d <= " + std::to_string(kMaxDim));
  HortonReport rep;

  rep.strongly_general = is_strongly_general_position(s);
  std::vector<Point> pts(s.points().begin(), s.points().end());
  for (std::size_t dd = d; rep.strongly_general && dd > 2; --dd) {
    pts = detail::projected(pts);
    rep.strongly_general = is_strongly_general_position(PointSet(dd - 1, pts));
  }
  if (!rep.strongly_general) {
    rep.witnesses.push_back("not in strongly general position (or some projection is not)");
    return rep;
  }
  if (d == 1 || s.size() <= 1) {
    rep.projection_ok = rep.classes_ok = rep.partitions_ok = true;
    return rep;
  }

  pts.assign(s.points().begin(), s.points().end());
  std::sort(pts.begin(), pts.end(), [](const Point& x, const Point& y) { return x[0] < y[0]; });
  detail::Verifier v;
  rep.projection_ok = v.projection(pts, "H");
  rep.classes_ok = v.classes(pts, "H");
  rep.partitions_ok = v.partitions(pts, "H");
  rep.witnesses = std::move(v.witnesses);
  return rep;
}

namespace detail {

/// Last coordinate of point i: class digit c at level l adds
/// s^{(L-1-l)p}·(s^c - 1), so each level dwarfs the ones below it and
/// within a level a larger digit sits higher by a factor of s. The digit
/// sum alone is additive in the index (0,1,6,7 would be coplanar in R^3),
/// so a term i^2 below every scale breaks those affine relations.
inline std::vector<BigInt> last_coordinates(std::size_t n, std::size_t p, const BigInt& s) {
  std::size_t levels = 1;
  for (std::size_t span = p; span < n; span *= p) ++levels;
  std::vector<BigInt> digit_power(p);
  for (std::size_t c = 0; c < p; ++c) digit_power[c] = power(s, c) - 1;
  std::vector<BigInt> level_power(levels);
  for (std::size_t l = 0; l < levels; ++l) level_power[l] = power(s, (levels - 1 - l) * p);
  std::vector<BigInt> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rest = i;
    BigInt acc = BigInt(static_cast<unsigned long>(i)) * static_cast<unsigned long>(i);
    for (std::size_t l = 0; l < levels; ++l) {
      acc += level_power[l] * digit_power[rest % p];
      rest /= p;
    }
    z[i] = acc;
  }
  return z;
}

}  // namespace detail

/// A d-Horton set on n points. The first coordinate is the index; the
/// projection is the (d-1)-dimensional set built the same way; the last
/// coordinate follows the class digits of the index in base p_d. The
/// scale starts at params.scale_seed and is squared until the verifier
/// certifies the result.
inline PointSet horton_d(std::size_t d, std::size_t n, const HortonParams& params = {}) {
  if (d < 1 || d > kMaxDim) throw PreconditionError("horton: need 1 <= d <= " + std::to_string(kMaxDim));
  if (params.scale_seed < 2) throw PreconditionError("horton: scale seed must be at least 2");
  if (d == 1) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(Point{Rational(static_cast<long>(i))});
    return PointSet(1, std::move(pts), "horton-1");
  }
  const PointSet base = horton_d(d - 1, n, params);
  const std::size_t p = horton_prime(d);
  BigInt s = params.scale_seed;
  for (std::size_t round = 0; round < params.max_rounds; ++round, s = s * s) {
    const auto z = detail::last_coordinates(n, p, s);
    std::vector<Point> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rational> c(base[i].coords().begin(), base[i].coords().end());
      c.emplace_back(z[i]);
      pts.emplace_back(std::move(c));
    }
    PointSet candidate(d, std::move(pts), "horton-" + std::to_string(d));
    if (verify_horton(candidate, std::max(params.verify_cap, n)).ok()) return candidate;
  }
  throw Error("horton: no certified scale within " + std::to_string(params.max_rounds) + " rounds");
}

inline PointSet horton_planar(std::size_t n) { return horton_d(2, n); }

}  // namespace islands::horton
