#pragma once

// Canonical ordering of a k-point set Q in general position.
//
// Conditions, with q1..qk the ordering and Δ = conv(q1..q_{d+1}):
//   L1  Δ has the largest volume among (d+1)-subsets of Q. Ties go to the
//       vertex set whose lexicographically sorted point list is smallest.
//   L2  q1 <lex q2, and for i = 1..d-1 the point q_{i+1} is farthest from
//       aff(q1..qi) among q_{i+1}..q_d.
//   L3  for i = 1..d-1, q_{i+1} is at least as far from aff(q1..qi) as
//       q_{d+1}; q1q2 is the longest edge of Δ.
//   L4  the a points of Q inside Δ come next, lexicographically sorted.
//   L5  the remaining points follow, each closest to the hull of the
//       points before it among those not yet placed.
// Every "farthest", "closest" or "largest" tie is broken towards the
// lexicographically smaller point. Edge ties compare (smaller endpoint,
// larger endpoint).

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "islands/combinatorics.hpp"
#include "islands/errors.hpp"
#include "islands/exact_geom.hpp"
#include "islands/pointset.hpp"

namespace islands::canonical {

inline constexpr std::size_t kConditionCount = 5;
inline constexpr std::array<const char*, kConditionCount> kConditionNames = {"L1", "L2", "L3", "L4", "L5"};

struct ConditionReport {
  std::array<bool, kConditionCount> pass{true, true, true, true, true};
  std::optional<std::size_t> first_failure;  // index into kConditionNames
  std::string witness;                       // for the first failure

  bool all() const { return !first_failure.has_value(); }
};

struct OrderingReport {
  std::vector<std::size_t> permutation;  // indices into Q, q1 first
  std::size_t a = 0;
  std::array<bool, kConditionCount> condition_flags{};
  Rational delta_volume;
};

namespace detail {

inline std::string join(std::span<const std::size_t> idx) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
  os << ']';
  return os.str();
}

inline void validate_permutation(std::size_t k, std::span<const std::size_t> perm) {
  if (perm.size() != k) {
    throw PreconditionError("permutation has " + std::to_string(perm.size()) + " entries, expected " +
                            std::to_string(k));
  }
  std::vector<bool> seen(k, false);
  for (auto i : perm) {
    if (i >= k || seen[i]) throw PreconditionError("not a permutation of 0.." + std::to_string(k - 1));
    seen[i] = true;
  }
}

}  // namespace detail

/// Evaluates L1..L5 for orderings of one fixed Q. Simplex volumes are
/// computed once; hull distances are memoized per (prefix set, point), so
/// checking all k! orderings stays cheap.
class CanonicalChecker {
 public:
  explicit CanonicalChecker(const PointSet& q) : q_(q), d_(q.dim()), k_(q.size()) {
    if (k_ > 62) throw PreconditionError("canonical ordering supports at most 62 points");
    if (k_ < d_ + 1) {
      throw PreconditionError("canonical ordering needs at least d+1 = " + std::to_string(d_ + 1) +
                              " points, got " + std::to_string(k_));
    }
    for_each_combination(k_, d_ + 1, [&](std::span<const std::size_t> idx) {
      std::vector<std::size_t> t(idx.begin(), idx.end());
      Rational v = geom::simplex_volume(q_.gather(t));
      if (!best_volume_ || v > *best_volume_ ||
          (v == *best_volume_ && vertex_list_less(t, best_tuple_))) {
        best_volume_ = v;
        best_tuple_ = t;
      }
      volumes_.emplace(mask_of(t), std::move(v));
      return true;
    });
  }

  const PointSet& points() const { return q_; }
  const Rational& max_volume() const { return *best_volume_; }
  std::span<const std::size_t> max_simplex() const { return best_tuple_; }

  /// Points of Q other than the vertices that lie in the closed simplex
  /// on the given vertex indices, sorted lexicographically.
  std::vector<std::size_t> inside(std::span<const std::size_t> vertices) const {
    std::vector<std::size_t> out;
    const auto simplex = q_.gather(vertices);
    const int sign = geom::orientation(simplex);
    if (sign == 0) return out;
    for (std::size_t i = 0; i < k_; ++i) {
      if (std::find(vertices.begin(), vertices.end(), i) != vertices.end()) continue;
      if (geom::in_closed_simplex(q_[i], simplex, sign)) out.push_back(i);
    }
    std::sort(out.begin(), out.end(), [&](std::size_t x, std::size_t y) { return lex_less(q_[x], q_[y]); });
    return out;
  }

  /// Builds the ordering directly from the definition.
  OrderingReport canonical() const {
    const auto& d_set = best_tuple_;
    // Longest edge of Δ.
    std::size_t e0 = d_set[0], e1 = d_set[1];
    Rational best_len = -1;
    for (std::size_t x = 0; x < d_set.size(); ++x) {
      for (std::size_t y = x + 1; y < d_set.size(); ++y) {
        const std::size_t u = d_set[x], v = d_set[y];
        const Rational len = geom::squared_distance(q_[u], q_[v]);
        if (len > best_len || (len == best_len && edge_less(u, v, e0, e1))) {
          best_len = len;
          e0 = u;
          e1 = v;
        }
      }
    }
    if (lex_less(q_[e1], q_[e0])) std::swap(e0, e1);
    std::vector<std::size_t> perm{e0, e1};
    std::vector<std::size_t> rest;
    for (auto v : d_set) {
      if (v != e0 && v != e1) rest.push_back(v);
    }
    while (!rest.empty()) {
      const auto base = q_.gather(perm);
      std::size_t pick = 0;
      Rational pick_dist = -1;
      for (std::size_t j = 0; j < rest.size(); ++j) {
        const Rational dist = geom::squared_distance_to_affine_hull(q_[rest[j]], base);
        if (dist > pick_dist || (dist == pick_dist && lex_less(q_[rest[j]], q_[rest[pick]]))) {
          pick = j;
          pick_dist = dist;
        }
      }
      perm.push_back(rest[pick]);
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
    }

    const auto in = inside(d_set);
    perm.insert(perm.end(), in.begin(), in.end());

    std::vector<std::size_t> outside;
    for (std::size_t i = 0; i < k_; ++i) {
      if (std::find(perm.begin(), perm.end(), i) == perm.end()) outside.push_back(i);
    }
    while (!outside.empty()) {
      const std::uint64_t prefix = mask_of(perm);
      std::size_t pick = 0;
      for (std::size_t j = 1; j < outside.size(); ++j) {
        if (closer(prefix, outside[j], outside[pick])) pick = j;
      }
      perm.push_back(outside[pick]);
      outside.erase(outside.begin() + static_cast<std::ptrdiff_t>(pick));
    }

    OrderingReport report;
    report.permutation = std::move(perm);
    report.a = in.size();
    report.delta_volume = *best_volume_;
    report.condition_flags = check(report.permutation).pass;
    return report;
  }

  /// Evaluates each condition. With stop_at_first the remaining
  /// conditions are left untested (reported as passing) after the first
  /// failure.
  ConditionReport check(std::span<const std::size_t> perm, bool stop_at_first = false) const {
    detail::validate_permutation(k_, perm);
    ConditionReport rep;
    auto fail = [&](std::size_t cond, std::string witness) {
      rep.pass[cond] = false;
      if (!rep.first_failure) {
        rep.first_failure = cond;
        rep.witness = std::move(witness);
      }
    };
    const std::vector<std::size_t> delta(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(d_ + 1));

    // L1
    {
      std::vector<std::size_t> sorted = delta;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != best_tuple_) {
        const Rational& v = volumes_.at(mask_of(sorted));
        std::ostringstream os;
        os << "simplex " << detail::join(best_tuple_) << " has volume " << to_string(*best_volume_)
           << (v == *best_volume_ ? " (tie, lexicographically smaller)" : "") << " vs "
           << to_string(v);
        fail(0, os.str());
        if (stop_at_first) return rep;
      }
    }

    const bool delta_ok = sgn(volumes_.at(mask_of(delta))) != 0;

    // L2
    {
      std::string why;
      if (!lex_less(q_[perm[0]], q_[perm[1]])) {
        why = "q1=" + std::to_string(perm[0]) + " is not lexicographically smaller than q2=" +
              std::to_string(perm[1]);
      }
      for (std::size_t i = 1; why.empty() && i + 1 <= d_; ++i) {
        // candidates q_{i+1}..q_d are perm[i..d-1]
        for (std::size_t j = i + 1; why.empty() && j < d_; ++j) {
          if (!delta_ok || !farther(delta, i, perm[i], perm[j])) {
            why = "i=" + std::to_string(i) + ": point " + std::to_string(perm[j]) + " beats q" +
                  std::to_string(i + 1) + "=" + std::to_string(perm[i]);
          }
        }
      }
      if (!why.empty()) {
        fail(1, why);
        if (stop_at_first) return rep;
      }
    }

    // L3
    {
      std::string why;
      for (std::size_t i = 1; why.empty() && i + 1 <= d_; ++i) {
        if (!delta_ok || !farther(delta, i, perm[i], perm[d_])) {
          why = "i=" + std::to_string(i) + ": q" + std::to_string(d_ + 1) + "=" + std::to_string(perm[d_]) +
                " is farther than q" + std::to_string(i + 1) + "=" + std::to_string(perm[i]);
        }
      }
      if (why.empty()) {
        const Rational top = geom::squared_distance(q_[perm[0]], q_[perm[1]]);
        for (std::size_t x = 0; why.empty() && x <= d_; ++x) {
          for (std::size_t y = x + 1; why.empty() && y <= d_; ++y) {
            if (x == 0 && y == 1) continue;
            const Rational len = geom::squared_distance(q_[perm[x]], q_[perm[y]]);
            if (len > top || (len == top && edge_less(perm[x], perm[y], perm[0], perm[1]))) {
              why = "edge " + std::to_string(perm[x]) + "-" + std::to_string(perm[y]) +
                    " is longer than q1q2";
            }
          }
        }
      }
      if (!why.empty()) {
        fail(2, why);
        if (stop_at_first) return rep;
      }
    }

    // L4
    const auto in = inside(delta);
    {
      std::string why;
      for (std::size_t j = 0; why.empty() && j < in.size(); ++j) {
        if (perm[d_ + 1 + j] != in[j]) {
          why = "position " + std::to_string(d_ + 2 + j) + " should hold inside point " +
                std::to_string(in[j]) + ", found " + std::to_string(perm[d_ + 1 + j]);
        }
      }
      if (!why.empty()) {
        fail(3, why);
        if (stop_at_first) return rep;
      }
    }

    // L5
    {
      std::string why;
      const std::size_t start = d_ + 1 + in.size();
      for (std::size_t p = start; why.empty() && p < k_; ++p) {
        if (std::find(in.begin(), in.end(), perm[p]) != in.end()) {
          why = "inside point " + std::to_string(perm[p]) + " at position " + std::to_string(p + 1);
          break;
        }
        const std::uint64_t prefix = mask_of(perm.subspan(0, p));
        for (std::size_t r = p + 1; r < k_; ++r) {
          if (std::find(in.begin(), in.end(), perm[r]) != in.end()) continue;
          if (closer(prefix, perm[r], perm[p])) {
            why = "position " + std::to_string(p + 1) + ": point " + std::to_string(perm[r]) +
                  " is closer than " + std::to_string(perm[p]);
            break;
          }
        }
      }
      if (!why.empty()) fail(4, why);
    }
    return rep;
  }

 private:
  static std::uint64_t mask_of(std::span<const std::size_t> idx) {
    std::uint64_t m = 0;
    for (auto i : idx) m |= std::uint64_t{1} << i;
    return m;
  }

  bool vertex_list_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) const {
    auto sorted_points = [&](const std::vector<std::size_t>& t) {
      std::vector<std::size_t> s = t;
      std::sort(s.begin(), s.end(), [&](std::size_t x, std::size_t y) { return lex_less(q_[x], q_[y]); });
      return s;
    };
    const auto sa = sorted_points(a), sb = sorted_points(b);
    for (std::size_t i = 0; i < sa.size(); ++i) {
      const int c = lex_compare(q_[sa[i]], q_[sb[i]]);
      if (c != 0) return c < 0;
    }
    return false;
  }

  /// Edge (u,v) precedes edge (x,y) by (smaller endpoint, larger endpoint).
  bool edge_less(std::size_t u, std::size_t v, std::size_t x, std::size_t y) const {
    if (lex_less(q_[v], q_[u])) std::swap(u, v);
    if (lex_less(q_[y], q_[x])) std::swap(x, y);
    const int c = lex_compare(q_[u], q_[x]);
    if (c != 0) return c < 0;
    return lex_less(q_[v], q_[y]);
  }

  /// u strictly beats v as the point farthest from aff(first i of delta).
  bool farther(const std::vector<std::size_t>& delta, std::size_t i, std::size_t u, std::size_t v) const {
    const auto base = q_.gather(std::span<const std::size_t>(delta.data(), i));
    const Rational du = geom::squared_distance_to_affine_hull(q_[u], base);
    const Rational dv = geom::squared_distance_to_affine_hull(q_[v], base);
    return du > dv || (du == dv && lex_less(q_[u], q_[v]));
  }

  const Rational& hull_distance(std::uint64_t prefix, std::size_t c) const {
    const auto key = std::make_pair(prefix, c);
    auto it = hull_cache_.find(key);
    if (it != hull_cache_.end()) return it->second;
    std::vector<Point> pts;
    for (std::size_t i = 0; i < k_; ++i) {
      if (prefix >> i & 1U) pts.push_back(q_[i]);
    }
    return hull_cache_.emplace(key, geom::squared_distance_to_convex_hull(q_[c], pts)).first->second;
  }

  /// u strictly beats v as the point closest to the hull of `prefix`.
  bool closer(std::uint64_t prefix, std::size_t u, std::size_t v) const {
    const Rational& du = hull_distance(prefix, u);
    const Rational& dv = hull_distance(prefix, v);
    return du < dv || (du == dv && lex_less(q_[u], q_[v]));
  }

  const PointSet& q_;
  std::size_t d_, k_;
  std::optional<Rational> best_volume_;
  std::vector<std::size_t> best_tuple_;
  std::map<std::uint64_t, Rational> volumes_;
  mutable std::map<std::pair<std::uint64_t, std::size_t>, Rational> hull_cache_;
};

/// The unique ordering satisfying L1..L5. Q must be in general position.
inline OrderingReport canonical_ordering(const PointSet& q) {
  if (q.size() <= q.dim()) {
    throw PreconditionError("canonical ordering needs k >= d+1 points");
  }
  if (!is_general_position(q)) throw PreconditionError("canonical ordering needs general position");
  return CanonicalChecker(q).canonical();
}

inline ConditionReport check_canonical_conditions(const PointSet& q, std::span<const std::size_t> perm) {
  return CanonicalChecker(q).check(perm);
}

namespace detail {

/// Every point x of Q satisfies λ_j(x) <= 1 for the barycentric
/// coordinates of Δ = conv(q1..q_{d+1}); this is membership in the
/// simplex bounded by the hyperplanes through each vertex parallel to the
/// opposite facet.
inline bool delta_star_contains_all_unchecked(const PointSet& q, std::span<const std::size_t> perm) {
  const std::size_t d = q.dim();
  std::vector<Point> simplex;
  for (std::size_t i = 0; i <= d; ++i) simplex.push_back(q[perm[i]]);
  const Rational det = geom::orientation_determinant(simplex);
  if (sgn(det) == 0) return false;
  for (std::size_t p = 0; p < q.size(); ++p) {
    for (std::size_t j = 0; j <= d; ++j) {
      std::vector<Point> probe = simplex;
      probe[j] = q[p];
      const Rational lambda = geom::orientation_determinant(probe) / det;
      if (lambda > 1) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Requires the ordering to satisfy L1.
inline bool delta_star_contains_all(const PointSet& q, std::span<const std::size_t> perm) {
  CanonicalChecker checker(q);
  if (!checker.check(perm).pass[0]) {
    throw PreconditionError("delta_star_contains_all: the ordering violates L1");
  }
  return detail::delta_star_contains_all_unchecked(q, perm);
}

struct BoxReport {
  bool clause_a = false;
  bool clause_b = true;
  bool ok() const { return clause_a && clause_b; }
};

/// Coordinate-free form of the box around q_{d+1}:
///  (a) q_{d+1} is no farther from aff(q1..qi) than q_{i+1} is, for
///      i = 1..d-1, and |q1q2| >= |q_{d+1}qi| for i = 1..d;
///  (b) with unit_volume_context, vol(Δ) <= 1.
inline BoxReport box_containment(const PointSet& q, std::span<const std::size_t> perm, bool unit_volume_context) {
  const std::size_t d = q.dim();
  if (perm.size() < d + 1) throw PreconditionError("box containment needs d+1 ordered points");
  BoxReport rep;
  std::vector<Point> base;
  rep.clause_a = true;
  for (std::size_t i = 1; i + 1 <= d && rep.clause_a; ++i) {
    base.assign({});
    for (std::size_t j = 0; j < i; ++j) base.push_back(q[perm[j]]);
    const Rational top = geom::squared_distance_to_affine_hull(q[perm[d]], base);
    rep.clause_a = top <= geom::squared_distance_to_affine_hull(q[perm[i]], base);
  }
  const Rational edge = geom::squared_distance(q[perm[0]], q[perm[1]]);
  for (std::size_t i = 0; i < d && rep.clause_a; ++i) {
    rep.clause_a = geom::squared_distance(q[perm[d]], q[perm[i]]) <= edge;
  }
  if (unit_volume_context) {
    std::vector<Point> simplex;
    for (std::size_t i = 0; i <= d; ++i) simplex.push_back(q[perm[i]]);
    rep.clause_b = geom::simplex_volume(simplex) <= 1;
  }
  return rep;
}

inline bool check_box_containment(const PointSet& q, std::span<const std::size_t> perm, bool unit_volume_context) {
  return box_containment(q, perm, unit_volume_context).ok();
}

}  // namespace islands::canonical
