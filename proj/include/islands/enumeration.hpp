#pragma once

// Detection and counting of convex-position subsets, k-islands and
// k-holes.
//
// Two layers:
//  * Reference predicates (is_convex_position, is_island, is_hole and
//    count_k_subsets_bruteforce) built directly on the rational hull test.
//  * Pruned depth-first engines over the SimplexContents table, used for
//    all counting on sets in general position. Subsets are grown in
//    increasing index order, which gives lexicographic enumeration.

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "islands/combinatorics.hpp"
#include "islands/errors.hpp"
#include "islands/exact_geom.hpp"
#include "islands/parallel.hpp"
#include "islands/pointset.hpp"
#include "islands/simplex_index.hpp"

namespace islands::enumerate {

enum class SubsetKind { hole, island, convex };

inline const char* to_string(SubsetKind k) {
  switch (k) {
    case SubsetKind::hole: return "hole";
    case SubsetKind::island: return "island";
    case SubsetKind::convex: return "convex";
  }
  return "?";
}

inline SubsetKind parse_kind(const std::string& s) {
  if (s == "hole") return SubsetKind::hole;
  if (s == "island") return SubsetKind::island;
  if (s == "convex") return SubsetKind::convex;
  throw PreconditionError("unknown subset kind '" + s + "' (expected hole, island or convex)");
}

/// Strictly increasing list of indices into a point set.
class SubsetSelector {
 public:
  SubsetSelector() = default;
  explicit SubsetSelector(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    for (std::size_t i = 1; i < indices_.size(); ++i) {
      if (indices_[i - 1] >= indices_[i]) {
        throw PreconditionError("subset indices must be strictly increasing");
      }
    }
  }

  /// Sorts and validates against a set of size n.
  static SubsetSelector of(std::vector<std::size_t> indices, std::size_t n) {
    std::sort(indices.begin(), indices.end());
    SubsetSelector s(std::move(indices));
    if (!s.indices_.empty() && s.indices_.back() >= n) {
      throw PreconditionError("subset index " + std::to_string(s.indices_.back()) + " out of range");
    }
    return s;
  }

  std::span<const std::size_t> indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(std::size_t i) const { return std::binary_search(indices_.begin(), indices_.end(), i); }

  friend bool operator==(const SubsetSelector&, const SubsetSelector&) = default;

 private:
  std::vector<std::size_t> indices_;
};

struct CountResult {
  BigInt value = 0;
  std::size_t n = 0;
  std::size_t k = 0;  // 0 for counts over all sizes
  SubsetKind kind = SubsetKind::island;
};

struct EnumerationOptions {
  std::size_t threads = 1;
  std::size_t all_islands_cap = 20;
  std::size_t largest_hole_cap = 128;
};

// ---------------------------------------------------------------------------
// Reference predicates
// ---------------------------------------------------------------------------

/// No point of P lies in the convex hull of the others.
inline bool is_convex_position(std::span<const Point> p) {
  if (p.size() <= 1) return true;
  std::vector<Point> rest;
  for (std::size_t i = 0; i < p.size(); ++i) {
    rest.clear();
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j != i) rest.push_back(p[j]);
    }
    if (geom::point_in_hull(p[i], rest) != geom::HullLocation::outside) return false;
  }
  return true;
}

/// conv(I) ∩ S = I.
inline bool is_island(const PointSet& s, const SubsetSelector& subset) {
  if (subset.empty()) throw PreconditionError("is_island: empty subset");
  const auto members = s.gather(subset.indices());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (subset.contains(i)) continue;
    if (geom::point_in_hull(s[i], members) != geom::HullLocation::outside) return false;
  }
  return true;
}

namespace detail {

inline bool is_hole_unchecked(const PointSet& s, const SubsetSelector& subset) {
  return is_convex_position(s.gather(subset.indices())) && is_island(s, subset);
}

}  // namespace detail

/// H in convex position with no point of S in the interior of conv(H).
/// By default S must be in general position, where this is the same as
/// "convex position and an island". With raw_definition the literal
/// interior test is used instead and any S is accepted.
inline bool is_hole(const PointSet& s, const SubsetSelector& subset, bool raw_definition = false) {
  if (subset.empty()) throw PreconditionError("is_hole: empty subset");
  if (raw_definition) {
    const auto members = s.gather(subset.indices());
    if (!is_convex_position(members)) return false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (subset.contains(i)) continue;
      if (geom::point_in_hull(s[i], members) == geom::HullLocation::interior) return false;
    }
    return true;
  }
  if (!is_general_position(s)) {
    throw PreconditionError(
        "is_hole: point set is not in general position; pass raw_definition to use the literal "
        "interior test");
  }
  return detail::is_hole_unchecked(s, subset);
}

/// Counts k-subsets by testing every one of the C(n,k) subsets with the
/// reference predicates. Kind 'hole' requires general position.
inline CountResult count_k_subsets_bruteforce(const PointSet& s, std::size_t k, SubsetKind kind) {
  if (k == 0) throw PreconditionError("k must be at least 1");
  if (kind == SubsetKind::hole && !is_general_position(s)) {
    throw PreconditionError("counting holes requires general position");
  }
  CountResult out{0, s.size(), k, kind};
  std::uint64_t count = 0;
  for_each_combination(s.size(), k, [&](std::span<const std::size_t> idx) {
    SubsetSelector sel(std::vector<std::size_t>(idx.begin(), idx.end()));
    bool ok = false;
    switch (kind) {
      case SubsetKind::convex: ok = is_convex_position(s.gather(idx)); break;
      case SubsetKind::island: ok = is_island(s, sel); break;
      case SubsetKind::hole: ok = detail::is_hole_unchecked(s, sel); break;
    }
    count += ok ? 1 : 0;
    return true;
  });
  out.value = BigInt(static_cast<unsigned long>(count));
  return out;
}

// ---------------------------------------------------------------------------
// Pruned engines
// ---------------------------------------------------------------------------

namespace detail {

/// Depth-first growth of index-increasing subsets. Per depth it keeps the
/// subset bitmask and one auxiliary mask:
///   hole   - none; every (d+1)-subset must be an empty simplex.
///   island - U, the union of simplex contents; an island needs U ⊆ I, and
///            bits of U below the last index must already be in I.
///   convex - C, the union of simplex contents; a new point must avoid C
///            and new simplices must not contain current points.
class Engine {
 public:
  Engine(const SimplexContents& sc, SubsetKind kind, std::size_t k)
      : sc_(sc), n_(sc.size()), d_(sc.dim()), w_(sc.words()), kind_(kind), k_(k) {
    const std::size_t depth = (k_ == 0 ? n_ : k_) + 1;
    cur_.reserve(depth);
    set_.assign(depth * w_, 0);
    aux_.assign(depth * w_, 0);
  }

  /// Visits accepted subsets whose smallest index is v0. `k == 0` means
  /// every size. The visitor returns false to stop.
  template <class Visitor>
  bool run_from(std::size_t v0, Visitor&& visit) {
    cur_.clear();
    std::fill(set_.begin(), set_.end(), 0);
    std::fill(aux_.begin(), aux_.end(), 0);
    if (k_ != 0 && n_ - v0 < k_) return true;
    cur_.push_back(v0);
    set_[w_ + v0 / 64] |= bit(v0);
    return descend(1, visit);
  }

 private:
  static std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << (i % 64); }

  std::uint64_t* set_at(std::size_t depth) { return &set_[depth * w_]; }
  std::uint64_t* aux_at(std::size_t depth) { return &aux_[depth * w_]; }

  bool accepted(std::size_t depth) {
    if (kind_ != SubsetKind::island) return true;
    const std::uint64_t* u = aux_at(depth);
    const std::uint64_t* s = set_at(depth);
    for (std::size_t w = 0; w < w_; ++w) {
      if (u[w] & ~s[w]) return false;
    }
    return true;
  }

  template <class Visitor>
  bool descend(std::size_t depth, Visitor& visit) {
    const bool at_target = k_ != 0 && depth == k_;
    if ((k_ == 0 || at_target) && accepted(depth)) {
      if (!visit(std::span<const std::size_t>(cur_))) return false;
    }
    if (at_target) return true;
    const std::size_t last = cur_.back();
    for (std::size_t v = last + 1; v < n_; ++v) {
      if (k_ != 0 && n_ - v < k_ - depth) break;
      if (!extend(depth, v)) continue;
      cur_.push_back(v);
      const bool go_on = descend(depth + 1, visit);
      cur_.pop_back();
      if (!go_on) return false;
    }
    return true;
  }

  /// Calls fn(rank) for every (d+1)-tuple made of d current points and v.
  template <class Fn>
  bool for_each_new_simplex(std::size_t v, Fn&& fn) const {
    const std::size_t m = cur_.size();
    if (m < d_) return true;
    const auto& binom = sc_.orientations().binomials();
    const std::uint64_t top = binom(v, d_ + 1);
    std::array<std::size_t, 16> c{};
    for (std::size_t i = 0; i < d_; ++i) c[i] = i;
    while (true) {
      std::uint64_t r = top;
      for (std::size_t i = 0; i < d_; ++i) r += binom(cur_[c[i]], i + 1);
      if (!fn(r)) return false;
      std::size_t i = d_;
      while (i > 0 && c[i - 1] == m - d_ + (i - 1)) --i;
      if (i == 0) return true;
      ++c[i - 1];
      for (std::size_t j = i; j < d_; ++j) c[j] = c[j - 1] + 1;
    }
  }

  /// Tries to add v at position `depth`, filling the masks for depth+1.
  bool extend(std::size_t depth, std::size_t v) {
    std::uint64_t* s_next = set_at(depth + 1);
    std::uint64_t* a_next = aux_at(depth + 1);
    const std::uint64_t* s_cur = set_at(depth);
    const std::uint64_t* a_cur = aux_at(depth);
    switch (kind_) {
      case SubsetKind::hole: {
        if (!for_each_new_simplex(v, [&](std::uint64_t r) { return sc_.is_empty(r); })) return false;
        std::copy(s_cur, s_cur + w_, s_next);
        s_next[v / 64] |= bit(v);
        return true;
      }
      case SubsetKind::convex: {
        if (a_cur[v / 64] & bit(v)) return false;
        std::copy(a_cur, a_cur + w_, a_next);
        const bool ok = for_each_new_simplex(v, [&](std::uint64_t r) {
          if (sc_.is_empty(r)) return true;
          const std::uint64_t* m = sc_.mask(r);
          for (std::size_t w = 0; w < w_; ++w) {
            if (m[w] & s_cur[w]) return false;
            a_next[w] |= m[w];
          }
          return true;
        });
        if (!ok) return false;
        std::copy(s_cur, s_cur + w_, s_next);
        s_next[v / 64] |= bit(v);
        return true;
      }
      case SubsetKind::island: {
        std::copy(a_cur, a_cur + w_, a_next);
        for_each_new_simplex(v, [&](std::uint64_t r) {
          if (sc_.is_empty(r)) return true;
          const std::uint64_t* m = sc_.mask(r);
          for (std::size_t w = 0; w < w_; ++w) a_next[w] |= m[w];
          return true;
        });
        std::copy(s_cur, s_cur + w_, s_next);
        s_next[v / 64] |= bit(v);
        // Required points at or below v must already be members.
        std::size_t missing = 0;
        for (std::size_t w = 0; w < w_; ++w) {
          std::uint64_t outside = a_next[w] & ~s_next[w];
          const std::size_t lo = w * 64;
          if (lo <= v) {
            const std::size_t upto = v - lo;
            const std::uint64_t low_mask = upto >= 63 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (upto + 1)) - 1);
            if (outside & low_mask) return false;
          }
          missing += static_cast<std::size_t>(std::popcount(outside));
        }
        if (k_ != 0 && missing > k_ - (depth + 1)) return false;
        return true;
      }
    }
    return false;
  }

  const SimplexContents& sc_;
  std::size_t n_, d_, w_;
  SubsetKind kind_;
  std::size_t k_;
  std::vector<std::size_t> cur_;
  std::vector<std::uint64_t> set_;
  std::vector<std::uint64_t> aux_;
};

inline std::uint64_t count_with_engine(const SimplexContents& sc, SubsetKind kind, std::size_t k,
                                       std::size_t threads) {
  const std::size_t n = sc.size();
  std::vector<std::uint64_t> partial(n, 0);
  parallel_for(n, threads, [&](std::size_t v0) {
    Engine engine(sc, kind, k);
    std::uint64_t c = 0;
    engine.run_from(v0, [&](std::span<const std::size_t>) {
      ++c;
      return true;
    });
    partial[v0] = c;
  });
  std::uint64_t total = 0;
  for (auto c : partial) total += c;
  return total;
}

inline BigInt to_big(std::uint64_t v) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return out;
}

}  // namespace detail

/// Exact number of k-subsets of the given kind. Sets in general position
/// go through the pruned engine; degenerate sets fall back to the
/// reference predicates (holes then require general position).
inline CountResult count_k_subsets(const PointSet& s, std::size_t k, SubsetKind kind,
                                   const EnumerationOptions& options = {}) {
  if (k == 0) throw PreconditionError("k must be at least 1");
  CountResult out{0, s.size(), k, kind};
  if (k > s.size()) return out;
  if (!is_general_position(s)) {
    if (kind == SubsetKind::hole) {
      throw PreconditionError("counting holes requires a point set in general position");
    }
    return count_k_subsets_bruteforce(s, k, kind);
  }
  SimplexContents sc(s);
  out.value = detail::to_big(detail::count_with_engine(sc, kind, k, options.threads));
  return out;
}

/// Lexicographically first k-subset of the given kind, if any.
inline std::optional<SubsetSelector> first_k_subset(const PointSet& s, std::size_t k, SubsetKind kind) {
  if (k == 0) throw PreconditionError("k must be at least 1");
  if (k > s.size()) return std::nullopt;
  if (!is_general_position(s)) throw PreconditionError("witness search requires general position");
  SimplexContents sc(s);
  detail::Engine engine(sc, kind, k);
  std::optional<SubsetSelector> found;
  for (std::size_t v0 = 0; v0 < s.size() && !found; ++v0) {
    engine.run_from(v0, [&](std::span<const std::size_t> idx) {
      found.emplace(std::vector<std::size_t>(idx.begin(), idx.end()));
      return false;
    });
  }
  return found;
}

enum class IslandMethod { direct, convex_bijection };

inline const char* to_string(IslandMethod m) {
  return m == IslandMethod::direct ? "direct" : "convex_bijection";
}

/// Number of nonempty islands. `direct` counts subsets I with
/// conv(I) ∩ S = I; `convex_bijection` counts nonempty subsets in convex
/// position, which map one-to-one onto islands via G -> conv(G) ∩ S.
inline CountResult count_all_islands(const PointSet& s, IslandMethod method,
                                     const EnumerationOptions& options = {}) {
  if (s.size() > options.all_islands_cap) {
    throw CapExceeded("all-islands counting is capped at n=" + std::to_string(options.all_islands_cap) +
                      " (got n=" + std::to_string(s.size()) + "); raise it with --cap");
  }
  if (!is_general_position(s)) {
    throw PreconditionError("counting all islands requires a point set in general position");
  }
  const SubsetKind kind = method == IslandMethod::direct ? SubsetKind::island : SubsetKind::convex;
  CountResult out{0, s.size(), 0, kind};
  if (s.empty()) return out;
  SimplexContents sc(s);
  out.value = detail::to_big(detail::count_with_engine(sc, kind, 0, options.threads));
  return out;
}

/// Largest k such that S has a k-hole. Holes are closed under taking
/// subsets, so the search only grows subsets that are holes.
inline std::size_t largest_hole_size(const PointSet& s, const EnumerationOptions& options = {}) {
  if (s.size() > options.largest_hole_cap) {
    throw CapExceeded("largest-hole search is capped at n=" + std::to_string(options.largest_hole_cap) +
                      " (got n=" + std::to_string(s.size()) + "); raise it with --cap");
  }
  if (!is_general_position(s)) {
    throw PreconditionError("largest hole requires a point set in general position");
  }
  if (s.empty()) return 0;
  SimplexContents sc(s);
  std::vector<std::size_t> best(s.size(), 0);
  parallel_for(s.size(), options.threads, [&](std::size_t v0) {
    detail::Engine engine(sc, SubsetKind::hole, 0);
    engine.run_from(v0, [&](std::span<const std::size_t> idx) {
      best[v0] = std::max(best[v0], idx.size());
      return true;
    });
  });
  return *std::max_element(best.begin(), best.end());
}

}  // namespace islands::enumerate
