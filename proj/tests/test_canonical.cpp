#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "support.hpp"

using namespace islands;
using namespace islands::canonical;
using testing_support::pt;
using testing_support::set2;

namespace {

using Perm = std::vector<std::size_t>;

std::vector<Point> in_order(const PointSet& q, const Perm& perm) {
  std::vector<Point> out;
  for (auto i : perm) out.push_back(q[i]);
  return out;
}

std::size_t passing_orderings(const PointSet& q, Perm* which) {
  Perm perm(q.size());
  std::iota(perm.begin(), perm.end(), 0);
  CanonicalChecker checker(q);
  std::size_t hits = 0;
  do {
    if (checker.check(perm, true).all()) {
      ++hits;
      if (which) *which = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return hits;
}

}  // namespace

TEST(Canonical, WorkedExample) {
  const auto q = set2({{0, 3}, {4, 0}, {0, 0}, {1, 1}});
  const auto rep = canonical_ordering(q);
  EXPECT_EQ(rep.permutation, (Perm{0, 1, 2, 3}));
  EXPECT_EQ(rep.a, 1u);
  EXPECT_EQ(rep.delta_volume, Rational(6));
  for (bool f : rep.condition_flags) EXPECT_TRUE(f);
}

TEST(Canonical, SimplexOnly) {
  const auto q = set2({{0, 0}, {5, 1}, {1, 3}});
  const auto rep = canonical_ordering(q);
  EXPECT_EQ(rep.a, 0u);
  // Longest edge (0,0)-(5,1), lexicographically smaller endpoint first.
  EXPECT_EQ(rep.permutation, (Perm{0, 1, 2}));
  EXPECT_EQ(passing_orderings(q, nullptr), 1u);
}

TEST(Canonical, TrianglePlusExteriorPoint) {
  // The largest triangle uses three of the four points; the remaining one is
  // outside it.
  const auto q = set2({{0, 0}, {6, 0}, {0, 6}, {5, 5}});
  const auto rep = canonical_ordering(q);
  EXPECT_EQ(rep.a, 0u);
  Perm only;
  EXPECT_EQ(passing_orderings(q, &only), 1u);
  EXPECT_EQ(only, rep.permutation);
  // The last point is not a vertex of the maximal triangle.
  const auto last = rep.permutation.back();
  CanonicalChecker checker(q);
  const auto simplex = checker.max_simplex();
  EXPECT_EQ(std::count(simplex.begin(), simplex.end(), last), 0);
}

TEST(Canonical, Errors) {
  EXPECT_THROW(canonical_ordering(set2({{0, 0}, {1, 0}})), PreconditionError);
  EXPECT_THROW(canonical_ordering(set2({{0, 0}, {1, 1}, {2, 2}, {0, 1}})), PreconditionError);
  const auto q = set2({{0, 3}, {4, 0}, {0, 0}, {1, 1}});
  EXPECT_THROW(check_canonical_conditions(q, Perm{0, 1, 2}), PreconditionError);
  EXPECT_THROW(check_canonical_conditions(q, Perm{0, 1, 1, 2}), PreconditionError);
}

TEST(Canonical, SwappingFirstTwoBreaksL2) {
  const auto q = set2({{0, 3}, {4, 0}, {0, 0}, {1, 1}});
  const auto rep = canonical_ordering(q);
  auto perm = rep.permutation;
  std::swap(perm[0], perm[1]);
  const auto c = check_canonical_conditions(q, perm);
  ASSERT_TRUE(c.first_failure.has_value());
  EXPECT_STREQ(kConditionNames[*c.first_failure], "L2");
  EXPECT_TRUE(c.pass[0]);
}

TEST(Canonical, InsidePointMovedLateIsReported) {
  // Triangle, one interior point (3) and one exterior point (4).
  const auto q = set2({{0, 0}, {10, 0}, {0, 10}, {2, 3}, {9, 8}});
  const auto rep = canonical_ordering(q);
  ASSERT_EQ(rep.a, 1u);
  auto perm = rep.permutation;
  std::swap(perm[3], perm[4]);
  const auto c = check_canonical_conditions(q, perm);
  ASSERT_FALSE(c.all());
  EXPECT_STREQ(kConditionNames[*c.first_failure], "L4");
  EXPECT_FALSE(c.witness.empty());
}

TEST(Canonical, L5OrderMatters) {
  // Two exterior points at different distances from the hull.
  const auto q = set2({{0, 0}, {10, 0}, {0, 10}, {6, 6}, {1, -1}});
  const auto rep = canonical_ordering(q);
  ASSERT_EQ(rep.a, 0u);
  EXPECT_EQ(rep.permutation[3], 4u);  // (1,-1) is closer to the triangle
  auto perm = rep.permutation;
  std::swap(perm[3], perm[4]);
  const auto c = check_canonical_conditions(q, perm);
  ASSERT_FALSE(c.all());
  EXPECT_STREQ(kConditionNames[*c.first_failure], "L5");
}

TEST(CanonicalProperty, ExactlyOneOrderingPasses) {
  for (std::size_t d : {2u, 3u}) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const std::size_t k = d == 2 ? 4 + seed % 3 : 4 + seed % 2 + (seed % 3 == 0 ? 1 : 0);
      const auto q = testing_support::random_set(seed % 2 ? "ball" : "cube", d, k, 500 + 17 * d + seed);
      Perm only;
      ASSERT_EQ(passing_orderings(q, &only), 1u) << "d=" << d << " seed=" << seed;
      EXPECT_EQ(only, canonical_ordering(q).permutation);
    }
  }
}

TEST(CanonicalProperty, ShuffleInvariant) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t d = 2 + seed % 2;
    const auto q = testing_support::random_set("cube", d, 9, 900 + seed);
    const auto base = in_order(q, canonical_ordering(q).permutation);
    Perm shuffle(q.size());
    std::iota(shuffle.begin(), shuffle.end(), 0);
    std::reverse(shuffle.begin(), shuffle.end());
    std::rotate(shuffle.begin(), shuffle.begin() + 1 + seed % 5, shuffle.end());
    const auto shuffled = q.subset(shuffle);
    EXPECT_EQ(in_order(shuffled, canonical_ordering(shuffled).permutation), base);
  }
}

TEST(CanonicalProperty, CertifiesAndHoldsGeometricClaims) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t d = 2 + seed % 2;
    const std::size_t k = 5 + seed % 6;
    const auto q = testing_support::random_set(seed % 3 == 0 ? "simplex" : "cube", d, k, 1200 + seed);
    const auto rep = canonical_ordering(q);
    EXPECT_TRUE(check_canonical_conditions(q, rep.permutation).all());
    if (k > d + 1) EXPECT_LE(rep.a, k - d - 1);
    // L1 consistency.
    Rational best = 0;
    for_each_combination(k, d + 1, [&](std::span<const std::size_t> idx) {
      best = std::max(best, geom::simplex_volume(q.gather(idx)));
      return true;
    });
    EXPECT_EQ(rep.delta_volume, best);
    EXPECT_TRUE(delta_star_contains_all(q, rep.permutation));
    // Samples live in unit-volume bodies, so both clauses hold.
    const auto box = box_containment(q, rep.permutation, true);
    EXPECT_TRUE(box.clause_a);
    EXPECT_TRUE(box.clause_b);
  }
}

TEST(DeltaStar, NonMaximalSimplexLeavesPointOutside) {
  const auto q = set2({{0, 0}, {1, 0}, {0, 1}, {5, 5}});
  const Perm perm{0, 1, 2, 3};
  EXPECT_THROW(delta_star_contains_all(q, perm), PreconditionError);
  EXPECT_FALSE(canonical::detail::delta_star_contains_all_unchecked(q, perm));
}

TEST(DeltaStar, SimplexAlone) {
  const auto q = set2({{0, 0}, {3, 1}, {1, 2}});
  EXPECT_TRUE(delta_star_contains_all(q, canonical_ordering(q).permutation));
}

TEST(Box, VolumeClause) {
  const auto q = set2({{0, 0}, {2, 0}, {0, 2}});
  const auto perm = canonical_ordering(q).permutation;
  const auto with_flag = box_containment(q, perm, true);
  EXPECT_TRUE(with_flag.clause_a);
  EXPECT_FALSE(with_flag.clause_b);
  EXPECT_FALSE(check_box_containment(q, perm, true));
  EXPECT_TRUE(check_box_containment(q, perm, false));
}

TEST(Box, DistanceClauseFailsForBadOrder) {
  // Putting the short edge first violates |q1q2| >= |q3 qi|.
  const auto q = set2({{0, 0}, {1, 0}, {0, 5}});
  EXPECT_FALSE(box_containment(q, Perm{0, 1, 2}, false).clause_a);
  EXPECT_TRUE(box_containment(q, canonical_ordering(q).permutation, false).clause_a);
}
