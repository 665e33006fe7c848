#include <gtest/gtest.h>

#include "support.hpp"

using namespace islands;
using namespace islands::enumerate;
using testing_support::pt;
using testing_support::sel;
using testing_support::set2;

namespace {

PointSet four_points() { return set2({{0, 0}, {4, 0}, {0, 4}, {1, 1}}); }

PointSet triangle_plus_interior() { return set2({{0, 0}, {6, 0}, {0, 6}, {1, 1}}); }

/// Ten integer points in general position; counts below were produced by a
/// separate monotone-chain hull implementation in exact fractions.
PointSet oracle_ten() {
  return set2({{19, 8}, {11, 20}, {16, 0}, {14, 7}, {20, 1}, {5, 3}, {11, 15}, {7, 12}, {17, 3}, {18, 7}});
}

}  // namespace

TEST(SubsetSelector, Invariants) {
  EXPECT_THROW(SubsetSelector({2, 1}), PreconditionError);
  EXPECT_THROW(SubsetSelector({1, 1}), PreconditionError);
  EXPECT_THROW(SubsetSelector::of({0, 5}, 5), PreconditionError);
  EXPECT_EQ(SubsetSelector::of({3, 0, 2}, 4), SubsetSelector({0, 2, 3}));
}

TEST(ConvexPosition, Examples) {
  EXPECT_TRUE(is_convex_position(std::vector<Point>{pt({0, 0}), pt({1, 0}), pt({1, 1}), pt({0, 1})}));
  EXPECT_FALSE(is_convex_position(std::vector<Point>{pt({0, 0}), pt({3, 0}), pt({0, 3}), pt({1, 1})}));
  EXPECT_TRUE(is_convex_position(std::vector<Point>{pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})}));
  EXPECT_TRUE(is_convex_position(std::vector<Point>{pt({0, 0}), pt({5, 3})}));
}

TEST(Island, Examples) {
  const auto s = four_points();
  EXPECT_TRUE(is_island(s, sel({0, 1, 3})));
  EXPECT_FALSE(is_island(s, sel({0, 1, 2})));
  EXPECT_TRUE(is_island(s, sel({0, 1, 2, 3})));
  EXPECT_THROW(is_island(s, sel({})), PreconditionError);
}

TEST(Hole, Examples) {
  const auto s = four_points();
  EXPECT_TRUE(is_hole(s, sel({0, 1, 3})));
  EXPECT_FALSE(is_hole(s, sel({0, 1, 2})));
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_TRUE(is_hole(s, sel({i})));
}

TEST(Hole, DegenerateInputNeedsRawDefinition) {
  // (1,1) sits on the edge from (2,0) to (0,2).
  const auto s = set2({{0, 0}, {2, 0}, {0, 2}, {1, 1}});
  EXPECT_THROW(is_hole(s, sel({0, 1, 2})), PreconditionError);
  EXPECT_TRUE(is_hole(s, sel({0, 1, 2}), /*raw_definition=*/true));
  EXPECT_FALSE(is_island(s, sel({0, 1, 2})));
  EXPECT_THROW(count_k_subsets(s, 3, SubsetKind::hole), PreconditionError);
  // Islands and convex subsets still count on degenerate sets.
  EXPECT_EQ(count_k_subsets(s, 3, SubsetKind::island).value, count_k_subsets_bruteforce(s, 3, SubsetKind::island).value);
}

TEST(Count, Examples) {
  const auto s = testing_support::random_set("cube", 2, 6, 8);
  EXPECT_EQ(count_k_subsets(s, 2, SubsetKind::island).value, 15);
  const auto pentagon = set2({{0, 0}, {4, 0}, {5, 3}, {2, 5}, {-1, 3}});
  EXPECT_EQ(count_k_subsets(pentagon, 3, SubsetKind::hole).value, 10);
  const auto tri = set2({{0, 0}, {1, 0}, {0, 1}});
  for (auto kind : {SubsetKind::hole, SubsetKind::island, SubsetKind::convex}) {
    EXPECT_EQ(count_k_subsets(tri, 5, kind).value, 0);
  }
  EXPECT_THROW(count_k_subsets(tri, 0, SubsetKind::hole), PreconditionError);
}

TEST(Count, FrozenOracleValues) {
  const auto s = oracle_ten();
  ASSERT_TRUE(is_general_position(s));
  // (holes, islands, convex) for k = 1..7.
  const long expected[7][3] = {{10, 10, 10}, {45, 45, 45}, {70, 70, 120}, {45, 77, 139},
                               {12, 71, 63}, {1, 54, 8},   {0, 34, 0}};
  for (std::size_t k = 1; k <= 7; ++k) {
    EXPECT_EQ(count_k_subsets(s, k, SubsetKind::hole).value, expected[k - 1][0]) << "k=" << k;
    EXPECT_EQ(count_k_subsets(s, k, SubsetKind::island).value, expected[k - 1][1]) << "k=" << k;
    EXPECT_EQ(count_k_subsets(s, k, SubsetKind::convex).value, expected[k - 1][2]) << "k=" << k;
  }
  EXPECT_EQ(count_all_islands(s, IslandMethod::direct).value, 385);
  EXPECT_EQ(count_all_islands(s, IslandMethod::convex_bijection).value, 385);
  EXPECT_EQ(largest_hole_size(s), 6u);
}

TEST(AllIslands, Examples) {
  const auto t = triangle_plus_interior();
  EXPECT_EQ(count_all_islands(t, IslandMethod::direct).value, 14);
  EXPECT_EQ(count_all_islands(t, IslandMethod::convex_bijection).value, 14);
  const auto one = set2({{3, 4}});
  EXPECT_EQ(count_all_islands(one, IslandMethod::direct).value, 1);
  EXPECT_EQ(count_all_islands(one, IslandMethod::convex_bijection).value, 1);
  const auto square = set2({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  EXPECT_EQ(count_all_islands(square, IslandMethod::direct).value, 15);
  EXPECT_EQ(count_all_islands(square, IslandMethod::convex_bijection).value, 15);
}

TEST(AllIslands, CapIsEnforced) {
  const auto s = testing_support::random_set("cube", 2, 21, 1);
  EXPECT_THROW(count_all_islands(s, IslandMethod::direct), CapExceeded);
  EnumerationOptions opts;
  opts.all_islands_cap = 21;
  EXPECT_NO_THROW(count_all_islands(s, IslandMethod::convex_bijection, opts));
}

TEST(LargestHole, Examples) {
  EXPECT_EQ(largest_hole_size(set2({{0, 0}, {4, 0}, {5, 3}, {2, 5}, {-1, 3}})), 5u);
  EXPECT_EQ(largest_hole_size(triangle_plus_interior()), 3u);
  EnumerationOptions opts;
  opts.largest_hole_cap = 5;
  EXPECT_THROW(largest_hole_size(testing_support::random_set("cube", 2, 6, 2), opts), CapExceeded);
}

TEST(FirstWitness, IsLexicographicallyFirst) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = testing_support::random_set("cube", 2, 9, 60 + seed);
    for (auto kind : {SubsetKind::hole, SubsetKind::island, SubsetKind::convex}) {
      for (std::size_t k = 3; k <= 6; ++k) {
        std::optional<std::vector<std::size_t>> expected;
        for_each_combination(s.size(), k, [&](std::span<const std::size_t> idx) {
          std::vector<std::size_t> v(idx.begin(), idx.end());
          bool ok = false;
          if (kind == SubsetKind::convex) ok = is_convex_position(s.gather(v));
          if (kind == SubsetKind::island) ok = is_island(s, sel(v));
          if (kind == SubsetKind::hole) ok = is_hole(s, sel(v));
          if (ok) expected = v;
          return !ok;
        });
        const auto got = first_k_subset(s, k, kind);
        ASSERT_EQ(got.has_value(), expected.has_value());
        if (got) EXPECT_EQ(std::vector<std::size_t>(got->indices().begin(), got->indices().end()), *expected);
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

TEST(EnumerationProperty, EngineAgreesWithBruteForce) {
  for (std::size_t d : {2u, 3u}) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const std::size_t n = d == 2 ? 10 : 8;
      const auto s = testing_support::random_set(seed % 2 ? "ball" : "cube", d, n, 1000 * d + seed);
      for (std::size_t k = 1; k <= n; ++k) {
        for (auto kind : {SubsetKind::hole, SubsetKind::island, SubsetKind::convex}) {
          EXPECT_EQ(count_k_subsets(s, k, kind).value, count_k_subsets_bruteforce(s, k, kind).value)
              << "d=" << d << " seed=" << seed << " k=" << k << " kind=" << to_string(kind);
        }
      }
    }
  }
}

TEST(EnumerationProperty, ThreadCountDoesNotChangeCounts) {
  const auto s = testing_support::random_set("cube", 2, 40, 5);
  EnumerationOptions one, four;
  four.threads = 4;
  for (std::size_t k : {3u, 4u, 5u}) {
    EXPECT_EQ(count_k_subsets(s, k, SubsetKind::hole, one).value, count_k_subsets(s, k, SubsetKind::hole, four).value);
    EXPECT_EQ(count_k_subsets(s, k, SubsetKind::island, one).value,
              count_k_subsets(s, k, SubsetKind::island, four).value);
  }
}

TEST(EnumerationProperty, HolesAreIslands) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = testing_support::random_set("simplex", 2, 9, 70 + seed);
    for_each_combination(s.size(), 4, [&](std::span<const std::size_t> idx) {
      const auto h = sel(std::vector<std::size_t>(idx.begin(), idx.end()));
      if (is_hole(s, h)) EXPECT_TRUE(is_island(s, h));
      return true;
    });
  }
}

TEST(EnumerationProperty, MonotoneAndTrivialCounts) {
  for (std::size_t d : {2u, 3u}) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const std::size_t n = 12;
      const auto s = testing_support::random_set("cube", d, n, 2000 + 10 * d + seed);
      for (std::size_t k = 1; k <= 7; ++k) {
        const BigInt holes = count_k_subsets(s, k, SubsetKind::hole).value;
        const BigInt islands = count_k_subsets(s, k, SubsetKind::island).value;
        EXPECT_LE(holes, islands);
        EXPECT_LE(islands, binomial(n, k));
        if (k <= d) EXPECT_EQ(islands, binomial(n, k));
        if (k >= d && k <= n) {
          // At least C(n,d)/C(k,d) k-islands.
          EXPECT_GE(Rational(islands) * Rational(binomial(k, d)), Rational(binomial(n, d)));
        }
      }
      EXPECT_GE(count_k_subsets(s, d + 1, SubsetKind::hole).value, binomial(n - 1, d));
    }
  }
}

TEST(EnumerationProperty, BijectionOnRandomSets) {
  for (std::size_t d : {2u, 3u}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto s = testing_support::random_set("ball", d, 6 + seed % 9, 3000 + 10 * d + seed);
      EXPECT_EQ(count_all_islands(s, IslandMethod::direct).value,
                count_all_islands(s, IslandMethod::convex_bijection).value);
    }
  }
}

TEST(EnumerationProperty, AllIslandsIsSumOverK) {
  const auto s = testing_support::random_set("cube", 2, 11, 99);
  BigInt sum = 0;
  for (std::size_t k = 1; k <= s.size(); ++k) sum += count_k_subsets(s, k, SubsetKind::island).value;
  EXPECT_EQ(count_all_islands(s, IslandMethod::direct).value, sum);
}
