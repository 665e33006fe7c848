#include <gtest/gtest.h>

#include "support.hpp"

using namespace islands;
using namespace islands::horton;
using testing_support::pt;

namespace {

std::vector<Point> pts2(std::initializer_list<std::pair<long, long>> xs) {
  std::vector<Point> out;
  for (auto [x, y] : xs) out.push_back(pt({x, y}));
  return out;
}

}  // namespace

TEST(DeepBelow, Examples) {
  EXPECT_TRUE(is_deep_below(pts2({{0, 0}, {1, 1}}), pts2({{0, 100}, {1, 101}})));
  const auto a = pts2({{0, 0}, {1, 3}, {2, 1}});
  EXPECT_FALSE(is_deep_below(a, a));
  EXPECT_FALSE(is_deep_below(pts2({{0, 1}, {1, 2}}), pts2({{0, 0}, {1, 10}})));
}

TEST(DeepBelow, Errors) {
  EXPECT_THROW(is_deep_below(pts2({{0, 0}}), pts2({{0, 5}, {1, 6}})), PreconditionError);
  EXPECT_THROW(is_deep_below(pts2({{2, 0}, {3, 1}}), pts2({{0, 5}, {0, 6}})), PreconditionError);
}

TEST(Horton, OneDimensional) {
  const auto h = horton_d(1, 5);
  ASSERT_EQ(h.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(h[i], pt({static_cast<long>(i)}));
  EXPECT_TRUE(verify_horton(h).ok());
}

TEST(Horton, TinySets) {
  EXPECT_EQ(horton_planar(0).size(), 0u);
  const auto one = horton_planar(1);
  EXPECT_EQ(one.size(), 1u);
  EXPECT_TRUE(verify_horton(one).ok());
}

TEST(Horton, PlanarPowersOfTwoVerify) {
  for (std::size_t n : {2u, 4u, 8u, 16u, 32u}) {
    const auto rep = verify_horton(horton_planar(n));
    EXPECT_TRUE(rep.ok()) << "n=" << n;
    EXPECT_TRUE(rep.witnesses.empty());
  }
}

TEST(Horton, PlanarOtherSizesVerify) {
  for (std::size_t n : {3u, 7u, 12u, 21u}) EXPECT_TRUE(verify_horton(horton_planar(n)).ok()) << "n=" << n;
}

TEST(Horton, GridIsNotStronglyGeneral) {
  std::vector<Point> grid;
  for (long x = 0; x < 4; ++x)
    for (long y = 0; y < 4; ++y) grid.push_back(pt({x, y}));
  const auto rep = verify_horton(PointSet(2, grid));
  EXPECT_FALSE(rep.strongly_general);
  EXPECT_FALSE(rep.ok());
}

TEST(Horton, RandomSetFailsPartitionsWithWitness) {
  const auto s = testing_support::random_set("cube", 2, 16, 4);
  const auto rep = verify_horton(s);
  EXPECT_TRUE(rep.strongly_general);
  EXPECT_FALSE(rep.ok());
  EXPECT_FALSE(rep.partitions_ok && rep.classes_ok);
  EXPECT_FALSE(rep.witnesses.empty());
}

TEST(Horton, CapEnforced) {
  EXPECT_THROW(verify_horton(horton_planar(10), 8), CapExceeded);
}

TEST(Horton, ThreeDimensional) {
  const auto h = horton_d(3, 18);
  ASSERT_EQ(h.size(), 18u);
  EXPECT_TRUE(verify_horton(h).ok());
  // The projection to the first two coordinates is itself Horton.
  std::vector<Point> proj;
  for (const auto& p : h.points()) proj.push_back(p.truncated(2));
  EXPECT_TRUE(verify_horton(PointSet(2, proj)).ok());
  // No hole larger than 2^{d-1}(p_2 p_3 + 1) = 28; here n is below that,
  // so check the much smaller realised value stays consistent.
  EXPECT_LE(enumerate::largest_hole_size(h), 28u);
}

TEST(Horton, PlanarViaGeneralConstruction) {
  const auto a = horton_d(2, 16);
  const auto b = horton_planar(16);
  EXPECT_EQ(a.size(), b.size());
  EXPECT_TRUE(verify_horton(a).ok());
  EXPECT_TRUE(verify_horton(b).ok());
  // Same x-order and same vertical order within every residue class split.
  for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(a[i][0], b[i][0]);
}

TEST(Horton, NoSevenHoles) {
  for (std::size_t n : {16u, 32u}) {
    const auto h = horton_planar(n);
    EXPECT_EQ(enumerate::count_k_subsets(h, 7, enumerate::SubsetKind::hole).value, 0) << "n=" << n;
    EXPECT_LE(enumerate::largest_hole_size(h), 6u);
  }
}

TEST(Horton, ReportJson) {
  const auto j = to_json(verify_horton(horton_planar(8)));
  EXPECT_TRUE(j.at("partitions_ok").get<bool>());
  EXPECT_TRUE(j.at("witnesses").empty());
}

TEST(Horton, PrimeTable) {
  EXPECT_EQ(horton_prime(2), 2u);
  EXPECT_EQ(horton_prime(3), 3u);
  EXPECT_EQ(horton_prime(4), 5u);
}
