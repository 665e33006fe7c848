#pragma once

#include <string>
#include <vector>

#include "islands/islands.hpp"

namespace testing_support {

using islands::Point;
using islands::PointSet;
using islands::Rational;

inline Point pt(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return Point(std::move(v));
}

inline PointSet set2(std::initializer_list<std::pair<long, long>> pts) {
  std::vector<Point> v;
  for (auto [x, y] : pts) v.push_back(pt({x, y}));
  return PointSet(2, std::move(v));
}

inline PointSet random_set(const std::string& body, std::size_t d, std::size_t n, std::uint64_t seed) {
  return islands::sampling::sample_set(islands::sampling::make_body(body, d), n, seed);
}

inline islands::enumerate::SubsetSelector sel(std::vector<std::size_t> idx) {
  return islands::enumerate::SubsetSelector(std::move(idx));
}

}  // namespace testing_support
