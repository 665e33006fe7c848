#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "islands/combinatorics.hpp"
#include "islands/errors.hpp"
#include "islands/exact_geom.hpp"
#include "islands/lattice.hpp"
#include "islands/point.hpp"

namespace islands {

/// An immutable, duplicate-free list of points of R^dim.
class PointSet {
 public:
  PointSet() = default;

  PointSet(std::size_t dim, std::vector<Point> points, std::string label = {})
      : dim_(dim), points_(std::move(points)), label_(std::move(label)) {
    if (dim_ == 0) throw PreconditionError("point set dimension must be positive");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (points_[i].dim() != dim_) {
        throw PreconditionError("point " + std::to_string(i) + " has dimension " +
                                std::to_string(points_[i].dim()) + ", expected " +
                                std::to_string(dim_));
      }
    }
    if (auto dup = duplicate_index(points_); dup) {
      throw PreconditionError("duplicate point at index " + std::to_string(*dup));
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Point> points() const noexcept { return points_; }
  const std::string& label() const noexcept { return label_; }

  std::vector<Point> gather(std::span<const std::size_t> idx) const {
    std::vector<Point> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(points_.at(i));
    return out;
  }

  PointSet subset(std::span<const std::size_t> idx) const { return PointSet(dim_, gather(idx)); }

  /// Image under (x_1,...,x_d) -> (x_1,...,x_{d-1}).
  PointSet projected() const {
    if (dim_ < 2) throw PreconditionError("cannot project a 1-dimensional set");
    std::vector<Point> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.projected());
    return PointSet(dim_ - 1, std::move(out), label_);
  }

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.dim_ == b.dim_ && a.points_ == b.points_;
  }

  /// Index of the later copy of some repeated point, if any.
  static std::optional<std::size_t> duplicate_index(const std::vector<Point>& pts) {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return lex_less(pts[a], pts[b]); });
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (pts[order[i - 1]] == pts[order[i]]) return std::max(order[i - 1], order[i]);
    }
    return std::nullopt;
  }

 private:
  std::size_t dim_ = 1;
  std::vector<Point> points_;
  std::string label_;
};

// ---------------------------------------------------------------------------
// Text and JSON formats
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::size_t parse_count(std::string_view tok, std::size_t line, const char* what) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(),
                                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw ParseError(line, std::string("malformed header: bad ") + what + " '" + std::string(tok) + "'");
  }
  return static_cast<std::size_t>(std::stoull(std::string(tok)));
}

inline constexpr std::string_view kLabelPrefix = "# label: ";

}  // namespace detail

/// Reads the text format: a "<d> <n>" header then n lines of d rationals.
/// Lines starting with '#' and blank lines are ignored, except that a
/// leading "# label: ..." comment sets the label.
inline PointSet parse_pointset(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::pair<std::size_t, std::size_t>> header;
  std::string label;
  std::vector<Point> points;
  std::vector<std::size_t> point_lines;

  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string_view line = detail::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (!header && raw.rfind(detail::kLabelPrefix, 0) == 0) {
        label = raw.substr(detail::kLabelPrefix.size());
      }
      continue;
    }
    auto tokens = detail::split_ws(line);
    if (!header) {
      if (tokens.size() != 2) throw ParseError(line_no, "malformed header: expected '<d> <n>'");
      const auto d = detail::parse_count(tokens[0], line_no, "dimension");
      const auto n = detail::parse_count(tokens[1], line_no, "point count");
      if (d == 0) throw ParseError(line_no, "malformed header: dimension must be positive");
      header = {d, n};
      points.reserve(n);
      continue;
    }
    if (points.size() == header->second) {
      throw ParseError(line_no, "unexpected content after " + std::to_string(header->second) + " points");
    }
    if (tokens.size() != header->first) {
      throw ParseError(line_no, "wrong coordinate count: expected " + std::to_string(header->first) +
                                    ", got " + std::to_string(tokens.size()));
    }
    std::vector<Rational> coords;
    coords.reserve(tokens.size());
    for (auto tok : tokens) {
      try {
        coords.push_back(parse_rational(tok));
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
      }
    }
    points.emplace_back(std::move(coords));
    point_lines.push_back(line_no);
  }
  if (!header) throw ParseError(line_no + 1, "malformed header: missing '<d> <n>'");
  if (points.size() != header->second) {
    throw ParseError(line_no + 1, "expected " + std::to_string(header->second) + " points, got " +
                                      std::to_string(points.size()));
  }
  if (auto dup = PointSet::duplicate_index(points); dup) {
    throw ParseError(point_lines[*dup], "duplicate point");
  }
  return PointSet(header->first, std::move(points), std::move(label));
}

inline PointSet parse_pointset(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_pointset(in);
}

inline std::string serialize_pointset(const PointSet& s) {
  std::string out;
  if (!s.label().empty()) out += std::string(detail::kLabelPrefix) + s.label() + "\n";
  out += std::to_string(s.dim()) + " " + std::to_string(s.size()) + "\n";
  for (const auto& p : s.points()) {
    for (std::size_t i = 0; i < p.dim(); ++i) {
      if (i) out += ' ';
      out += to_string(p[i]);
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::json to_json(const PointSet& s) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : s.points()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& c : p.coords()) row.push_back(to_string(c));
    pts.push_back(std::move(row));
  }
  nlohmann::json out{{"dim", s.dim()}, {"points", std::move(pts)}};
  if (!s.label().empty()) out["label"] = s.label();
  return out;
}

/// JSON mirror {dim, points:[[...]], label?}. Coordinates may be strings
/// in the text-format number syntax or JSON numbers.
inline PointSet pointset_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("points")) {
    throw ParseError(1, "JSON point set needs 'dim' and 'points'");
  }
  const auto dim = j.at("dim").get<std::size_t>();
  std::vector<Point> points;
  std::size_t row_no = 0;
  for (const auto& row : j.at("points")) {
    ++row_no;
    if (!row.is_array() || row.size() != dim) {
      throw ParseError(row_no, "wrong coordinate count in JSON point " + std::to_string(row_no));
    }
    std::vector<Rational> coords;
    for (const auto& c : row) {
      try {
        if (c.is_string()) {
          coords.push_back(parse_rational(c.get<std::string>()));
        } else if (c.is_number_integer()) {
          coords.emplace_back(BigInt(c.dump(), 10));
        } else if (c.is_number()) {
          coords.emplace_back(c.get<double>());
        } else {
          throw std::invalid_argument("coordinate must be a string or number");
        }
      } catch (const std::invalid_argument& e) {
        throw ParseError(row_no, e.what());
      }
    }
    points.emplace_back(std::move(coords));
  }
  return PointSet(dim, std::move(points), j.value("label", std::string{}));
}

/// Reads either format, dispatching on the first non-blank character.
inline PointSet read_pointset(std::string_view text) {
  const auto t = detail::trim(text);
  if (!t.empty() && t.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(t);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(1, std::string("invalid JSON: ") + e.what());
    }
    return pointset_from_json(j);
  }
  return parse_pointset(text);
}

// ---------------------------------------------------------------------------
// General position
// ---------------------------------------------------------------------------

/// Some affinely dependent tuple witnessing a violation of general
/// position, or nullopt. With n >= d+1 it is enough to test every
/// (d+1)-tuple: k+2 points on a k-flat extend to d+1 points on a hyperplane.
inline std::optional<std::vector<std::size_t>> find_degenerate_tuple(const PointSet& s) {
  const std::size_t d = s.dim();
  if (s.size() <= 2) return std::nullopt;
  if (s.size() < d + 1) {
    if (geom::affinely_independent(s.points())) return std::nullopt;
    std::vector<std::size_t> all(s.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return all;
  }
  geom::LatticeCoordinates lattice(s.points());
  std::optional<std::vector<std::size_t>> witness;
  for_each_combination(s.size(), d + 1, [&](std::span<const std::size_t> idx) {
    if (lattice.orientation(idx) != 0) return true;
    witness.emplace(idx.begin(), idx.end());
    return false;
  });
  return witness;
}

inline bool is_general_position(const PointSet& s) { return !find_degenerate_tuple(s); }

/// General position, and for every i < d no i+1 points span an i-flat
/// meeting span(e_{i+1},...,e_d) nontrivially. The latter says the first i
/// coordinates of any i+1 points are affinely independent in R^i.
inline bool is_strongly_general_position(const PointSet& s) {
  if (!is_general_position(s)) return false;
  for (std::size_t i = 1; i < s.dim(); ++i) {
    std::vector<Point> truncated;
    truncated.reserve(s.size());
    for (const auto& p : s.points()) truncated.push_back(p.truncated(i));
    geom::LatticeCoordinates lattice(truncated);
    const bool ok = for_each_combination(s.size(), i + 1, [&](std::span<const std::size_t> idx) {
      return lattice.orientation(idx) != 0;
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace islands
