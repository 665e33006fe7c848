#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "islands/errors.hpp"
#include "islands/pointset.hpp"
#include "islands/rng.hpp"

namespace islands::sampling {

enum class BodyKind { unit_cube, unit_simplex_scaled, ball_scaled };

/// A convex body of volume 1 (the ball to within 1e-9).
///  - unit_cube: [0,1]^d.
///  - unit_simplex_scaled: {x : x_i/(d-i) >= 0, sum_i x_i/(d-i) <= 1}
///    (0-based i), the standard simplex stretched by diag(d, d-1, ..., 1).
///  - ball_scaled: centred at the origin with a dyadic radius.
struct ConvexBody {
  BodyKind kind = BodyKind::unit_cube;
  std::size_t dim = 2;
};

inline constexpr std::size_t kMaxBodyDim = 8;
inline constexpr int kGridBits = 53;
inline constexpr int kRadiusBits = 40;

inline const char* body_name(BodyKind k) {
  switch (k) {
    case BodyKind::unit_cube: return "cube";
    case BodyKind::unit_simplex_scaled: return "simplex";
    case BodyKind::ball_scaled: return "ball";
  }
  return "?";
}

inline ConvexBody make_body(const std::string& name, std::size_t dim) {
  ConvexBody body{BodyKind::unit_cube, dim};
  if (name == "cube") {
    body.kind = BodyKind::unit_cube;
  } else if (name == "simplex") {
    body.kind = BodyKind::unit_simplex_scaled;
  } else if (name == "ball") {
    body.kind = BodyKind::ball_scaled;
  } else {
    throw PreconditionError("unknown body '" + name + "' (expected cube, simplex or ball)");
  }
  if (dim == 0 || dim > kMaxBodyDim) {
    throw PreconditionError("unsupported dimension " + std::to_string(dim) + " for body '" + name +
                            "' (1.." + std::to_string(kMaxBodyDim) + ")");
  }
  return body;
}

/// Volume of the d-dimensional unit ball.
inline double unit_ball_volume(std::size_t d) {
  const double half = static_cast<double>(d) / 2.0;
  return std::pow(M_PI, half) / std::tgamma(half + 1.0);
}

/// Radius of the volume-one ball, rounded to a multiple of 2^-40.
inline Rational ball_radius(std::size_t d) {
  const double r = std::pow(1.0 / unit_ball_volume(d), 1.0 / static_cast<double>(d));
  Rational out(BigInt(static_cast<long>(std::llround(std::ldexp(r, kRadiusBits)))),
               BigInt(1) << kRadiusBits);
  out.canonicalize();
  return out;
}

/// Floating-point volume of the body (exactly 1 except for the ball).
inline double body_volume(const ConvexBody& body) {
  if (body.kind != BodyKind::ball_scaled) return 1.0;
  return unit_ball_volume(body.dim) * std::pow(ball_radius(body.dim).get_d(), static_cast<double>(body.dim));
}

/// Exact closed-body membership.
inline bool contains(const ConvexBody& body, const Point& p) {
  if (p.dim() != body.dim) return false;
  const std::size_t d = body.dim;
  switch (body.kind) {
    case BodyKind::unit_cube:
      for (const auto& c : p.coords()) {
        if (sgn(c) < 0 || c > 1) return false;
      }
      return true;
    case BodyKind::unit_simplex_scaled: {
      Rational sum = 0;
      for (std::size_t i = 0; i < d; ++i) {
        if (sgn(p[i]) < 0) return false;
        sum += p[i] / static_cast<long>(d - i);
      }
      return sum <= 1;
    }
    case BodyKind::ball_scaled: {
      Rational sq = 0;
      for (const auto& c : p.coords()) sq += c * c;
      const Rational r = ball_radius(d);
      return sq <= r * r;
    }
  }
  return false;
}

namespace detail {

inline Rational grid_value(std::int64_t k) {
  Rational r(BigInt(static_cast<long>(k)), BigInt(1) << kGridBits);
  r.canonicalize();
  return r;
}

inline Point draw_point(const ConvexBody& body, CounterRng& rng) {
  const std::size_t d = body.dim;
  std::vector<Rational> coords(d);
  switch (body.kind) {
    case BodyKind::unit_cube:
      for (auto& c : coords) c = grid_value(static_cast<std::int64_t>(rng.next53()));
      break;
    case BodyKind::unit_simplex_scaled: {
      std::vector<double> e(d + 1);
      double total = 0;
      for (auto& x : e) {
        x = -std::log(rng.uniform_open0());
        total += x;
      }
      for (std::size_t i = 0; i < d; ++i) {
        // Rounding down keeps the snapped point inside the simplex.
        const auto k = static_cast<std::int64_t>(std::floor(std::ldexp(e[i] / total, kGridBits)));
        coords[i] = grid_value(k) * static_cast<long>(d - i);
      }
      break;
    }
    case BodyKind::ball_scaled: {
      std::vector<double> g(d);
      double norm = 0;
      do {
        norm = 0;
        for (auto& x : g) {
          x = rng.normal();
          norm += x * x;
        }
      } while (norm == 0);
      norm = std::sqrt(norm);
      const double radius = ball_radius(d).get_d() *
                            std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
      for (std::size_t i = 0; i < d; ++i) {
        coords[i] = grid_value(std::llround(std::ldexp(g[i] / norm * radius, kGridBits)));
      }
      break;
    }
  }
  return Point(std::move(coords));
}

}  // namespace detail

/// One point of the body from the substream (seed, index, attempt).
/// Draws that snap outside the closed body are retried within the stream.
inline Point sample_point(const ConvexBody& body, std::uint64_t seed, std::uint64_t index,
                          std::uint64_t attempt = 0) {
  CounterRng rng(derive_key(seed, {index, attempt}));
  while (true) {
    Point p = detail::draw_point(body, rng);
    if (contains(body, p)) return p;
  }
}

struct SampleOptions {
  /// General position is enforced (by resampling) up to this many points;
  /// the exact check is O(n^{d+1}).
  std::size_t general_position_limit = 512;
};

struct SampleStats {
  std::size_t retries = 0;
};

/// n i.i.d. uniform points of the body, each coordinate on the 2^-53 grid,
/// deterministic in (body, n, seed). Points that create a duplicate or an
/// affinely dependent tuple are redrawn from their next substream.
inline PointSet sample_set(const ConvexBody& body, std::size_t n, std::uint64_t seed,
                           const SampleOptions& options = {}, SampleStats* stats = nullptr) {
  if (body.dim == 0 || body.dim > kMaxBodyDim) {
    throw PreconditionError("unsupported body dimension " + std::to_string(body.dim));
  }
  std::vector<Point> pts;
  std::vector<std::uint64_t> attempts(n, 0);
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(sample_point(body, seed, i));

  std::size_t retries = 0;
  auto redraw = [&](std::size_t i) {
    pts[i] = sample_point(body, seed, i, ++attempts[i]);
    ++retries;
  };
  while (true) {
    if (auto dup = PointSet::duplicate_index(pts); dup) {
      redraw(*dup);
      continue;
    }
    PointSet set(body.dim, pts, body_name(body.kind));
    if (n <= options.general_position_limit) {
      if (auto bad = find_degenerate_tuple(set); bad) {
        redraw(bad->back());
        continue;
      }
    }
    if (stats) stats->retries = retries;
    return set;
  }
}

}  // namespace islands::sampling
