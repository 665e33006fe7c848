#pragma once

// Monte Carlo estimates of hole and island counts against the closed-form
// bounds, and growth experiments over a range of sizes. Every trial draws
// from its own substream (seed, trial), and results are assembled in trial
// order, so output does not depend on the number of workers.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "islands/bounds.hpp"
#include "islands/enumeration.hpp"
#include "islands/horton.hpp"
#include "islands/parallel.hpp"
#include "islands/rational.hpp"
#include "islands/sampler.hpp"

namespace islands::experiments {

using enumerate::SubsetKind;

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t trial) {
  return sampling::derive_key(seed, {n, trial});
}

// ---------------------------------------------------------------------------
// Estimates
// ---------------------------------------------------------------------------

struct EstimateConfig {
  std::string body = "cube";
  std::size_t d = 2;
  std::size_t k = 3;
  std::size_t n = 10;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  SubsetKind kind = SubsetKind::hole;
  std::size_t threads = 1;
  std::size_t cap = 256;  // largest n accepted
};

struct EstimateReport {
  EstimateConfig config;
  std::vector<BigInt> counts;  // per trial
  Rational mean;
  double stderr_value = 0;
  BigInt min, max;
  std::optional<Rational> bound_t1, bound_t2, bound_c3, bound_planar4, trivial;
  std::optional<Rational> lower_bound;
  std::optional<Rational> upper_bound;  // smallest applicable
  bool upper_ok = true;
  bool lower_ok = true;
  bool pass() const { return upper_ok && lower_ok; }
};

namespace detail {

inline Rational sample_mean(const std::vector<BigInt>& xs) {
  BigInt sum = 0;
  for (const auto& x : xs) sum += x;
  Rational m(sum, BigInt(static_cast<unsigned long>(xs.size())));
  m.canonicalize();
  return m;
}

/// Standard error of the mean with the (m-1) sample variance; 0 for one
/// sample.
inline double standard_error(const std::vector<BigInt>& xs, const Rational& mean) {
  if (xs.size() < 2) return 0.0;
  Rational ss = 0;
  for (const auto& x : xs) {
    const Rational dev = Rational(x) - mean;
    ss += dev * dev;
  }
  const Rational var = ss / Rational(BigInt(static_cast<unsigned long>(xs.size() - 1)));
  return std::sqrt(to_double(var) / static_cast<double>(xs.size()));
}

inline void keep_min(std::optional<Rational>& acc, const std::optional<Rational>& v) {
  if (v && (!acc || *v < *acc)) acc = v;
}

}  // namespace detail

inline EstimateReport monte_carlo(const EstimateConfig& cfg) {
  if (cfg.trials < 1) throw PreconditionError("trials must be at least 1");
  if (cfg.k < 1) throw PreconditionError("k must be at least 1");
  if (cfg.kind == SubsetKind::convex) throw PreconditionError("estimate counts holes or islands");
  if (cfg.n > cfg.cap) {
    throw CapExceeded("estimate is capped at n=" + std::to_string(cfg.cap) +
                      "; use a smaller n or k, or raise it with --cap");
  }
  const auto body = sampling::make_body(cfg.body, cfg.d);
  EstimateReport rep;
  rep.config = cfg;
  rep.counts.resize(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    const auto s = sampling::sample_set(body, cfg.n, trial_seed(cfg.seed, cfg.n, t));
    rep.counts[t] = enumerate::count_k_subsets(s, cfg.k, cfg.kind).value;
  });
  rep.mean = detail::sample_mean(rep.counts);
  rep.stderr_value = detail::standard_error(rep.counts, rep.mean);
  rep.min = rep.max = rep.counts[0];
  for (const auto& c : rep.counts) {
    if (c < rep.min) rep.min = c;
    if (c > rep.max) rep.max = c;
  }

  const auto d = static_cast<std::int64_t>(cfg.d);
  const auto k = static_cast<std::int64_t>(cfg.k);
  const auto n = static_cast<std::int64_t>(cfg.n);
  if (k > n) {
    rep.trivial = Rational(0);
    rep.lower_bound = Rational(0);
  } else if (k <= d) {
    // Any k <= d points of a set in general position form a hole.
    rep.trivial = Rational(binomial(n, k));
    rep.lower_bound = rep.trivial;
  } else if (d >= 2) {
    rep.bound_t1 = bounds::bound_theorem1(d, k, n).value;
    if (cfg.kind == SubsetKind::hole) {
      rep.bound_t2 = bounds::bound_theorem2(d, k, n).value;
      if (k == d + 1) rep.bound_c3 = bounds::bound_corollary3(d, n).value;
      if (d == 2 && k == 4) rep.bound_planar4 = bounds::bound_planar4_improved(n).value;
      if (k == d + 1) rep.lower_bound = bounds::lower_bound_empty_simplices(d, n).value;
    } else {
      rep.lower_bound = bounds::lower_bound_islands(d, k, n).value;
    }
  } else if (cfg.kind == SubsetKind::island) {
    rep.lower_bound = bounds::lower_bound_islands(d, k, n).value;
  }
  for (const auto* b : {&rep.trivial, &rep.bound_t1, &rep.bound_t2, &rep.bound_c3, &rep.bound_planar4}) {
    detail::keep_min(rep.upper_bound, *b);
  }
  if (rep.upper_bound) {
    // mean + 4·stderr <= bound, with the mean kept exact.
    const double slack = to_double(*rep.upper_bound - rep.mean);
    rep.upper_ok = 4.0 * rep.stderr_value <= slack;
  }
  if (rep.lower_bound) rep.lower_ok = Rational(rep.min) >= *rep.lower_bound;
  return rep;
}

inline const char* estimate_csv_header() {
  return "body,d,k,n,trials,seed,kind,mean,stderr,min,max,bound_t1,bound_t2,bound_c3,lower_bound,pass";
}

inline std::string estimate_csv_row(const EstimateReport& r) {
  auto opt = [](const std::optional<Rational>& v) { return v ? to_decimal(*v, 6) : std::string(); };
  std::ostringstream os;
  const auto& c = r.config;
  os << c.body << ',' << c.d << ',' << c.k << ',' << c.n << ',' << c.trials << ',' << c.seed << ','
     << enumerate::to_string(c.kind) << ',' << to_decimal(r.mean, 6) << ',' << format_double(r.stderr_value)
     << ',' << r.min << ',' << r.max << ',' << opt(r.bound_t1) << ',' << opt(r.bound_t2) << ','
     << opt(r.bound_c3) << ',' << opt(r.lower_bound) << ',' << (r.pass() ? "true" : "false");
  return os.str();
}

inline nlohmann::json to_json(const EstimateReport& r) {
  auto opt = [](const std::optional<Rational>& v) -> nlohmann::json {
    if (!v) return nullptr;
    return {{"exact", to_string(*v)}, {"decimal", to_decimal(*v, 6)}};
  };
  const auto& c = r.config;
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& x : r.counts) counts.push_back(to_string(x));
  return {{"body", c.body},
          {"d", c.d},
          {"k", c.k},
          {"n", c.n},
          {"trials", c.trials},
          {"seed", c.seed},
          {"kind", enumerate::to_string(c.kind)},
          {"mean", {{"exact", to_string(r.mean)}, {"decimal", to_decimal(r.mean, 6)}}},
          {"stderr", format_double(r.stderr_value)},
          {"min", to_string(r.min)},
          {"max", to_string(r.max)},
          {"bounds",
           {{"theorem1", opt(r.bound_t1)},
            {"theorem2", opt(r.bound_t2)},
            {"corollary3", opt(r.bound_c3)},
            {"planar4_improved", opt(r.bound_planar4)},
            {"trivial", opt(r.trivial)}}},
          {"lower_bound", opt(r.lower_bound)},
          {"upper_ok", r.upper_ok},
          {"lower_ok", r.lower_ok},
          {"pass", r.pass()},
          {"counts", counts}};
}

// ---------------------------------------------------------------------------
// Growth
// ---------------------------------------------------------------------------

struct GrowthConfig {
  std::string source = "cube";    // a body name or "horton"
  std::size_t d = 2;
  std::optional<std::size_t> k;   // empty: all islands
  std::vector<std::size_t> sizes;
  std::size_t trials = 1;         // ignored for Horton sets
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::size_t all_islands_cap = 20;
  std::size_t k_cap = 128;
};

struct GrowthRow {
  std::size_t n = 0;
  std::size_t trials = 0;
  BigInt total;
  Rational mean;
  double x = 0, y = 0;
};

struct LinearFit {
  double slope = 0, intercept = 0, r2 = 0;
  std::vector<double> residuals;
};

struct GrowthReport {
  GrowthConfig config;
  std::string transform;  // "log2_vs_pow" or "loglog"
  std::vector<GrowthRow> rows;
  std::optional<LinearFit> fit;
};

/// Ordinary least squares y = slope·x + intercept; needs two distinct x.
inline std::optional<LinearFit> least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  if (m < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) return std::nullopt;
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    f.residuals.push_back(r);
    sse += r * r;
  }
  f.r2 = syy == 0 ? 1.0 : 1.0 - sse / syy;
  return f;
}

inline double log2_of(const Rational& q) {
  // log2 of big values without overflow: num and den separately.
  long exp_num = 0, exp_den = 0;
  const double mn = mpz_get_d_2exp(&exp_num, q.get_num_mpz_t());
  const double md = mpz_get_d_2exp(&exp_den, q.get_den_mpz_t());
  return std::log2(mn) - std::log2(md) + static_cast<double>(exp_num - exp_den);
}

inline GrowthReport growth_experiment(const GrowthConfig& cfg) {
  if (cfg.sizes.empty()) throw PreconditionError("growth needs at least one size");
  for (std::size_t i = 1; i < cfg.sizes.size(); ++i) {
    if (cfg.sizes[i] <= cfg.sizes[i - 1]) throw PreconditionError("sizes must be strictly increasing");
  }
  const bool horton_source = cfg.source == "horton";
  const std::size_t largest = cfg.sizes.back();
  if (!cfg.k && largest > cfg.all_islands_cap) {
    throw CapExceeded("all-islands growth is capped at n=" + std::to_string(cfg.all_islands_cap) +
                      "; raise it with --cap");
  }
  if (cfg.k && largest > cfg.k_cap) {
    throw CapExceeded("k-island growth is capped at n=" + std::to_string(cfg.k_cap) + "; raise it with --cap");
  }
  if (cfg.trials < 1) throw PreconditionError("trials must be at least 1");

  GrowthReport rep;
  rep.config = cfg;
  rep.transform = cfg.k ? "loglog" : "log2_vs_pow";
  std::optional<sampling::ConvexBody> body;
  if (!horton_source) body = sampling::make_body(cfg.source, cfg.d);

  enumerate::EnumerationOptions opts;
  opts.all_islands_cap = cfg.all_islands_cap;
  auto count = [&](const PointSet& s) -> BigInt {
    if (cfg.k) return enumerate::count_k_subsets(s, *cfg.k, SubsetKind::island, opts).value;
    return enumerate::count_all_islands(s, enumerate::IslandMethod::direct, opts).value;
  };

  std::vector<double> xs, ys;
  for (const std::size_t n : cfg.sizes) {
    GrowthRow row;
    row.n = n;
    std::vector<BigInt> counts;
    if (horton_source) {
      counts.push_back(count(horton::horton_d(cfg.d, n)));
    } else {
      counts.resize(cfg.trials);
      parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
        counts[t] = count(sampling::sample_set(*body, n, trial_seed(cfg.seed, n, t)));
      });
    }
    row.trials = counts.size();
    row.total = 0;
    for (const auto& c : counts) row.total += c;
    row.mean = detail::sample_mean(counts);
    if (sgn(row.mean) <= 0) throw PreconditionError("growth: zero count at n=" + std::to_string(n));
    if (cfg.k) {
      row.x = std::log2(static_cast<double>(n));
    } else {
      const double e = (static_cast<double>(cfg.d) - 1.0) / (static_cast<double>(cfg.d) + 1.0);
      row.x = std::pow(static_cast<double>(n), e);
    }
    row.y = log2_of(row.mean);
    xs.push_back(row.x);
    ys.push_back(row.y);
    rep.rows.push_back(std::move(row));
  }
  rep.fit = least_squares(xs, ys);
  return rep;
}

inline const char* growth_csv_header() { return "source,d,k,n,trials,seed,total,mean,x,y,slope,intercept,r2"; }

inline std::string growth_csv_rows(const GrowthReport& r) {
  std::ostringstream os;
  const auto& c = r.config;
  for (const auto& row : r.rows) {
    os << c.source << ',' << c.d << ',' << (c.k ? std::to_string(*c.k) : std::string("all")) << ',' << row.n
       << ',' << row.trials << ',' << c.seed << ',' << row.total << ',' << to_decimal(row.mean, 6) << ','
       << format_double(row.x) << ',' << format_double(row.y) << ',';
    if (r.fit) {
      os << format_double(r.fit->slope) << ',' << format_double(r.fit->intercept) << ','
         << format_double(r.fit->r2);
    } else {
      os << ",,";
    }
    os << '\n';
  }
  return os.str();
}

inline nlohmann::json to_json(const GrowthReport& r) {
  const auto& c = r.config;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"n", row.n},
                    {"trials", row.trials},
                    {"total", to_string(row.total)},
                    {"mean", to_decimal(row.mean, 6)},
                    {"x", format_double(row.x)},
                    {"y", format_double(row.y)}});
  }
  nlohmann::json fit = nullptr;
  if (r.fit) {
    nlohmann::json res = nlohmann::json::array();
    for (double v : r.fit->residuals) res.push_back(format_double(v));
    fit = {{"slope", format_double(r.fit->slope)},
           {"intercept", format_double(r.fit->intercept)},
           {"r2", format_double(r.fit->r2)},
           {"residuals", res}};
  }
  return {{"source", c.source},
          {"d", c.d},
          {"k", c.k ? nlohmann::json(*c.k) : nlohmann::json("all")},
          {"seed", c.seed},
          {"transform", r.transform},
          {"rows", rows},
          {"fit", fit}};
}

}  // namespace islands::experiments
