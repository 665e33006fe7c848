// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "islands/islands.hpp"

using namespace islands;
using enumerate::SubsetKind;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

PointSet random_set(const std::string& body, std::size_t d, std::size_t n, std::uint64_t seed) {
  return sampling::sample_set(sampling::make_body(body, d), n, seed);
}

const char* body_for(std::uint64_t i) {
  static const char* names[] = {"cube", "ball", "simplex"};
  return names[i % 3];
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// CSV outputs of criteria 4, 8 and 9, kept for the determinism check.
struct Csv {
  std::string estimate, horton_growth, random_growth;
};

experiments::EstimateConfig estimate_config(std::size_t k, std::size_t threads) {
  experiments::EstimateConfig c;
  c.body = "cube";
  c.d = 2;
  c.k = k;
  c.n = 30;
  c.trials = 200;
  c.seed = 20240611;
  c.kind = SubsetKind::hole;
  c.threads = threads;
  return c;
}

experiments::GrowthConfig horton_growth_config(std::size_t threads) {
  experiments::GrowthConfig c;
  c.source = "horton";
  c.d = 2;
  c.k = 4;
  c.sizes = {16, 32, 64};
  c.threads = threads;
  return c;
}

experiments::GrowthConfig random_growth_config(std::size_t threads) {
  experiments::GrowthConfig c;
  c.source = "cube";
  c.d = 2;
  c.sizes = {8, 12, 16, 20};
  c.trials = 20;
  c.seed = 77;
  c.threads = threads;
  return c;
}

std::string estimate_csv(std::size_t threads) {
  std::string out = std::string(experiments::estimate_csv_header()) + "\n";
  for (std::size_t k : {3u, 4u}) out += experiments::estimate_csv_row(experiments::monte_carlo(estimate_config(k, threads))) + "\n";
  return out;
}

std::string growth_csv(const experiments::GrowthReport& r) {
  return std::string(experiments::growth_csv_header()) + "\n" + experiments::growth_csv_rows(r);
}

Outcome criterion1() {
  const auto t0 = Clock::now();
  std::size_t agree = 0;
  std::string bad;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::size_t d = 2 + i % 2;
    const std::size_t n = d + 1 + i % (12 - d);
    const auto s = random_set(body_for(i / 2), d, n, 100000 + i);
    const auto a = enumerate::count_all_islands(s, enumerate::IslandMethod::direct).value;
    const auto b = enumerate::count_all_islands(s, enumerate::IslandMethod::convex_bijection).value;
    if (a == b) ++agree;
    else if (bad.empty()) bad = " first mismatch at set " + std::to_string(i);
  }
  const double t = seconds_since(t0);
  return {agree == 200 && t < 120, std::to_string(agree) + "/200 sets agree" + bad + ", " + fmt("%.1fs", t) + " (limit 120s)"};
}

Outcome criterion2() {
  std::size_t ok = 0, checks = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::size_t d = 2 + i % 2;
    const std::size_t n = 4 + i % 12;
    const auto s = random_set(body_for(i), d, n, 200000 + i);
    for (std::size_t k = 1; k <= d; ++k) {
      ++checks;
      if (enumerate::count_k_subsets(s, k, SubsetKind::island).value == binomial(n, k)) ++ok;
    }
    for (std::size_t k : {n + 1, n + 3}) {
      for (auto kind : {SubsetKind::island, SubsetKind::hole}) {
        ++checks;
        if (enumerate::count_k_subsets(s, k, kind).value == 0) ++ok;
      }
    }
  }
  return {ok == checks, std::to_string(ok) + "/" + std::to_string(checks) + " exact counts on 100 sets"};
}

Outcome criterion3() {
  std::size_t ok = 0, checks = 0;
  BigInt min3 = -1;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto s12 = random_set(body_for(i), 2, 12, 300000 + i);
    const BigInt holes = enumerate::count_k_subsets(s12, 3, SubsetKind::hole).value;
    if (min3 < 0 || holes < min3) min3 = holes;
    ++checks;
    if (holes >= 55) ++ok;
    const auto s10 = random_set(body_for(i), 2, 10, 310000 + i);
    for (std::size_t k : {4u, 5u}) {
      ++checks;
      const Rational lb = bounds::lower_bound_islands(2, static_cast<std::int64_t>(k), 10).value;
      if (Rational(enumerate::count_k_subsets(s10, k, SubsetKind::island).value) >= lb) ++ok;
    }
  }
  return {ok == checks, std::to_string(ok) + "/" + std::to_string(checks) + " sets meet the bound; fewest 3-holes at n=12: " +
                            to_string(min3) + " (need 55)"};
}

Outcome criterion4(Csv& csv) {
  const auto t0 = Clock::now();
  const auto r3 = experiments::monte_carlo(estimate_config(3, 1));
  const auto r4 = experiments::monte_carlo(estimate_config(4, 1));
  const double t = seconds_since(t0);
  csv.estimate = std::string(experiments::estimate_csv_header()) + "\n" + experiments::estimate_csv_row(r3) + "\n" +
                 experiments::estimate_csv_row(r4) + "\n";
  const double m3 = to_double(r3.mean), m4 = to_double(r4.mean);
  const double b4 = to_double(bounds::bound_planar4_improved(30).value);
  const bool ok3 = m3 + 4 * r3.stderr_value <= 1740.0 && r3.mean >= Rational(406);
  const bool ok4 = m4 + 4 * r4.stderr_value <= b4;
  std::ostringstream os;
  os << "3-holes mean " << fmt("%.2f", m3) << " +4se " << fmt("%.2f", m3 + 4 * r3.stderr_value)
     << " in [406, 1740]; 4-holes mean " << fmt("%.2f", m4) << " +4se " << fmt("%.2f", m4 + 4 * r4.stderr_value)
     << " <= " << fmt("%.2f", b4) << ", " << fmt("%.1fs", t) << " (limit 300s)";
  return {ok3 && ok4 && t < 300, os.str()};
}

Outcome criterion5() {
  const auto t0 = Clock::now();
  std::size_t ok = 0, total = 0;
  std::string bad;
  auto run = [&](std::size_t d, std::size_t k, std::size_t count, std::uint64_t base) {
    for (std::uint64_t i = 0; i < count; ++i) {
      ++total;
      const auto q = random_set(body_for(i), d, k, base + i);
      canonical::CanonicalChecker checker(q);
      std::vector<std::size_t> perm(k), found;
      std::iota(perm.begin(), perm.end(), 0);
      std::size_t hits = 0;
      do {
        if (checker.check(perm, true).all()) {
          ++hits;
          found = perm;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      const auto rep = checker.canonical();
      const bool good = hits == 1 && found == rep.permutation &&
                        canonical::box_containment(q, rep.permutation, false).clause_a &&
                        canonical::delta_star_contains_all(q, rep.permutation);
      if (good) ++ok;
      else if (bad.empty()) bad = " first failure d=" + std::to_string(d) + " k=" + std::to_string(k);
    }
  };
  // 400 planar sets spread over k = 4..7, 100 in space over k = 4, 5.
  for (std::size_t k = 4; k <= 7; ++k) run(2, k, 100, 400000 + 1000 * k);
  for (std::size_t k = 4; k <= 5; ++k) run(3, k, 50, 500000 + 1000 * k);
  const double t = seconds_since(t0);
  return {ok == total && total == 500 && t < 180,
          std::to_string(ok) + "/" + std::to_string(total) + " sets have a unique passing ordering equal to the canonical one" +
              bad + ", " + fmt("%.1fs", t) + " (limit 180s)"};
}

Outcome criterion6() {
  std::size_t ok = 0, checks = 0;
  for (std::int64_t d = 2; d <= 4; ++d) {
    for (std::int64_t n = d + 1; n <= 50; ++n) {
      ++checks;
      if (bounds::bound_theorem2(d, d + 1, n).value == bounds::bound_corollary3(d, n).value) ++ok;
    }
  }
  for (std::int64_t n = 3; n <= 50; ++n) {
    ++checks;
    if (bounds::bound_theorem1(2, 3, n).value == Rational(4 * binomial(n, 2))) ++ok;
  }
  for (std::int64_t n = 4; n <= 50; ++n) {
    ++checks;
    Rational r = bounds::bound_theorem2(2, 4, n).value * Rational(BigInt(static_cast<long>(n - 3)));
    r /= Rational(BigInt(static_cast<long>(n * (n - 1) * (n - 2))));
    if (r == Rational(128)) ++ok;
  }
  return {ok == checks, std::to_string(ok) + "/" + std::to_string(checks) + " exact identities"};
}

Outcome criterion7() {
  const auto t0 = Clock::now();
  std::ostringstream os;
  bool ok = true;
  for (std::size_t n : {8u, 16u, 32u}) {
    const bool v = horton::verify_horton(horton::horton_planar(n)).ok();
    ok = ok && v;
    os << "verify n=" << n << (v ? " ok" : " FAILED") << "; ";
  }
  PointSet h64;
  for (std::size_t n : {16u, 32u, 64u}) {
    const auto h = horton::horton_planar(n);
    if (n == 64) h64 = h;
    const BigInt c = enumerate::count_k_subsets(h, 7, SubsetKind::hole).value;
    ok = ok && c == 0;
    os << "7-holes n=" << n << ": " << to_string(c) << "; ";
  }
  const std::size_t largest = enumerate::largest_hole_size(h64);
  ok = ok && largest <= 6;
  const double t = seconds_since(t0);
  os << "largest hole n=64: " << largest << ", " << fmt("%.1fs", t) << " (limit 600s)";
  return {ok && t < 600, os.str()};
}

Outcome criterion8(Csv& csv) {
  const auto rep = experiments::growth_experiment(horton_growth_config(1));
  csv.horton_growth = growth_csv(rep);
  std::ostringstream os;
  for (const auto& r : rep.rows) os << "n=" << r.n << ": " << to_string(r.total) << "; ";
  const double slope = rep.fit ? rep.fit->slope : 0.0;
  os << "log-log slope " << fmt("%.4f", slope) << " (need >= 1.6)";
  return {rep.fit && slope >= 1.6, os.str()};
}

Outcome criterion9(Csv& csv) {
  const auto rep = experiments::growth_experiment(random_growth_config(1));
  csv.random_growth = growth_csv(rep);
  std::ostringstream os;
  for (const auto& r : rep.rows) os << "n=" << r.n << ": " << fmt("%.2f", to_double(r.mean)) << "; ";
  if (!rep.fit) return {false, os.str() + "no fit"};
  os << "alpha " << fmt("%.4f", rep.fit->slope) << ", R^2 " << fmt("%.4f", rep.fit->r2) << " (need alpha > 0, R^2 >= 0.9)";
  return {rep.fit->slope > 0 && rep.fit->r2 >= 0.9, os.str()};
}

Outcome criterion10(const Csv& first) {
  // Same seeds, different worker counts, twice each.
  bool ok = true;
  std::ostringstream os;
  for (std::size_t threads : {1u, 4u}) {
    const bool e = estimate_csv(threads) == first.estimate;
    const bool h = growth_csv(experiments::growth_experiment(horton_growth_config(threads))) == first.horton_growth;
    const bool g = growth_csv(experiments::growth_experiment(random_growth_config(threads))) == first.random_growth;
    ok = ok && e && h && g && !first.estimate.empty() && !first.horton_growth.empty() && !first.random_growth.empty();
    os << "threads=" << threads << ": estimate " << (e ? "same" : "DIFFERS") << ", horton growth "
       << (h ? "same" : "DIFFERS") << ", random growth " << (g ? "same" : "DIFFERS") << "; ";
  }
  os << "bytes " << first.estimate.size() + first.horton_growth.size() + first.random_growth.size();
  return {ok, os.str()};
}

}  // namespace

int main() {
  Csv csv;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"all-island counts agree by both methods", criterion1},
      {"k <= d and k > n counts are exact", criterion2},
      {"deterministic lower bounds", criterion3},
      {"expected hole counts within bounds", [&] { return criterion4(csv); }},
      {"canonical ordering unique and consistent", criterion5},
      {"bound formula identities", criterion6},
      {"Horton sets certified and free of 7-holes", criterion7},
      {"4-islands on Horton sets grow superlinearly", [&] { return criterion8(csv); }},
      {"all-island growth fits the n^(1/3) law", [&] { return criterion9(csv); }},
      {"CSV output is byte-identical across runs", [&] { return criterion10(csv); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
