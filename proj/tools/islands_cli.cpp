// Command-line front end: sampling, counting, canonical orderings, Horton
// sets, bounds and Monte Carlo experiments.
//
// Exit codes: 0 success or all checks passed, 2 a bound or certification
// check failed, 1 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "islands/islands.hpp"

namespace {

using namespace islands;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;

struct Common {
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string out;
  std::size_t threads = 1;
  std::optional<std::size_t> cap;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format) {
  c.format = default_format;
  sub->add_option("--seed", c.seed, "random seed (u64)");
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json", "text"}));
  sub->add_option("--out", c.out, "write output to this file instead of stdout");
  sub->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(std::size_t{1}, std::size_t{1024}));
  sub->add_option("--cap", c.cap, "raise or lower the size cap of the subcommand");
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error("cannot open '" + c.out + "' for writing");
  f << text;
}

PointSet load(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  }
  return read_pointset(text);
}

std::string pointset_output(const PointSet& s, const std::string& format) {
  if (format == "json") return to_json(s).dump(2) + "\n";
  return serialize_pointset(s);
}

json rational_json(const Rational& r) { return {{"exact", to_string(r)}, {"decimal", to_decimal(r, 6)}}; }

std::string indices(std::span<const std::size_t> idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? " " : "") + std::to_string(idx[i]);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact k-hole and k-island toolkit"};
  app.require_subcommand(1);
  int exit_code = kExitOk;

  // sample ------------------------------------------------------------------
  Common c_sample;
  std::string body_name = "cube";
  std::size_t sample_dim = 2, sample_n = 10;
  auto* sample = app.add_subcommand("sample", "sample n uniform points from a unit-volume body");
  add_common(sample, c_sample, "text");
  sample->add_option("--body", body_name, "cube, simplex or ball")->check(CLI::IsMember({"cube", "simplex", "ball"}));
  sample->add_option("--dim,--d", sample_dim, "dimension")->required();
  sample->add_option("--n", sample_n, "number of points")->required();
  sample->callback([&] {
    sampling::SampleOptions opts;
    if (c_sample.cap) opts.general_position_limit = *c_sample.cap;
    const auto s = sampling::sample_set(sampling::make_body(body_name, sample_dim), sample_n, c_sample.seed, opts);
    emit(c_sample, pointset_output(s, c_sample.format));
  });

  // count -------------------------------------------------------------------
  Common c_count;
  std::string count_input;
  std::size_t count_k = 0;
  std::string count_kind = "hole";
  bool count_all = false;
  std::string count_method = "both";
  bool count_validate = false;
  auto* count = app.add_subcommand("count", "count k-holes, k-islands, convex k-subsets, or all islands");
  add_common(count, c_count, "text");
  count->add_option("input", count_input, "point set file ('-' for stdin)")->required();
  count->add_option("--k", count_k, "subset size");
  count->add_option("--kind", count_kind, "hole, island or convex")->check(CLI::IsMember({"hole", "island", "convex"}));
  count->add_flag("--all", count_all, "count all nonempty islands");
  count->add_option("--method", count_method, "all-islands method")
      ->check(CLI::IsMember({"direct", "convex_bijection", "both"}));
  count->add_flag("--validate", count_validate, "report general position even for n > 64");
  count->callback([&] {
    const auto s = load(count_input);
    enumerate::EnumerationOptions opts;
    opts.threads = c_count.threads;
    if (c_count.cap) opts.all_islands_cap = *c_count.cap;
    json j = {{"n", s.size()}, {"d", s.dim()}};
    if (s.size() <= 64 || count_validate) j["general_position"] = is_general_position(s);
    if (count_all) {
      std::vector<std::pair<std::string, BigInt>> results;
      if (count_method != "convex_bijection") {
        results.emplace_back("direct", enumerate::count_all_islands(s, enumerate::IslandMethod::direct, opts).value);
      }
      if (count_method != "direct") {
        results.emplace_back("convex_bijection",
                             enumerate::count_all_islands(s, enumerate::IslandMethod::convex_bijection, opts).value);
      }
      j["kind"] = "all_islands";
      for (auto& [m, v] : results) j[m] = to_string(v);
      if (results.size() == 2 && results[0].second != results[1].second) exit_code = kExitCheckFailed;
      if (c_count.format == "json") {
        emit(c_count, j.dump(2) + "\n");
      } else if (c_count.format == "csv") {
        std::string out = "n,d,method,count\n";
        for (auto& [m, v] : results) {
          out += std::to_string(s.size()) + "," + std::to_string(s.dim()) + "," + m + "," + to_string(v) + "\n";
        }
        emit(c_count, out);
      } else {
        std::string out;
        for (auto& [m, v] : results) out += "islands (" + m + "): " + to_string(v) + "\n";
        emit(c_count, out);
      }
      return;
    }
    if (count_k == 0) throw CLI::ValidationError("--k", "give --k K (K >= 1) or --all");
    const auto kind = enumerate::parse_kind(count_kind);
    const auto r = enumerate::count_k_subsets(s, count_k, kind, opts);
    j["k"] = count_k;
    j["kind"] = count_kind;
    j["count"] = to_string(r.value);
    if (c_count.format == "json") {
      emit(c_count, j.dump(2) + "\n");
    } else if (c_count.format == "csv") {
      emit(c_count, "n,d,k,kind,count\n" + std::to_string(s.size()) + "," + std::to_string(s.dim()) + "," +
                        std::to_string(count_k) + "," + count_kind + "," + to_string(r.value) + "\n");
    } else {
      emit(c_count, std::to_string(count_k) + "-" + count_kind + "s: " + to_string(r.value) + "\n");
    }
  });

  // canonical ---------------------------------------------------------------
  Common c_canon;
  std::string canon_input;
  bool canon_unit = false;
  auto* canon = app.add_subcommand("canonical", "canonical ordering of a point set and its diagnostics");
  add_common(canon, c_canon, "json");
  canon->add_option("input", canon_input, "point set file ('-' for stdin)")->required();
  canon->add_flag("--unit-volume", canon_unit, "points come from a unit-volume body (adds the volume clause)");
  canon->callback([&] {
    const auto q = load(canon_input);
    const auto rep = canonical::canonical_ordering(q);
    const bool star = canonical::delta_star_contains_all(q, rep.permutation);
    const auto box = canonical::box_containment(q, rep.permutation, canon_unit);
    json flags;
    for (std::size_t i = 0; i < canonical::kConditionCount; ++i) flags[canonical::kConditionNames[i]] = rep.condition_flags[i];
    json j = {{"permutation", rep.permutation},
              {"a", rep.a},
              {"conditions", flags},
              {"delta_volume", to_string(rep.delta_volume)},
              {"delta_star_contains_all", star},
              {"box_clause_a", box.clause_a},
              {"box_clause_b", box.clause_b}};
    if (c_canon.format == "json") {
      emit(c_canon, j.dump(2) + "\n");
    } else if (c_canon.format == "csv") {
      emit(c_canon, "permutation,a,delta_volume,delta_star,box\n" + indices(rep.permutation) + "," +
                        std::to_string(rep.a) + "," + to_string(rep.delta_volume) + "," + (star ? "true" : "false") +
                        "," + (box.ok() ? "true" : "false") + "\n");
    } else {
      std::ostringstream os;
      os << "permutation: " << indices(rep.permutation) << "\na: " << rep.a
         << "\ndelta volume: " << to_string(rep.delta_volume) << "\n";
      for (std::size_t i = 0; i < canonical::kConditionCount; ++i) {
        os << canonical::kConditionNames[i] << ": " << (rep.condition_flags[i] ? "pass" : "FAIL") << "\n";
      }
      os << "delta* contains all: " << (star ? "yes" : "no") << "\nbox: " << (box.ok() ? "yes" : "no") << "\n";
      emit(c_canon, os.str());
    }
  });

  // horton ------------------------------------------------------------------
  Common c_horton;
  std::size_t horton_dim = 2, horton_n = 16;
  bool horton_verify = false;
  std::string horton_scale = "2";
  auto* hort = app.add_subcommand("horton", "construct a certified d-dimensional Horton set");
  add_common(hort, c_horton, "text");
  hort->add_option("--dim,--d", horton_dim, "dimension")->required();
  hort->add_option("--n", horton_n, "number of points")->required();
  hort->add_option("--scale-seed", horton_scale, "initial scale (integer >= 2)");
  hort->add_flag("--verify", horton_verify, "append the verification report");
  hort->callback([&] {
    horton::HortonParams params;
    params.scale_seed = BigInt(horton_scale);
    if (c_horton.cap) params.verify_cap = *c_horton.cap;
    const auto h = horton::horton_d(horton_dim, horton_n, params);
    std::optional<horton::HortonReport> rep;
    if (horton_verify) {
      rep = horton::verify_horton(h, std::max(params.verify_cap, h.size()));
      if (!rep->ok()) exit_code = kExitCheckFailed;
    }
    if (c_horton.format == "json") {
      json j = to_json(h);
      if (rep) j["report"] = horton::to_json(*rep);
      emit(c_horton, j.dump(2) + "\n");
    } else {
      std::string out = serialize_pointset(h);
      if (rep) out += "# " + horton::to_json(*rep).dump() + "\n";
      emit(c_horton, out);
    }
  });

  // verify-horton -----------------------------------------------------------
  Common c_vh;
  std::string vh_input;
  auto* vh = app.add_subcommand("verify-horton", "certify a point set against the d-Horton definition");
  add_common(vh, c_vh, "json");
  vh->add_option("input", vh_input, "point set file ('-' for stdin)")->required();
  vh->callback([&] {
    const auto s = load(vh_input);
    const auto rep = horton::verify_horton(s, c_vh.cap.value_or(256));
    if (!rep.ok()) exit_code = kExitCheckFailed;
    if (c_vh.format == "json") {
      emit(c_vh, horton::to_json(rep).dump(2) + "\n");
    } else if (c_vh.format == "csv") {
      auto b = [](bool v) { return v ? "true" : "false"; };
      emit(c_vh, std::string("strongly_general,projection_ok,classes_ok,partitions_ok,horton\n") +
                     b(rep.strongly_general) + "," + b(rep.projection_ok) + "," + b(rep.classes_ok) + "," +
                     b(rep.partitions_ok) + "," + b(rep.ok()) + "\n");
    } else {
      std::string out = std::string("horton: ") + (rep.ok() ? "yes" : "no") + "\n";
      for (const auto& w : rep.witnesses) out += "  " + w + "\n";
      emit(c_vh, out);
    }
  });

  // bounds ------------------------------------------------------------------
  Common c_bounds;
  std::int64_t b_d = 2, b_k = 3, b_n = 10;
  auto* bnd = app.add_subcommand("bounds", "evaluate every applicable bound exactly");
  add_common(bnd, c_bounds, "text");
  bnd->add_option("--d", b_d, "dimension")->required();
  bnd->add_option("--k", b_k, "subset size")->required();
  bnd->add_option("--n", b_n, "number of points")->required();
  bnd->callback([&] {
    std::vector<bounds::BoundValue> vals;
    auto attempt = [&](auto fn) {
      try {
        vals.push_back(fn());
      } catch (const PreconditionError&) {
      }
    };
    attempt([&] { return bounds::bound_theorem1(b_d, b_k, b_n); });
    attempt([&] { return bounds::bound_theorem2(b_d, b_k, b_n); });
    if (b_k == b_d + 1) attempt([&] { return bounds::bound_corollary3(b_d, b_n); });
    if (b_d == 2 && b_k == 4) attempt([&] { return bounds::bound_planar4_improved(b_n); });
    if (b_k == b_d + 1) attempt([&] { return bounds::lower_bound_empty_simplices(b_d, b_n); });
    attempt([&] { return bounds::lower_bound_islands(b_d, b_k, b_n); });
    if (vals.empty()) throw PreconditionError("no bound applies to d=" + std::to_string(b_d) + ", k=" +
                                              std::to_string(b_k) + ", n=" + std::to_string(b_n));
    if (c_bounds.format == "json") {
      json j = json::object();
      for (const auto& v : vals) j[v.formula_id] = rational_json(v.value);
      emit(c_bounds, json{{"d", b_d}, {"k", b_k}, {"n", b_n}, {"bounds", j}}.dump(2) + "\n");
    } else if (c_bounds.format == "csv") {
      std::string out = "formula,d,k,n,exact,decimal\n";
      for (const auto& v : vals) {
        out += v.formula_id + "," + std::to_string(b_d) + "," + std::to_string(b_k) + "," + std::to_string(b_n) +
               "," + to_string(v.value) + "," + to_decimal(v.value, 6) + "\n";
      }
      emit(c_bounds, out);
    } else {
      std::string out;
      for (const auto& v : vals) out += v.formula_id + ": " + to_string(v.value) + " = " + to_decimal(v.value, 6) + "\n";
      emit(c_bounds, out);
    }
  });

  // estimate ----------------------------------------------------------------
  Common c_est;
  experiments::EstimateConfig est;
  std::string est_kind = "hole";
  auto* estc = app.add_subcommand("estimate", "Monte Carlo mean count against the bounds");
  add_common(estc, c_est, "csv");
  estc->add_option("--body", est.body, "cube, simplex or ball")->check(CLI::IsMember({"cube", "simplex", "ball"}));
  estc->add_option("--d,--dim", est.d, "dimension")->required();
  estc->add_option("--k", est.k, "subset size")->required();
  estc->add_option("--n", est.n, "points per trial")->required();
  estc->add_option("--trials", est.trials, "number of trials");
  estc->add_option("--kind", est_kind, "hole or island")->check(CLI::IsMember({"hole", "island"}));
  estc->callback([&] {
    est.seed = c_est.seed;
    est.threads = c_est.threads;
    est.kind = enumerate::parse_kind(est_kind);
    if (c_est.cap) est.cap = *c_est.cap;
    const auto rep = experiments::monte_carlo(est);
    if (!rep.pass()) exit_code = kExitCheckFailed;
    if (c_est.format == "json") {
      emit(c_est, experiments::to_json(rep).dump(2) + "\n");
    } else {
      emit(c_est, std::string(experiments::estimate_csv_header()) + "\n" + experiments::estimate_csv_row(rep) + "\n");
    }
  });

  // growth ------------------------------------------------------------------
  Common c_growth;
  experiments::GrowthConfig gcfg;
  std::string growth_k = "all";
  std::vector<std::size_t> growth_sizes;
  auto* growth = app.add_subcommand("growth", "island counts over increasing n with a fitted slope");
  add_common(growth, c_growth, "csv");
  growth->add_option("--source", gcfg.source, "cube, simplex, ball or horton")
      ->check(CLI::IsMember({"cube", "simplex", "ball", "horton"}));
  growth->add_option("--d,--dim", gcfg.d, "dimension")->required();
  growth->add_option("--k", growth_k, "subset size or 'all'");
  growth->add_option("--sizes", growth_sizes, "comma-separated sizes")->delimiter(',')->required();
  growth->add_option("--trials", gcfg.trials, "trials per size (random bodies)");
  growth->callback([&] {
    gcfg.sizes = growth_sizes;
    gcfg.seed = c_growth.seed;
    gcfg.threads = c_growth.threads;
    if (growth_k != "all") {
      try {
        gcfg.k = std::stoul(growth_k);
      } catch (const std::exception&) {
        throw CLI::ValidationError("--k", "expected a positive integer or 'all'");
      }
      if (*gcfg.k == 0) throw CLI::ValidationError("--k", "expected a positive integer or 'all'");
    }
    if (c_growth.cap) {
      gcfg.all_islands_cap = *c_growth.cap;
      gcfg.k_cap = *c_growth.cap;
    }
    const auto rep = experiments::growth_experiment(gcfg);
    if (c_growth.format == "json") {
      emit(c_growth, experiments::to_json(rep).dump(2) + "\n");
    } else {
      emit(c_growth, std::string(experiments::growth_csv_header()) + "\n" + experiments::growth_csv_rows(rep));
    }
  });

  // largest-hole ------------------------------------------------------------
  Common c_lh;
  std::string lh_input;
  auto* lh = app.add_subcommand("largest-hole", "size of the largest hole");
  add_common(lh, c_lh, "text");
  lh->add_option("input", lh_input, "point set file ('-' for stdin)")->required();
  lh->callback([&] {
    const auto s = load(lh_input);
    enumerate::EnumerationOptions opts;
    opts.threads = c_lh.threads;
    if (c_lh.cap) opts.largest_hole_cap = *c_lh.cap;
    const auto h = enumerate::largest_hole_size(s, opts);
    if (c_lh.format == "json") {
      emit(c_lh, json{{"n", s.size()}, {"d", s.dim()}, {"largest_hole", h}}.dump(2) + "\n");
    } else if (c_lh.format == "csv") {
      emit(c_lh, "n,d,largest_hole\n" + std::to_string(s.size()) + "," + std::to_string(s.dim()) + "," +
                     std::to_string(h) + "\n");
    } else {
      emit(c_lh, "largest hole: " + std::to_string(h) + "\n");
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return exit_code;
}
