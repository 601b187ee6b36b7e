// permint: command-line front door for the permutation-family toolkit.
// Subcommands: verify, decompose, globalness, spread, coverage, search,
// reduce, bounds. Primary output is TSV on stdout; --format structured emits
// one JSON document with the same values. Identical configurations produce
// byte-identical output (Monte Carlo included, via per-sample RNG streams).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permint/bounds.hpp"
#include "permint/extremal.hpp"
#include "permint/io.hpp"
#include "permint/spectral.hpp"
#include "permint/spread.hpp"
#include "permint/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct Report {
  std::string command;
  std::map<std::string, std::string> config;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  // extra named family blocks appended in the family file format
  std::vector<std::pair<std::string, const permint::PermFamily*>> families;
  int assertions_passed = 0;
  int assertions_failed = 0;

  void assert_that(bool ok) { ok ? ++assertions_passed : ++assertions_failed; }

  void print_tsv() const {
    std::cout << "# permint " << kVersion << "\n# cmd: " << command;
    for (const auto& [k, v] : config) std::cout << ' ' << k << '=' << v;
    std::cout << "\n";
    if (auto it = config.find("seed"); it != config.end()) {
      std::cout << "# seed: " << it->second << "\n";
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
      std::cout << (c ? "\t" : "") << columns[c];
    }
    if (!columns.empty()) std::cout << "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) std::cout << (c ? "\t" : "") << row[c];
      std::cout << "\n";
    }
    for (const auto& [name, fam] : families) {
      std::cout << "# family " << name << "\n";
      permint::emit_family_text(*fam, std::cout);
    }
    std::cout << "# assertions: passed=" << assertions_passed << " failed=" << assertions_failed
              << "\n";
  }

  void print_structured() const {
    nlohmann::json doc;
    doc["tool"] = "permint";
    doc["version"] = kVersion;
    doc["command"] = command;
    doc["config"] = config;
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json obj;
      for (std::size_t c = 0; c < columns.size() && c < row.size(); ++c) {
        obj[columns[c]] = row[c];
      }
      rows_json.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows_json);
    if (!families.empty()) {
      nlohmann::json fams;
      for (const auto& [name, fam] : families) {
        fams[name] = nlohmann::json::parse(permint::family_to_json_string(*fam));
      }
      doc["families"] = std::move(fams);
    }
    doc["assertions"] = {{"passed", assertions_passed}, {"failed", assertions_failed}};
    std::cout << doc.dump(2) << "\n";
  }

  int finish(const std::string& format) const {
    if (format == "structured") {
      print_structured();
    } else {
      print_tsv();
    }
    return assertions_failed == 0 ? 0 : 1;
  }
};

std::string pattern_str(const permint::RestrictionPattern& p) { return p.to_string(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permint: intersection structure of permutation families"};
  app.require_subcommand(1);

  std::string format = "tsv";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"tsv", "structured"}));
  int threads = 1;
  app.add_option("--threads", threads,
                 "Worker cap; results are independent of it, all reductions are order-free");

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "Run the cross-module invariant suite");
  std::string level = "quick";
  cmd_verify->add_option("--level", level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));
  std::string verify_family;
  int verify_t = 0;
  cmd_verify->add_option("--family", verify_family, "Also check a family file");
  cmd_verify->add_option("--cross-free-t", verify_t,
                         "Assert the file's family is cross-(t-1)-free against itself");

  // decompose
  auto* cmd_decompose = app.add_subcommand("decompose", "Level weights of a family indicator");
  std::string dec_family;
  cmd_decompose->add_option("--family", dec_family, "Family file")->required();

  // globalness
  auto* cmd_globalness = app.add_subcommand("globalness", "Restriction density ratios");
  std::string glob_family;
  int glob_depth = 3;
  cmd_globalness->add_option("--family", glob_family, "Family file")->required();
  cmd_globalness->add_option("--depth", glob_depth, "Pattern depth cap");

  // spread
  auto* cmd_spread = app.add_subcommand("spread", "Spreadness of the embedded family");
  std::string spread_family;
  int spread_depth = 3;
  cmd_spread->add_option("--family", spread_family, "Family file")->required();
  cmd_spread->add_option("--depth", spread_depth, "Probe depth cap");

  // coverage
  auto* cmd_coverage = app.add_subcommand("coverage", "Random-subset coverage estimate");
  std::string cov_family;
  int cov_m = 1;
  double cov_delta = 0.5;
  long cov_samples = 100000;
  std::uint64_t cov_seed = 0;
  cmd_coverage->add_option("--family", cov_family, "Family file")->required();
  cmd_coverage->add_option("--m", cov_m, "Refinement count")->required();
  cmd_coverage->add_option("--delta", cov_delta, "Per-step density")->required();
  cmd_coverage->add_option("--samples", cov_samples, "Monte Carlo samples");
  cmd_coverage->add_option("--seed", cov_seed, "RNG seed");

  // search
  auto* cmd_search = app.add_subcommand("search", "Maximize |F||G| over cross-free pairs");
  int search_n = 0;
  int search_t = 0;
  bool search_exact = false;
  bool search_bb = false;
  std::uint64_t search_budget = 10000000;
  std::string emit_f;
  std::string emit_g;
  cmd_search->add_option("--n", search_n, "Ground set size")->required();
  cmd_search->add_option("--t", search_t, "Forbidden agreement count is t-1")->required();
  cmd_search->add_flag("--exact", search_exact, "Exhaustive subset oracle (n <= 4)");
  cmd_search->add_flag("--bb", search_bb, "Branch and bound (n <= 6)");
  std::string emit_format = "text";
  cmd_search->add_option("--budget", search_budget, "Node budget for --bb");
  cmd_search->add_option("--emit-f", emit_f, "Write the F witness to this file");
  cmd_search->add_option("--emit-g", emit_g, "Write the G witness to this file");
  cmd_search->add_option("--emit-format", emit_format, "Witness file format")
      ->check(CLI::IsMember({"text", "json"}));

  // reduce
  auto* cmd_reduce = app.add_subcommand("reduce", "Degree-lowering rounds on a family pair");
  std::string reduce_a;
  std::string reduce_b;
  int reduce_t = 0;
  double reduce_gamma = 2.0;
  int reduce_rounds = 1;
  int reduce_depth = 3;
  cmd_reduce->add_option("--a", reduce_a, "Family file A")->required();
  cmd_reduce->add_option("--b", reduce_b, "Family file B")->required();
  cmd_reduce->add_option("--t", reduce_t, "Starting degree")->required();
  cmd_reduce->add_option("--gamma", reduce_gamma, "Globalness parameter");
  cmd_reduce->add_option("--rounds", reduce_rounds, "Rounds to run");
  cmd_reduce->add_option("--depth", reduce_depth, "Global-restriction depth cap");

  // bounds
  auto* cmd_bounds = app.add_subcommand("bounds", "Exact closed-form tables");
  std::string table = "main";
  int bounds_n = 0;
  int bounds_t = 1;
  cmd_bounds->add_option("--table", table, "main or tightness")
      ->check(CLI::IsMember({"main", "tightness"}));
  cmd_bounds->add_option("--n", bounds_n, "Ground set size")->required();
  cmd_bounds->add_option("--t", bounds_t, "Degree (main table)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Report report;

    if (cmd_verify->parsed()) {
      report.command = "verify";
      report.config["level"] = level;
      report.columns = {"check", "status", "detail"};
      for (const auto& r : permint::run_invariant_suite(level)) {
        report.rows.push_back({r.name, r.passed ? "pass" : "fail", r.detail});
        report.assert_that(r.passed);
      }
      if (!verify_family.empty()) {
        report.config["family"] = verify_family;
        report.config["cross-free-t"] = std::to_string(verify_t);
        const auto fam = permint::parse_family(verify_family);
        const auto res = permint::is_cross_free(fam, fam, verify_t);
        std::string detail = "ok";
        if (!res.cross_free) {
          detail = "violating pair found";
        }
        report.rows.push_back({"family.cross_free", res.cross_free ? "pass" : "fail", detail});
        report.assert_that(res.cross_free);
      }
      return report.finish(format);
    }

    if (cmd_decompose->parsed()) {
      report.command = "decompose";
      report.config["family"] = dec_family;
      const auto fam = permint::parse_family(dec_family);
      const auto f = permint::SnFunction::indicator(fam);
      const auto dec = permint::decompose(f);
      report.columns = {"level", "value", "witness"};
      double total = 0.0;
      for (std::size_t d = 0; d < dec.weights.size(); ++d) {
        report.rows.push_back({std::to_string(d), fmt_double(dec.weights[d]), "-"});
        total += dec.weights[d];
      }
      report.assert_that(std::abs(total - f.norm2_sq()) <=
                         1e-8 * std::max(1.0, f.norm2_sq()));
      return report.finish(format);
    }

    if (cmd_globalness->parsed()) {
      report.command = "globalness";
      report.config["family"] = glob_family;
      report.config["depth"] = std::to_string(glob_depth);
      const auto fam = permint::parse_family(glob_family);
      report.columns = {"depth", "value", "witness"};
      for (int d = 1; d <= glob_depth; ++d) {
        const auto rep = permint::globalness(fam, d);
        report.rows.push_back({std::to_string(d), fmt_double(rep.gamma_density),
                               pattern_str(rep.witness)});
        report.assert_that(rep.gamma_density >= 1.0 - 1e-12);
      }
      const auto rep = permint::globalness(fam, glob_depth);
      report.rows.push_back({"l2", fmt_double(rep.gamma_l2), pattern_str(rep.witness)});
      return report.finish(format);
    }

    if (cmd_spread->parsed()) {
      report.command = "spread";
      report.config["family"] = spread_family;
      report.config["depth"] = std::to_string(spread_depth);
      const auto fam = permint::parse_family(spread_family);
      const auto rep = permint::spreadness(permint::embed(fam), spread_depth);
      report.columns = {"depth", "r", "witness"};
      std::string witness;
      for (int e : rep.witness) {
        if (!witness.empty()) witness += ',';
        witness += std::to_string(e);
      }
      report.rows.push_back({std::to_string(rep.depth_cap), fmt_double(rep.r), witness});
      report.assert_that(rep.r >= 1.0 - 1e-12);
      return report.finish(format);
    }

    if (cmd_coverage->parsed()) {
      report.command = "coverage";
      report.config["family"] = cov_family;
      report.config["m"] = std::to_string(cov_m);
      report.config["delta"] = fmt_double(cov_delta);
      report.config["samples"] = std::to_string(cov_samples);
      report.config["seed"] = std::to_string(cov_seed);
      const auto fam = permint::parse_family(cov_family);
      const auto est = permint::coverage_mc(permint::embed(fam), cov_m, cov_delta, cov_samples,
                                            cov_seed);
      report.columns = {"m",        "delta",    "samples",       "hits",    "estimate",
                        "spread_r", "mu0_size", "theorem_bound", "vacuous", "seed"};
      report.rows.push_back({std::to_string(est.m), fmt_double(est.delta),
                             std::to_string(est.samples), std::to_string(est.hits),
                             fmt_double(est.estimate), fmt_double(est.spread_r),
                             fmt_double(est.mu0_size), fmt_double(est.theorem_bound),
                             est.bound_vacuous ? "true" : "false", std::to_string(est.seed)});
      const double se = std::sqrt(std::max(est.estimate * (1.0 - est.estimate), 0.0) /
                                  static_cast<double>(est.samples));
      report.assert_that(est.estimate >= std::max(0.0, est.theorem_bound) - 3.0 * se);
      return report.finish(format);
    }

    if (cmd_search->parsed()) {
      report.command = "search";
      if (search_exact == search_bb) {
        throw permint::ParameterError("search: pass exactly one of --exact or --bb");
      }
      report.config["n"] = std::to_string(search_n);
      report.config["t"] = std::to_string(search_t);
      report.config["mode"] = search_exact ? "exact" : "bb";
      if (search_bb) report.config["budget"] = std::to_string(search_budget);
      const auto result = search_exact
                              ? permint::exact_max_product(search_n, search_t)
                              : permint::bb_max_product(search_n, search_t, search_budget);
      report.columns = {"n",      "t",        "product",       "status",
                        "f_size", "g_size",   "witness_bound", "explored"};
      report.rows.push_back(
          {std::to_string(result.n), std::to_string(result.t), std::to_string(result.product),
           result.status == permint::SearchStatus::exact_optimal ? "exact-optimal" : "lower-bound",
           std::to_string(result.F.size()), std::to_string(result.G.size()),
           std::to_string(result.witness_bound), std::to_string(result.explored)});
      report.families.emplace_back("F", &result.F);
      report.families.emplace_back("G", &result.G);
      // re-validate the witness independently of the search masks
      report.assert_that(permint::is_cross_free(result.F, result.G, search_t).cross_free);
      if (result.status == permint::SearchStatus::exact_optimal) {
        report.assert_that(result.product >= result.witness_bound);
      }
      const bool json_out = emit_format == "json";
      if (!emit_f.empty()) {
        json_out ? permint::emit_family_json(result.F, emit_f)
                 : permint::emit_family(result.F, emit_f);
      }
      if (!emit_g.empty()) {
        json_out ? permint::emit_family_json(result.G, emit_g)
                 : permint::emit_family(result.G, emit_g);
      }
      return report.finish(format);
    }

    if (cmd_reduce->parsed()) {
      report.command = "reduce";
      report.config["a"] = reduce_a;
      report.config["b"] = reduce_b;
      report.config["t"] = std::to_string(reduce_t);
      report.config["gamma"] = fmt_double(reduce_gamma);
      report.config["rounds"] = std::to_string(reduce_rounds);
      report.config["depth"] = std::to_string(reduce_depth);
      auto state = permint::make_reduction_state(permint::parse_family(reduce_a),
                                                 permint::parse_family(reduce_b), reduce_t);
      report.columns = {"round",     "a_size",    "b_size", "density_a", "density_b",
                        "a_pattern", "b_pattern", "common", "status"};
      for (int round = 1; round <= reduce_rounds; ++round) {
        if (state.t_remaining < 2 || state.terminated_empty) break;
        state = permint::reduction_round(state, reduce_gamma, reduce_depth);
        const auto& rec = state.history.back();
        std::string common = rec.common_step
                                 ? std::to_string(rec.common_step->first) + "->" +
                                       std::to_string(rec.common_step->second)
                                 : "-";
        report.rows.push_back({std::to_string(round), std::to_string(state.A.size()),
                               std::to_string(state.B.size()), fmt_double(state.density_a()),
                               fmt_double(state.density_b()), pattern_str(rec.a_global),
                               pattern_str(rec.b_global), common,
                               state.terminated_empty ? "empty-family" : "ok"});
        report.assert_that(true);  // reduction_round throws if degree preservation fails
      }
      return report.finish(format);
    }

    if (cmd_bounds->parsed()) {
      report.command = "bounds";
      report.config["table"] = table;
      report.config["n"] = std::to_string(bounds_n);
      if (table == "main") report.config["t"] = std::to_string(bounds_t);
      const auto tbl = table == "main" ? permint::bounds::main_bound_table(bounds_n, bounds_t)
                                       : permint::bounds::tightness_table(bounds_n);
      report.columns = {"label", "params", "value", "log2", "applicable", "note"};
      for (const auto& row : tbl.rows) {
        report.rows.push_back({row.label, row.params, row.value,
                               row.has_log2 ? fmt_double(row.log2_value) : "-",
                               row.applicable ? "true" : "false", row.note});
      }
      report.assert_that(!tbl.rows.empty());
      return report.finish(format);
    }

    throw permint::ParameterError("no subcommand selected");
  } catch (const permint::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
