// Command-line front end: exact r3 tables with caching, density-increment
// pipeline traces, and Varnavides lemma verification reports.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 verification
// failure.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "ap3/serialize.hpp"

namespace {

using namespace ap3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Range {
  std::int64_t lo = 1;
  std::int64_t hi = 0;  // lo > hi encodes the empty range
};

Range parse_range(const std::string& text) {
  Range r;
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoll(text);
    } else {
      r.lo = std::stoll(text.substr(0, dots));
      r.hi = std::stoll(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw UsageError("--n expects an integer or a range like 1..20, got '" + text + "'");
  }
  if (r.lo < 1) throw UsageError("--n values must be at least 1");
  return r;
}

std::pair<ThetaMode, double> parse_theta(const std::string& text) {
  if (text == "paper") return {ThetaMode::kAsymptotic, 0.0};
  if (text == "half-density") return {ThetaMode::kHalfDensity, 0.0};
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing junk");
    if (!(v > 0)) throw UsageError("--theta must be positive");
    return {ThetaMode::kExplicit, v};
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("--theta expects 'paper', 'half-density', or a positive number");
  }
}

IntervalSet build_source(const std::string& source, std::int64_t n, const R3Options& opts) {
  if (source == "greedy") return greedy_3ap_free(n);
  if (source == "behrend") return behrend_set(n);
  if (source == "exact") {
    if (n > opts.n_max) {
      throw UsageError("--source exact needs N <= " + std::to_string(opts.n_max));
    }
    return exact_r3(n, opts).witness;
  }
  if (source == "full") return IntervalSet::full(n);
  if (source.rfind("file:", 0) == 0) return read_set_file(source.substr(5), n);
  throw UsageError("unknown --source '" + source + "'");
}

struct R3Args {
  std::string range;
  std::string format = "json";
  std::string cache_path;
  std::int64_t n_max = 60;
  bool verify = false;
};

int cmd_r3(const R3Args& args) {
  const Range range = parse_range(args.range);
  R3Options opts;
  opts.n_max = args.n_max;

  std::map<std::int64_t, R3Record> table;
  if (!args.cache_path.empty() && std::filesystem::exists(args.cache_path)) {
    for (auto& rec : load_r3_cache(args.cache_path)) table.emplace(rec.n, std::move(rec));
    if (args.verify) {
      std::vector<R3Record> cached;
      for (const auto& [n, rec] : table) cached.push_back(rec);
      const auto bad = verify_r3_records(cached, opts);
      if (!bad.empty()) {
        std::string ns;
        for (const auto n : bad) ns += " " + std::to_string(n);
        std::cerr << "r3: cache verification failed at N =" << ns << "\n";
        return 2;
      }
    }
  } else if (args.verify) {
    std::cerr << "r3: --verify needs an existing --cache file\n";
    return 1;
  }

  std::vector<R3Record> rows;
  for (std::int64_t n = range.lo; n <= range.hi; ++n) {
    if (const auto it = table.find(n); it != table.end()) {
      rows.push_back(it->second);
    } else if (n <= opts.n_max) {
      auto rec = exact_r3(n, opts);
      table.emplace(n, rec);
      rows.push_back(std::move(rec));
    } else {
      std::cerr << "r3: N=" << n << " exceeds the exact-search bound " << opts.n_max
                << " and is not covered by a cache; precompute it into --cache or use a "
                   "construction instead\n";
      return 1;
    }
  }

  if (!args.cache_path.empty()) {
    std::vector<R3Record> all;
    for (const auto& [n, rec] : table) all.push_back(rec);
    save_r3_cache(args.cache_path, all);
  }

  if (args.format == "csv") {
    std::cout << r3_records_to_csv(rows);
  } else if (args.format == "json") {
    std::cout << r3_records_to_json(rows).dump(2) << "\n";
  } else {
    throw UsageError("--format must be json or csv");
  }
  return 0;
}

struct PipelineArgs {
  std::int64_t n = 0;
  std::string source = "greedy";
  std::string theta = "paper";
  std::int64_t m = 0;
  std::uint64_t seed = 0;  // reserved; every built-in source is deterministic
  std::string format = "json";
  std::int64_t n_max = 60;
};

int cmd_pipeline(const PipelineArgs& args) {
  if (args.format != "json") throw UsageError("pipeline output is json only");
  if (args.n < 2) throw UsageError("--n must be at least 2");

  PipelineConfig cfg;
  std::tie(cfg.theta_mode, cfg.theta) = parse_theta(args.theta);
  cfg.block_length = args.m;
  cfg.r3_options.n_max = args.n_max;

  const auto s = build_source(args.source, args.n, cfg.r3_options);
  const auto trace = run_pipeline(s, cfg);
  std::cout << to_json(trace).dump(2) << "\n";
  if (!trace.verdicts.all()) {
    std::cerr << "pipeline: verdict failed:";
    for (const auto& name : trace.verdicts.failed()) std::cerr << " " << name;
    std::cerr << "\n";
    return 2;
  }
  return 0;
}

struct VarnavidesArgs {
  std::int64_t n = 0;
  std::int64_t m = 3;
  std::string source = "full";
  std::uint64_t seed = 0;
  std::string format = "json";
  std::int64_t n_max = 60;
  std::string inject_fault;
};

int cmd_varnavides(const VarnavidesArgs& args) {
  if (args.format != "json") throw UsageError("varnavides output is json only");
  if (args.n < 3) throw UsageError("--n must be at least 3");

  R3Options opts;
  opts.n_max = args.n_max;
  const auto a = build_source(args.source, args.n, opts);
  auto report = verify_lemma(a, args.m, opts);

  if (!args.inject_fault.empty()) {
    if (args.inject_fault == "averaging") {
      report.averaging_ok = false;
    } else if (args.inject_fault == "lower_bound") {
      report.bound_ok = false;
    } else {
      throw UsageError("--inject-fault expects 'averaging' or 'lower_bound'");
    }
    report.passed = false;
  }

  std::cout << to_json(report).dump(2) << "\n";
  if (!report.passed) {
    std::cerr << "varnavides: check failed: " << report.first_failure() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations around three-term progressions: extremal sets, prime-field "
               "spectra, the convolution enlargement pipeline, and block-averaged counting."};
  app.require_subcommand(1);

  R3Args r3_args;
  auto* r3 = app.add_subcommand("r3", "Exact r3(N) table with optional cache");
  r3->add_option("--n", r3_args.range, "N or range A..B")->required();
  r3->add_option("--format", r3_args.format, "json or csv");
  r3->add_option("--cache", r3_args.cache_path, "r3 cache file to read and update");
  r3->add_option("--nmax", r3_args.n_max, "exact-search size bound");
  r3->add_flag("--verify", r3_args.verify, "recompute cached values and flag mismatches");

  PipelineArgs pl_args;
  auto* pl = app.add_subcommand("pipeline", "Run the enlargement pipeline, print the trace");
  pl->add_option("--n", pl_args.n, "interval length N")->required();
  pl->add_option("--source", pl_args.source, "exact|greedy|behrend|file:<path>");
  pl->add_option("--theta", pl_args.theta, "paper|half-density|<positive float>");
  pl->add_option("--m", pl_args.m, "Varnavides block length (default: automatic)");
  pl->add_option("--seed", pl_args.seed, "seed echoed for reproducibility scripting");
  pl->add_option("--format", pl_args.format, "json");
  pl->add_option("--nmax", pl_args.n_max, "exact-search size bound for r3 lookups");

  VarnavidesArgs va_args;
  auto* va = app.add_subcommand("varnavides", "Verify the block-averaging lemma on a set");
  va->add_option("--n", va_args.n, "interval length N")->required();
  va->add_option("--m", va_args.m, "block length M >= 3");
  va->add_option("--source", va_args.source, "full|exact|greedy|behrend|file:<path>");
  va->add_option("--seed", va_args.seed, "seed echoed for reproducibility scripting");
  va->add_option("--format", va_args.format, "json");
  va->add_option("--nmax", va_args.n_max, "exact-search size bound for r3 lookups");
  va->add_option("--inject-fault", va_args.inject_fault,
                 "force a named check to fail (testing hook)")
      ->group("");  // hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (r3->parsed()) return cmd_r3(r3_args);
    if (pl->parsed()) return cmd_pipeline(pl_args);
    if (va->parsed()) return cmd_varnavides(va_args);
  } catch (const UsageError& e) {
    std::cerr << "ap3: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ap3: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
