#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ap3/extremal.hpp"
#include "ap3/field.hpp"
#include "ap3/interval_set.hpp"
#include "ap3/pipeline.hpp"
#include "ap3/rational.hpp"
#include "ap3/varnavides.hpp"

namespace ap3 {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& q) {
  return Json{{"num", to_i64(numerator(q))}, {"den", to_i64(denominator(q))}};
}

inline Json to_json(const IntervalSet& s) {
  return Json{{"N", s.interval_length()}, {"members", s.elements()}};
}

inline Json to_json(const PrimeContext& ctx) { return Json{{"p", ctx.p}, {"N", ctx.N}}; }

inline Json to_json(const CyclicFunction& f) {
  return Json{{"p", f.ctx.p}, {"scale", to_json(f.scale)}, {"counts", f.counts}};
}

inline Json to_json(const PipelineVerdicts& v) {
  return Json{{"a_spectrum_size", v.a_spectrum_size},
              {"b_dilation_phases", v.b_dilation_phases},
              {"c_transform_gap", v.c_transform_gap},
              {"d_lambda_gap", v.d_lambda_gap},
              {"e_lambda_free", v.e_lambda_free},
              {"f_enlargement", v.f_enlargement},
              {"g_varnavides", v.g_varnavides}};
}

inline Json to_json(const PipelineTrace& tr) {
  Json j;
  j["ctx"] = to_json(tr.ctx);
  j["source_set"] = to_json(tr.source_set);
  j["theta_mode"] = theta_mode_name(tr.theta_mode);
  j["theta"] = tr.theta;
  j["spectrum_mean"] = tr.spectrum_mean;
  j["spectrum_max_offzero"] = tr.spectrum_max_offzero;
  j["large_spectrum"] = tr.large_spectrum_members;
  j["dilation"] = Json{{"x", tr.dilation.x},
                       {"delta", tr.dilation.delta},
                       {"xmax", tr.dilation.xmax},
                       {"phase_bound", tr.dilation.phase_bound},
                       {"degenerate", tr.dilation.degenerate}};
  j["convolved"] = to_json(tr.convolved);
  j["support"] = tr.support;
  j["restricted"] = to_json(tr.restricted);
  j["source_size"] = tr.source_size;
  j["support_size"] = tr.support_size;
  j["restricted_size"] = tr.restricted_size;
  j["lambda_source"] = to_json(tr.lambda_source);
  j["lambda_convolved"] = to_json(tr.lambda_convolved);
  j["lambda_support"] = to_json(tr.lambda_support);
  j["lambda_restricted"] = to_json(tr.lambda_restricted);
  j["max_transform_gap"] = tr.max_transform_gap;
  j["block_length"] = tr.block_length;
  j["r3_block"] = tr.r3_block;
  j["varnavides_bound"] = to_json(tr.varnavides_bound);
  j["t3_restricted"] = tr.t3_restricted;
  j["verdicts"] = to_json(tr.verdicts);
  j["degenerate"] = tr.degenerate;
  j["final_comparison"] = Json{{"lhs_density", to_json(tr.final_lhs_density)},
                               {"rhs_main", to_json(tr.final_rhs_main)},
                               {"rhs_error_scale", tr.final_rhs_error_scale}};
  j["enlargement_ratio"] = tr.enlargement_ratio;
  return j;
}

inline Json to_json(const VarnavidesCensus& c) {
  return Json{{"N", c.N},
              {"M", c.M},
              {"k", c.k},
              {"r3_M", c.r3_M},
              {"set_size", c.set_size},
              {"blocks_per_difference", c.blocks_per_difference},
              {"total_blocks", c.total_blocks},
              {"intersection_sum", c.intersection_sum},
              {"rich_blocks", c.rich_blocks},
              {"lower_bound", to_json(c.lower_bound)},
              {"vacuous", c.vacuous}};
}

inline Json to_json(const VarnavidesReport& r) {
  return Json{{"census", to_json(r.census)},
              {"t3", r.t3},
              {"block_t3_sum", r.block_t3_sum},
              {"averaged_rhs", to_json(r.averaged_rhs)},
              {"checks", Json{{"averaging", r.averaging_ok}, {"lower_bound", r.bound_ok}}},
              {"passed", r.passed}};
}

// ---- r3 table persistence --------------------------------------------------

inline constexpr int kR3CacheVersion = 1;

inline Json r3_records_to_json(const std::vector<R3Record>& records) {
  Json recs = Json::array();
  for (const auto& r : records) {
    recs.push_back(Json{{"N", r.n}, {"value", r.value}, {"witness", r.witness.elements()}});
  }
  return Json{{"version", kR3CacheVersion}, {"records", recs}};
}

inline void save_r3_cache(const std::string& path, const std::vector<R3Record>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("r3 cache: cannot open " + path + " for writing");
  out << r3_records_to_json(records).dump(2) << "\n";
}

inline std::vector<R3Record> load_r3_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("r3 cache: cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("r3 cache: corrupt file " + path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("version") || !j.contains("records")) {
    throw std::runtime_error("r3 cache: malformed document in " + path);
  }
  if (j["version"].get<int>() != kR3CacheVersion) {
    throw std::runtime_error("r3 cache: version mismatch in " + path);
  }
  std::vector<R3Record> out;
  for (const auto& rec : j["records"]) {
    R3Record r;
    r.n = rec.at("N").get<std::int64_t>();
    r.value = rec.at("value").get<std::int64_t>();
    r.witness = IntervalSet::of(r.n, rec.at("witness").get<std::vector<std::int64_t>>());
    r.method = "cached";
    out.push_back(std::move(r));
  }
  return out;
}

// Recompute every record within the exact-search range and report the N
// whose value disagrees or whose witness is not a valid maximum set.
inline std::vector<std::int64_t> verify_r3_records(const std::vector<R3Record>& records,
                                                   const R3Options& opts = {}) {
  std::vector<std::int64_t> bad;
  for (const auto& r : records) {
    const bool witness_ok =
        r.witness.interval_length() == r.n && r.witness.size() == r.value && is_3ap_free(r.witness);
    if (!witness_ok) {
      bad.push_back(r.n);
      continue;
    }
    if (r.n <= opts.n_max && exact_r3(r.n, opts).value != r.value) bad.push_back(r.n);
  }
  return bad;
}

inline std::string r3_records_to_csv(const std::vector<R3Record>& records) {
  std::ostringstream out;
  out << "N,value,witness\n";
  for (const auto& r : records) {
    out << r.n << "," << r.value << ",\"";
    bool first = true;
    for (const auto a : r.witness.elements()) {
      if (!first) out << " ";
      out << a;
      first = false;
    }
    out << "\"\n";
  }
  return out.str();
}

// ---- set files: one element per line ----------------------------------------

inline IntervalSet read_set_file(const std::string& path, std::int64_t n_len) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("set file: cannot open " + path);
  IntervalSet s(n_len);
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::size_t pos = 0;
    std::int64_t value = 0;
    try {
      value = std::stoll(line, &pos);
    } catch (const std::exception&) {
      throw std::runtime_error("set file: bad integer at line " + std::to_string(lineno));
    }
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\r' || line[pos] == '\t')) ++pos;
    if (pos != line.size()) {
      throw std::runtime_error("set file: trailing junk at line " + std::to_string(lineno));
    }
    if (value < 1 || value > n_len) {
      throw std::runtime_error("set file: element " + std::to_string(value) + " outside [1, " +
                               std::to_string(n_len) + "]");
    }
    s.insert(value);
  }
  return s;
}

}  // namespace ap3
