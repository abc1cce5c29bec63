#pragma once

// CSV and JSON serialisation of study reports. CSV: a leading
// "# schema_version: 1" line, a header row, ',' separators, '.' decimals and
// LF line endings; numbers use the shortest text that reads back exactly.
// JSON: UTF-8 with a top-level "schema_version": 1. NaN is written as null.
//
// Requires nlohmann/json (vendor/json.hpp).

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "crcalc/gluing.hpp"
#include "crcalc/printer.hpp"
#include "crcalc/verify.hpp"
#include "crcalc/yamabe.hpp"

namespace crcalc {

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return shortest_double(v);
}

inline nlohmann::json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

inline std::string csv_preamble() { return "# schema_version: " + std::to_string(kSchemaVersion) + "\n"; }

}  // namespace detail

// ---------------------------------------------------------------------------
// glue-study

inline const std::vector<std::string>& convergence_columns() {
  static const std::vector<std::string> cols{"delta", "sup_phi_err", "sup_v_err", "sup_R_err"};
  return cols;
}

inline std::string to_csv(const ConvergenceReport& rep) {
  using detail::csv_number;
  std::string out = detail::csv_preamble() + "delta,sup_phi_err,sup_v_err,sup_R_err\n";
  for (const auto& r : rep.rows)
    out += csv_number(r.delta) + "," + csv_number(r.sup_phi_err) + "," + csv_number(r.sup_v_err) + "," +
           csv_number(r.sup_R_err) + "\n";
  return out;
}

inline nlohmann::json to_json(const ConvergenceReport& rep) {
  using detail::json_number;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"delta", json_number(r.delta)},
                    {"sup_phi_err", json_number(r.sup_phi_err)},
                    {"sup_v_err", json_number(r.sup_v_err)},
                    {"sup_R_err", json_number(r.sup_R_err)}});
  return {{"schema_version", kSchemaVersion},
          {"report", "glue-study"},
          {"rows", rows},
          {"slope", json_number(rep.slope)},
          {"monotone", rep.monotone}};
}

// ---------------------------------------------------------------------------
// yamabe-study

inline const std::vector<std::string>& yamabe_columns() {
  static const std::vector<std::string> cols{
      "delta",          "lambda_delta",         "lambda_base",        "gap",
      "rel_gap",        "iterations",           "converged",          "curvature_term_diff",
      "gradient_term_diff", "energy_ratio",     "norm_pinch",         "pinch_bound"};
  return cols;
}

inline std::string to_csv(const YamabeReport& rep) {
  using detail::csv_number;
  std::string out = detail::csv_preamble();
  const auto& cols = yamabe_columns();
  for (std::size_t k = 0; k < cols.size(); ++k) out += (k ? "," : "") + cols[k];
  out += "\n";
  for (const auto& r : rep.rows) {
    out += csv_number(r.delta) + "," + csv_number(r.lambda_delta) + "," + csv_number(r.lambda_base) +
           "," + csv_number(r.gap) + "," + csv_number(r.rel_gap) + "," + std::to_string(r.iterations) +
           "," + (r.converged ? "true" : "false") + "," + csv_number(r.curvature_term_diff) + "," +
           csv_number(r.gradient_term_diff) + "," + csv_number(r.energy_ratio) + "," +
           csv_number(r.norm_pinch) + "," + csv_number(r.pinch_bound) + "\n";
  }
  return out;
}

inline nlohmann::json to_json(const YamabeReport& rep) {
  using detail::json_number;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"delta", json_number(r.delta)},
                    {"lambda_delta", json_number(r.lambda_delta)},
                    {"lambda_base", json_number(r.lambda_base)},
                    {"gap", json_number(r.gap)},
                    {"rel_gap", json_number(r.rel_gap)},
                    {"iterations", r.iterations},
                    {"converged", r.converged},
                    {"curvature_term_diff", json_number(r.curvature_term_diff)},
                    {"gradient_term_diff", json_number(r.gradient_term_diff)},
                    {"energy_ratio", json_number(r.energy_ratio)},
                    {"norm_pinch", json_number(r.norm_pinch)},
                    {"pinch_bound", json_number(r.pinch_bound)}});
  return {{"schema_version", kSchemaVersion},
          {"report", "yamabe-study"},
          {"lambda_base", json_number(rep.lambda_base)},
          {"base_iterations", rep.base_iterations},
          {"base_converged", rep.base_converged},
          {"differences_shrink", rep.differences_shrink},
          {"pinch_holds", rep.pinch_holds},
          {"rows", rows}};
}

// ---------------------------------------------------------------------------
// verify

inline nlohmann::json to_json(const std::vector<verify::SuiteResult>& results) {
  using detail::json_number;
  nlohmann::json suites = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    suites.push_back({{"name", r.name},
                      {"pass", r.pass},
                      {"max_residual", json_number(r.max_residual)},
                      {"tolerance", json_number(r.tolerance)},
                      {"detail", r.detail},
                      {"seconds", json_number(r.seconds)}});
  }
  return {{"schema_version", kSchemaVersion}, {"report", "verify"}, {"pass", all}, {"suites", suites}};
}

}  // namespace crcalc
