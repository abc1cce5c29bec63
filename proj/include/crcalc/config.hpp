#pragma once

// Run configuration for the study commands, read from JSON. Every failure
// names the offending field through ConfigError::field().
//
// Requires nlohmann/json (vendor/json.hpp).

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "crcalc/errors.hpp"
#include "crcalc/grid.hpp"
#include "crcalc/yamabe.hpp"

namespace crcalc {

struct RunConfig {
  std::string phi = "0.1*(x^2+y^2) + 0.05i*x*y";
  std::optional<double> R0;  // defaults to the curvature of phi at the origin
  double L = 1.0;
  int n = 33;
  std::vector<double> deltas{0.4, 0.2, 0.1, 0.05};
  double tol = 1e-8;
  int max_iter = 5000;
  std::uint64_t seed = 1;
  std::string output;  // empty: standard output
  std::string format = "csv";

  BoxGrid grid() const { return BoxGrid(L, n); }
  MinimizeOptions minimize_options() const {
    MinimizeOptions o;
    o.tol = tol;
    o.max_iter = max_iter;
    o.seed = seed;
    return o;
  }

  // Throws ConfigError naming the first invalid field.
  void validate() const {
    if (!(L > 0 && std::isfinite(L))) throw ConfigError("L", "must be a positive number");
    if (n < 9 || n % 2 == 0) throw ConfigError("n", "must be an odd integer >= 9");
    if (deltas.empty()) throw ConfigError("deltas", "must not be empty");
    for (std::size_t k = 0; k < deltas.size(); ++k) {
      if (!(deltas[k] > 0 && deltas[k] <= 1)) throw ConfigError("deltas", "entries must lie in (0, 1]");
      if (k > 0 && !(deltas[k] < deltas[k - 1])) throw ConfigError("deltas", "must be strictly decreasing");
    }
    if (!(tol > 0 && std::isfinite(tol))) throw ConfigError("tol", "must be a positive number");
    if (max_iter <= 0) throw ConfigError("max_iter", "must be a positive integer");
    if (R0 && !std::isfinite(*R0)) throw ConfigError("R0", "must be finite");
    if (format != "csv" && format != "json") throw ConfigError("format", "must be \"csv\" or \"json\"");
  }
};

namespace detail {

inline double config_number(const nlohmann::json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError(key, "expected a number");
  return j.get<double>();
}

inline long long config_integer(const nlohmann::json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ConfigError(key, "expected an integer");
  return j.get<long long>();
}

inline std::string config_string(const nlohmann::json& j, const std::string& key) {
  if (!j.is_string()) throw ConfigError(key, "expected a string");
  return j.get<std::string>();
}

}  // namespace detail

// Fields absent from `j` keep the values already in `cfg`.
inline RunConfig apply_config(const nlohmann::json& j, RunConfig cfg = {}) {
  using namespace detail;
  if (!j.is_object()) throw ConfigError("<root>", "config must be a JSON object");
  static const std::set<std::string> known{"phi",      "R0",   "L",      "n",     "deltas",
                                           "tol",      "max_iter", "seed", "output", "format"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ConfigError(key, "unknown field");
    if (key == "phi") cfg.phi = config_string(value, key);
    else if (key == "R0") cfg.R0 = value.is_null() ? std::nullopt : std::optional(config_number(value, key));
    else if (key == "L") cfg.L = config_number(value, key);
    else if (key == "n") cfg.n = static_cast<int>(config_integer(value, key));
    else if (key == "deltas") {
      if (!value.is_array()) throw ConfigError(key, "expected an array of numbers");
      cfg.deltas.clear();
      for (const auto& d : value) cfg.deltas.push_back(config_number(d, key));
    } else if (key == "tol") cfg.tol = config_number(value, key);
    else if (key == "max_iter") cfg.max_iter = static_cast<int>(config_integer(value, key));
    else if (key == "seed") {
      const long long s = config_integer(value, key);
      if (s < 0) throw ConfigError(key, "must be non-negative");
      cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "output") cfg.output = config_string(value, key);
    else if (key == "format") cfg.format = config_string(value, key);
  }
  cfg.validate();
  return cfg;
}

inline RunConfig parse_config(const std::string& text, RunConfig base = {}) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  return apply_config(j, std::move(base));
}

inline RunConfig load_config(const std::string& path, RunConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

inline nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j{{"phi", c.phi}, {"L", c.L},       {"n", c.n},
                   {"deltas", c.deltas}, {"tol", c.tol}, {"max_iter", c.max_iter},
                   {"seed", c.seed}, {"output", c.output}, {"format", c.format}};
  j["R0"] = c.R0 ? nlohmann::json(*c.R0) : nlohmann::json(nullptr);
  return j;
}

}  // namespace crcalc
