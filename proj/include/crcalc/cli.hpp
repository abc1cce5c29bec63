#pragma once

// Command-line front end. run_cli() is the whole program minus main(), so the
// commands can be exercised in-process. Exit codes: 0 success, 1 verification
// or guard failure, 2 usage, parse or config error.
//
// Requires CLI11 and nlohmann/json (vendor/).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crcalc/config.hpp"
#include "crcalc/gluing.hpp"
#include "crcalc/parse.hpp"
#include "crcalc/phcalc.hpp"
#include "crcalc/report.hpp"
#include "crcalc/verify.hpp"
#include "crcalc/yamabe.hpp"

namespace crcalc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

inline std::string significant12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct StudyFlags {
  std::string config_path;
  std::string phi;
  double L = 0;
  int n = 0;
  std::vector<double> deltas;
  double R0 = 0;
  double tol = 0;
  int max_iter = 0;
  long long seed = 0;
  std::string output;
  std::string format;
};

inline void add_study_flags(CLI::App* cmd, StudyFlags& f, bool yamabe) {
  cmd->add_option("--config", f.config_path, "JSON run configuration");
  cmd->add_option("--phi", f.phi, "deformation tensor expression");
  cmd->add_option("--L", f.L, "box half-width");
  cmd->add_option("--n,--grid", f.n, "grid points per axis (odd, >= 9)");
  cmd->add_option("--deltas", f.deltas, "cutoff radii, strictly decreasing")->delimiter(',');
  cmd->add_option("--R0", f.R0, "curvature at the origin (default: computed from phi)");
  cmd->add_option("--output,-o", f.output, "output file (default: standard output)");
  cmd->add_option("--format", f.format, "csv or json");
  if (yamabe) {
    cmd->add_option("--tol", f.tol, "relative decrease stopping tolerance");
    cmd->add_option("--max-iter", f.max_iter, "iteration cap");
    cmd->add_option("--seed", f.seed, "seed of the initial bump");
  }
}

// Config file first, then explicit flags.
inline RunConfig resolve_config(const CLI::App* cmd, const StudyFlags& f) {
  RunConfig cfg;
  if (!f.config_path.empty()) cfg = load_config(f.config_path);
  nlohmann::json over = nlohmann::json::object();
  auto given = [&](const char* name) { return cmd->count(name) > 0; };
  if (given("--phi")) over["phi"] = f.phi;
  if (given("--L")) over["L"] = f.L;
  if (given("--n")) over["n"] = f.n;
  if (given("--deltas")) over["deltas"] = f.deltas;
  if (given("--R0")) over["R0"] = f.R0;
  if (given("--output")) over["output"] = f.output;
  if (given("--format")) over["format"] = f.format;
  if (cmd->get_option_no_throw("--tol") && given("--tol")) over["tol"] = f.tol;
  if (cmd->get_option_no_throw("--max-iter") && given("--max-iter")) over["max_iter"] = f.max_iter;
  if (cmd->get_option_no_throw("--seed") && given("--seed")) over["seed"] = f.seed;
  return apply_config(over, cfg);
}

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw ConfigError("output", "cannot write '" + cfg.output + "'");
  file << text;
}

inline double resolve_R0(const RunConfig& cfg, const DeformationTensor& phi) {
  return cfg.R0 ? *cfg.R0 : scalar_curvature(phi, {0, 0, 0});
}

}  // namespace detail

inline int cmd_verify(bool json, const std::vector<std::string>& only, std::ostream& out) {
  std::vector<verify::SuiteResult> results;
  for (const auto& s : verify::registry()) {
    if (!only.empty() && std::find(only.begin(), only.end(), s.name) == only.end()) continue;
    results.push_back(s.run());
  }
  bool all = !results.empty();
  for (const auto& r : results) all = all && r.pass;
  if (json) {
    out << to_json(results).dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      char line[160];
      std::snprintf(line, sizeof line, "[%s] %-20s residual %.3e (tolerance %.1e) %.1fs  ",
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.max_residual, r.tolerance, r.seconds);
      out << line << r.detail << "\n";
    }
    out << (all ? "all suites passed" : "some suites FAILED") << "\n";
  }
  return all ? kExitOk : kExitFailure;
}

inline int cmd_curvature(const std::string& phi_src, const std::vector<double>& point,
                         const std::string& w_src, bool oracle, double h, std::ostream& out) {
  const DeformationTensor phi(parse_field(phi_src));
  const HPoint p{point.at(0), point.at(1), point.at(2)};
  if (w_src.empty()) {
    const double R = scalar_curvature(phi, p);
    out << detail::significant12(R) << "\n";
    if (oracle) {
      const double o = curvature_via_structure_eq(phi, p, h);
      out << "oracle " << detail::significant12(o) << "\n";
      out << "gap " << detail::significant12(std::abs(R - o)) << "\n";
    }
    return kExitOk;
  }
  const PHStructure s(phi, parse_field(w_src));
  out << detail::significant12(conformal_curvature(s, p)) << "\n";
  return kExitOk;
}

inline int cmd_glue_study(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const DeformationTensor phi(parse_field(cfg.phi));
  const ConvergenceReport rep = convergence_study(phi, detail::resolve_R0(cfg, phi), cfg.deltas, cfg.grid());
  detail::emit(cfg, cfg.format == "json" ? to_json(rep).dump(2) + "\n" : to_csv(rep), out);
  (cfg.output.empty() ? err : out) << "slope " << detail::significant12(rep.slope) << "\n";
  return kExitOk;
}

inline int cmd_yamabe_study(const RunConfig& cfg, bool allow_nonconverged, std::ostream& out,
                            std::ostream& err) {
  const DeformationTensor phi(parse_field(cfg.phi));
  const YamabeReport rep = lambda_comparison_study(phi, detail::resolve_R0(cfg, phi), cfg.deltas,
                                                   cfg.grid(), cfg.minimize_options());
  detail::emit(cfg, cfg.format == "json" ? to_json(rep).dump(2) + "\n" : to_csv(rep), out);
  std::ostream& info = cfg.output.empty() ? err : out;
  info << "lambda_base " << detail::significant12(rep.lambda_base)
       << (rep.base_converged ? "" : " (NOT converged)") << "\n";
  bool converged = rep.base_converged;
  for (const auto& r : rep.rows) {
    info << "delta " << detail::significant12(r.delta) << " gap " << detail::significant12(r.gap)
         << (r.converged ? "" : " (NOT converged)") << "\n";
    converged = converged && r.converged;
  }
  if (!converged && !allow_nonconverged) {
    info << "non-converged minimisation (pass --allow-nonconverged to accept)\n";
    return kExitFailure;
  }
  return kExitOk;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudohermitian calculus on Heisenberg charts: curvature, gluing and Yamabe studies",
               "crcalc"};
  app.require_subcommand(1);

  auto* verify_cmd = app.add_subcommand("verify", "run the property suites");
  bool verify_json = false, list = false;
  std::vector<std::string> only;
  verify_cmd->add_flag("--json", verify_json, "machine-readable results");
  verify_cmd->add_flag("--list", list, "list the suite names");
  verify_cmd->add_option("--suite", only, "run only the named suites");

  auto* curv_cmd = app.add_subcommand("curvature", "Tanaka-Webster scalar curvature at a point");
  std::string phi_src, w_src;
  std::vector<double> point;
  bool oracle = false;
  double h = 1e-3;
  curv_cmd->add_option("--phi", phi_src, "deformation tensor expression")->required();
  curv_cmd->add_option("--point", point, "x,y,z")->required()->delimiter(',')->expected(3);
  curv_cmd->add_option("--w", w_src, "conformal factor w (theta = w^2 Theta)");
  curv_cmd->add_flag("--oracle", oracle, "also print the structure-equation oracle and the gap");
  curv_cmd->add_option("--step", h, "oracle finite-difference step");

  detail::StudyFlags glue_flags, yam_flags;
  auto* glue_cmd = app.add_subcommand("glue-study", "curvature convergence of the glued structures");
  detail::add_study_flags(glue_cmd, glue_flags, false);
  auto* yam_cmd = app.add_subcommand("yamabe-study", "Dirichlet-proxy Yamabe constants versus delta");
  detail::add_study_flags(yam_cmd, yam_flags, true);
  bool allow_nonconverged = false;
  yam_cmd->add_flag("--allow-nonconverged", allow_nonconverged, "exit 0 even if a minimisation stalls");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*verify_cmd) {
      if (list) {
        for (const auto& s : verify::registry()) out << s.name << "\n";
        return kExitOk;
      }
      return cmd_verify(verify_json, only, out);
    }
    if (*curv_cmd) {
      if (oracle && !w_src.empty()) {
        err << "usage error: --oracle applies to the standard contact form only (drop --w)\n";
        return kExitUsage;
      }
      return cmd_curvature(phi_src, point, w_src, oracle, h, out);
    }
    if (*glue_cmd) return cmd_glue_study(detail::resolve_config(glue_cmd, glue_flags), out, err);
    if (*yam_cmd)
      return cmd_yamabe_study(detail::resolve_config(yam_cmd, yam_flags), allow_nonconverged, out, err);
  } catch (const SyntaxError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace crcalc::cli
