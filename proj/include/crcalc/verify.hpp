#pragma once

// Property suites shared by `crcalc verify` and the acceptance runner. Each
// suite returns its worst residual next to the tolerance it was held to.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "crcalc/corpus.hpp"
#include "crcalc/cutoff.hpp"
#include "crcalc/fd_oracle.hpp"
#include "crcalc/forms.hpp"
#include "crcalc/gluing.hpp"
#include "crcalc/phcalc.hpp"
#include "crcalc/yamabe.hpp"

namespace crcalc::verify {

struct SuiteResult {
  std::string name;
  bool pass = false;
  double max_residual = 0;  // the headline quantity; see detail for its meaning
  double tolerance = 0;
  std::string detail;
  double seconds = 0;
};

struct Suite {
  std::string name;
  std::function<SuiteResult()> run;
};

namespace detail {

template <typename... Args>
std::string format(const char* fmt, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

inline std::vector<HPoint> random_points(int n, std::uint64_t seed, double half_width = 1.0) {
  std::mt19937_64 rng(seed);
  std::vector<HPoint> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) pts.push_back(corpus::random_point(rng, half_width));
  return pts;
}

inline SuiteResult timed(const std::string& name, const std::function<SuiteResult()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.name = name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// Smooth bump vanishing to fourth order on the boundary of [-L, L]^3.
inline double box_bump(const HPoint& p, double L, int power) {
  const double b = (1 - p.x * p.x / (L * L)) * (1 - p.y * p.y / (L * L)) * (1 - p.z * p.z / (L * L));
  return std::pow(std::max(b, 0.0), power);
}

inline DeformationTensor demo_phi() {
  const ScalarField x = ScalarField::x(), y = ScalarField::y();
  return DeformationTensor(0.1 * (x * x + y * y) + 0.05 * kI * x * y);
}

inline double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  return loglog_slope(xs, ys);
}

}  // namespace detail

// kappa, sigma, nu recomputed by their oracles and compared to the frozen values.
inline SuiteResult conventions() {
  return detail::timed("conventions", [] {
    const int kappa = calibrate_commutator_sign();
    const int sigma = calibrate_structure_sign();
    const double nu = calibrate_volume_density();
    const double drift = std::max({std::abs(kappa - kCommutatorSign) * 1.0,
                                   std::abs(sigma - kStructureSign) * 1.0,
                                   std::abs(nu - kVolumeDensity)});
    SuiteResult r;
    r.tolerance = 1e-6;
    r.max_residual = drift;
    r.pass = drift <= r.tolerance;
    r.detail = detail::format("kappa=%+d sigma=%+d nu=%.9f (frozen %+d %+d %.1f)", kappa, sigma, nu,
                              kCommutatorSign, kStructureSign, kVolumeDensity);
    return r;
  });
}

// [Z1, Z1b] = -i kappa T on random fields and points.
inline SuiteResult commutator() {
  return detail::timed("commutator", [] {
    std::mt19937_64 rng(7);
    double worst = 0;
    int samples = 0;
    for (int k = 0; k < 60; ++k) {
      const ScalarField f = corpus::random_field(rng, 3);
      for (int i = 0; i < 20; ++i) {
        const HPoint p = corpus::random_point(rng, 1.0);
        Jet2 j;
        try {
          j = f.jet2(p);
        } catch (const DomainError&) {
          continue;
        }
        worst = std::max(worst, std::abs(commutator_defect(j)) / (1.0 + max_abs(j)));
        ++samples;
      }
    }
    SuiteResult r;
    r.tolerance = 1e-10;
    r.max_residual = worst;
    r.pass = worst <= r.tolerance && samples >= 1000;
    r.detail = detail::format("%d samples, relative defect", samples);
    return r;
  });
}

// d theta^1 - theta^1 ^ theta_1^1 - Theta ^ tau^1 over the corpus, 200 points each.
inline SuiteResult structure_equation() {
  return detail::timed("structure-equation", [] {
    const auto pts = detail::random_points(200, 11);
    double worst = 0;
    const auto fields = corpus::deformation_tensors();
    for (const auto& nf : fields) {
      const CoframeForm2 res = structure_equation_residual(DeformationTensor(nf.field));
      for (const HPoint& p : pts) worst = std::max(worst, res(p).max_abs());
    }
    SuiteResult r;
    r.tolerance = 1e-8;
    r.max_residual = worst;
    r.pass = worst <= r.tolerance && fields.size() >= 10;
    r.detail = detail::format("%zu fields x 200 points", fields.size());
    return r;
  });
}

// Exact-jet curvature against d(connection form) by finite differences.
inline SuiteResult curvature_oracle() {
  return detail::timed("curvature-oracle", [] {
    const std::vector<double> hs{1e-2, 5e-3, 2.5e-3};
    const HPoint p{0.3, -0.2, 0.25};
    double min_order = 1e300, worst_fine = 0;
    int used = 0;
    for (const auto& nf : corpus::deformation_tensors()) {
      const DeformationTensor phi(nf.field);
      const double exact = scalar_curvature(phi, p);
      std::vector<double> errs;
      for (double h : hs) errs.push_back(std::abs(curvature_via_structure_eq(phi, p, h) - exact));
      worst_fine = std::max(worst_fine, errs.back());
      // orders are only meaningful above the round-off floor
      if (errs.front() < 1e-9) continue;
      min_order = std::min(min_order, detail::slope(hs, errs));
      ++used;
    }
    SuiteResult r;
    r.tolerance = 1e-5;
    r.max_residual = worst_fine;
    r.pass = used >= 5 && min_order >= 1.8 && worst_fine <= r.tolerance;
    r.detail = detail::format("%d fields, min order %.3f (>= 1.8), gap at h=2.5e-3", used, min_order);
    return r;
  });
}

// Expanded sublaplacian against the definitional formula with exact jets.
inline SuiteResult sublaplacian_cross() {
  return detail::timed("sublaplacian", [] {
    const auto pts = detail::random_points(8, 12);
    double worst = 0;
    for (const auto& nf : corpus::deformation_tensors()) {
      const DeformationTensor phi(nf.field);
      for (const auto& uf : corpus::real_functions())
        for (const HPoint& p : pts)
          worst = std::max(worst, std::abs(sublaplacian(phi, uf.field, p) -
                                           defn_sublaplacian_oracle(phi, uf.field, p)));
    }
    SuiteResult r;
    r.tolerance = 1e-8;
    r.max_residual = worst;
    r.pass = worst <= r.tolerance;
    r.detail = "expanded vs definitional, corpus x test functions x 8 points";
    return r;
  });
}

// int (Delta_b u) v dV = int <grad u, grad v> dV: order in h and the pinned constant.
inline SuiteResult duality() {
  return detail::timed("duality", [] {
    const ScalarField x = ScalarField::x(), y = ScalarField::y(), z = ScalarField::z();
    const std::vector<std::pair<std::string, DeformationTensor>> cases{
        {"flat", DeformationTensor(ScalarField(0.0))},
        {"demo", detail::demo_phi()},
        {"mixed", DeformationTensor(0.1 * (x - kI * z) * y)},
    };
    auto u = [](const HPoint& p) { return detail::box_bump(p, 1.0, 4) * (1 + 0.3 * p.x - 0.2 * p.y * p.z); };
    auto v = [](const HPoint& p) { return detail::box_bump(p, 1.0, 4) * (1 + 0.5 * p.y + 0.1 * p.x * p.z); };
    double min_order = 1e300, worst_const = 0;
    std::string text;
    for (const auto& [name, phi] : cases) {
      const DualityStudy s = duality_study(phi, u, v);
      min_order = std::min(min_order, s.order);
      worst_const = std::max(worst_const, std::abs(s.constant - 1.0));
      text += detail::format("%s: order %.3f constant %.6f; ", name.c_str(), s.order, s.constant);
    }
    SuiteResult r;
    r.tolerance = 1e-3;
    r.max_residual = worst_const;
    r.pass = min_order >= 1.8 && worst_const <= r.tolerance;
    r.detail = text + "|constant - 1| reported";
    return r;
  });
}

// R vanishes for phi = 0 and for constants.
inline SuiteResult flat_constant() {
  return detail::timed("flat-constant", [] {
    const auto pts = detail::random_points(100, 13);
    const std::vector<cplx> consts{0.0, 0.3, cplx(0.4, 0.3), cplx(-0.2, 0.6), cplx(0, -0.9)};
    double worst = 0;
    for (cplx c : consts) {
      const DeformationTensor phi{ScalarField(c)};
      for (const HPoint& p : pts) worst = std::max(worst, std::abs(scalar_curvature(phi, p)));
    }
    SuiteResult r;
    r.tolerance = 1e-10;
    r.max_residual = worst;
    r.pass = worst <= r.tolerance;
    r.detail = "sup |R| over 5 constants x 100 points";
    return r;
  });
}

// R^{t phi} = -t (phi_11 + conj phi_11) + O(t^2).
inline SuiteResult small_phi() {
  return detail::timed("small-phi", [] {
    const ScalarField x = ScalarField::x(), y = ScalarField::y(), z = ScalarField::z();
    const ScalarField f = 0.2 * z * x + 0.3 * kI * y * y + 0.1 * exp(x) * z * z;
    const auto pts = detail::random_points(20, 14);
    const std::vector<double> ts{0.1, 0.05, 0.025};
    std::vector<double> errs;
    for (double t : ts) {
      const DeformationTensor phi(t * f);
      double m = 0;
      for (const HPoint& p : pts) {
        const Jet2 j = f.jet2(p);
        const cplx lead = t * (j.d2[0][0] + std::conj(j.d2[0][0]));
        m = std::max(m, std::abs(scalar_curvature_complex(phi, p) + lead));
      }
      errs.push_back(m);
    }
    const double s = detail::slope(ts, errs);
    SuiteResult r;
    r.tolerance = 1.8;
    r.max_residual = s;
    r.pass = s >= 1.8;
    r.detail = detail::format("log-log slope of the remainder %.3f (>= 1.8)", s);
    return r;
  });
}

// Lemma-type bounds on rho chi' and rho^2 chi''.
inline SuiteResult cutoff_bounds() {
  return detail::timed("cutoff-bounds", [] {
    double worst = 0;
    bool exact = true;
    for (double d : {0.05, 0.1, 0.2, 0.4}) {
      const CutoffBoundsReport b = verify_cutoff(make_cutoff(d));
      worst = std::max({worst, b.sup_first, b.sup_second});
      exact = exact && b.range_ok && b.plateau_exact && b.support_exact &&
              std::abs(b.mid_value - 0.5) <= 1e-12;
    }
    SuiteResult r;
    r.tolerance = 2.0;
    r.max_residual = worst;
    r.pass = worst <= 2.0 && exact;
    r.detail = detail::format("max sup|rho chi'|/delta, sup|rho^2 chi''|/delta; plateau/support %s",
                              exact ? "exact" : "NOT exact");
    return r;
  });
}

// Glued curvature at the origin and the exact region identities.
inline SuiteResult normalization() {
  return detail::timed("normalization", [] {
    const DeformationTensor phi = detail::demo_phi();
    const double R0 = scalar_curvature(phi, {0, 0, 0});
    double worst = 0;
    std::size_t bad = 0;
    const BoxGrid grid(1.0, 17);
    for (double d : {0.4, 0.2, 0.1, 0.05}) {
      const GluedStructure gs = glue(phi, R0, d);
      worst = std::max(worst, std::abs(glued_curvature(gs, {0, 0, 0}) - R0));
      for (const HPoint& p : study_points(grid, gs.cutoff)) {
        if (gs.outside(p) && (gs.phi_delta(p) != phi(p) || gs.v_delta(p) != cplx(1.0))) ++bad;
        if (gs.in_plateau(p) && (gs.phi_delta(p) != cplx(0.0) || gs.v_delta(p) != gs.u(p))) ++bad;
      }
    }
    SuiteResult r;
    r.tolerance = 1e-8;
    r.max_residual = worst;
    r.pass = worst <= r.tolerance && bad == 0;
    r.detail = detail::format("|R^delta(0) - R(0)|; %zu region-identity violations", bad);
    return r;
  });
}

inline std::vector<Suite> registry() {
  return {
      {"conventions", conventions},
      {"commutator", commutator},
      {"structure-equation", structure_equation},
      {"curvature-oracle", curvature_oracle},
      {"sublaplacian", sublaplacian_cross},
      {"duality", duality},
      {"flat-constant", flat_constant},
      {"small-phi", small_phi},
      {"cutoff-bounds", cutoff_bounds},
      {"normalization", normalization},
  };
}

// ---------------------------------------------------------------------------
// Studies on the demo structure (grid-based, slower).

inline SuiteResult glue_convergence(int n = 33) {
  return detail::timed("glue-convergence", [n] {
    const DeformationTensor phi = detail::demo_phi();
    const double R0 = scalar_curvature(phi, {0, 0, 0});
    const ConvergenceReport rep = convergence_study(phi, R0, {0.4, 0.2, 0.1, 0.05}, BoxGrid(1.0, n));
    SuiteResult r;
    r.tolerance = 0.8;
    r.max_residual = rep.slope;
    r.pass = rep.monotone && rep.slope >= 0.8;
    std::string errs;
    for (const auto& row : rep.rows) errs += detail::format(" %.3e", row.sup_R_err);
    r.detail = detail::format("slope %.3f (>= 0.8), monotone %s, sup R err:", rep.slope,
                              rep.monotone ? "yes" : "no") +
               errs;
    return r;
  });
}

inline SuiteResult gradient_envelope(int n = 33) {
  return detail::timed("gradient-envelope", [n] {
    const DeformationTensor phi = detail::demo_phi();
    const double R0 = scalar_curvature(phi, {0, 0, 0});
    const BoxGrid grid(1.0, n);
    const GridField u = GridField::sample(
        grid, [](const HPoint& p) { return detail::box_bump(p, 1.0, 2) * (1 + 0.3 * p.x + 0.2 * p.y); });
    std::size_t violations = 0;
    bool exact = true;
    std::vector<double> widths, spreads;
    for (double d : {0.4, 0.2, 0.1, 0.05}) {
      const GradientComparison c = gradient_comparison(phi, glue(phi, R0, d), u);
      violations += c.violations;
      exact = exact && c.outside_exact;
      widths.push_back(c.envelope_width);
      spreads.push_back(std::max(c.max_ratio - 1.0, 1.0 - c.min_ratio));
    }
    bool shrinking = true;
    for (std::size_t k = 1; k < widths.size(); ++k)
      shrinking = shrinking && widths[k] - 1.0 <= 1.05 * (widths[k - 1] - 1.0) + 1e-15 &&
                  spreads[k] <= 1.05 * spreads[k - 1] + 1e-15;
    SuiteResult r;
    r.tolerance = 0;
    r.max_residual = static_cast<double>(violations);
    r.pass = violations == 0 && exact && shrinking && widths.back() < widths.front();
    r.detail = detail::format(
        "envelope violations %zu; outside exact %s; width-1: %.3e %.3e %.3e %.3e; ratio spread: "
        "%.3e %.3e %.3e %.3e",
        violations, exact ? "yes" : "no", widths[0] - 1, widths[1] - 1, widths[2] - 1, widths[3] - 1,
        spreads[0], spreads[1], spreads[2], spreads[3]);
    return r;
  });
}

struct LambdaConvergence {
  YamabeReport demo;
  YamabeReport trivial;
  double lambda_coarse = 0;  // demo base at the coarse grid
  double mesh_change = 0;    // |lambda_fine - lambda_coarse| / lambda_fine
  double final_rel_gap = 0;
  bool trivial_exact = false;
};

inline LambdaConvergence lambda_convergence(int coarse = 17, int fine = 33,
                                            const MinimizeOptions& opts = {}) {
  LambdaConvergence out;
  const std::vector<double> deltas{0.4, 0.2, 0.1, 0.05};
  const DeformationTensor phi = detail::demo_phi();
  const double R0 = scalar_curvature(phi, {0, 0, 0});
  out.demo = lambda_comparison_study(phi, R0, deltas, BoxGrid(1.0, fine), opts);
  out.trivial = lambda_comparison_study(DeformationTensor(ScalarField(0.0)), 0.0, deltas,
                                        BoxGrid(1.0, coarse), opts);
  const YamabeProblem coarse_base =
      YamabeProblem::for_structure(phi, ScalarField(1.0), BoxGrid(1.0, coarse));
  out.lambda_coarse = minimize_quotient(coarse_base, opts).lambda;
  out.mesh_change = std::abs(out.demo.lambda_base - out.lambda_coarse) / std::abs(out.demo.lambda_base);
  out.final_rel_gap = out.demo.rows.back().rel_gap;
  out.trivial_exact = true;
  for (const auto& row : out.trivial.rows)
    out.trivial_exact = out.trivial_exact && row.gap == 0.0 && row.curvature_term_diff == 0.0 &&
                        row.gradient_term_diff == 0.0 && row.norm_pinch == 0.0;
  return out;
}

inline SuiteResult lambda_study(int coarse = 17, int fine = 33) {
  return detail::timed("lambda-convergence", [coarse, fine] {
    const LambdaConvergence c = lambda_convergence(coarse, fine);
    bool gaps_decreasing = true;
    for (std::size_t k = 1; k < c.demo.rows.size(); ++k)
      gaps_decreasing = gaps_decreasing && c.demo.rows[k].gap <= 1.05 * c.demo.rows[k - 1].gap + 1e-15;
    SuiteResult r;
    r.tolerance = 0.02;
    r.max_residual = c.mesh_change;
    r.pass = c.final_rel_gap <= 0.05 && c.trivial_exact && c.mesh_change <= 0.02 && gaps_decreasing;
    r.detail = detail::format(
        "relative gap at delta=0.05 %.3e (<= 0.05); trivial family exact %s; gaps decreasing %s; "
        "mesh: lambda %d^3 = %.6f, %d^3 = %.6f, change %.2f%% (<= 2%%)",
        c.final_rel_gap, c.trivial_exact ? "yes" : "no", gaps_decreasing ? "yes" : "no", coarse,
        c.lambda_coarse, fine, c.demo.lambda_base, 100 * c.mesh_change);
    return r;
  });
}

}  // namespace crcalc::verify
