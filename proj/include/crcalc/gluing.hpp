#pragma once

// Deformation of a structure (phi, Theta) near the origin into the spherical
// one: phi^delta = (1 - chi) phi and (v^delta)^2 = 1 + chi (u^2 - 1), where u
// is the matching conformal factor with R^{0, u^2 Theta}(0) = R^{phi,Theta}(0).

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "crcalc/cutoff.hpp"
#include "crcalc/errors.hpp"
#include "crcalc/grid.hpp"
#include "crcalc/phcalc.hpp"

namespace crcalc {

// u = exp(a (x^2 + y^2)) with a = -R0/8, so R^{0, u^2 Theta}(0) = -8a = R0.
inline ScalarField matching_factor(double R0) {
  const double a = -R0 / 8.0;
  if (a == 0.0) return ScalarField(1.0);
  const ScalarField x = ScalarField::x(), y = ScalarField::y();
  return exp(a * (x * x + y * y));
}

struct NormalizationReport {
  static constexpr double kTolerance = 1e-8;
  std::vector<std::pair<std::string, double>> entries;

  bool pass() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const auto& e) { return e.second <= kTolerance; });
  }
  std::string violations() const {
    std::string s;
    for (const auto& [name, v] : entries)
      if (!(v <= kTolerance)) s += (s.empty() ? "" : ", ") + name + " = " + std::to_string(v);
    return s;
  }
};

// Evaluates the normalization of the chart and of the matching factor at 0.
inline NormalizationReport check_normalization(const DeformationTensor& phi, const ScalarField& u,
                                               double R0) {
  const HPoint o{0, 0, 0};
  NormalizationReport r;
  const Jet2 jp = phi.phi().jet2(o);
  const Jet2 ju = u.jet2(o);
  const double R_phi = curvature_kernel(jp).real();
  const double R_u = conformal_curvature_kernel(Jet2::constant(0.0), ju).real();
  r.entries = {
      {"|R^{0,u}(0) - R^{phi}(0)|", std::abs(R_u - R_phi)},
      {"|R0 - R^{phi}(0)|", std::abs(R0 - R_phi)},
      {"|phi(0)|", std::abs(jp.val())},
      {"|phi_1(0)|", std::abs(jp.j1.d_z1)},
      {"|phi_1b(0)|", std::abs(jp.j1.d_z1b)},
      {"|u(0) - 1|", std::abs(ju.val() - 1.0)},
      {"|u_1(0)|", std::abs(ju.j1.d_z1)},
      {"|u_1b(0)|", std::abs(ju.j1.d_z1b)},
  };
  return r;
}

struct GluedStructure {
  DeformationTensor base_phi;
  double R0 = 0;
  ScalarField u;
  CutoffProfile cutoff;
  ScalarField chi;
  DeformationTensor phi_delta;
  ScalarField v_delta_sq;
  ScalarField v_delta;

  double delta() const { return cutoff.delta; }
  // rho >= delta: the glued pair equals (phi, 1) there
  bool outside(const HPoint& p) const { return koranyi_gauge(p).rho >= cutoff.delta; }
  // rho <= inner: the glued pair equals (0, u) there
  bool in_plateau(const HPoint& p) const { return koranyi_gauge(p).rho <= cutoff.inner; }
};

inline GluedStructure glue(const DeformationTensor& phi, double R0, const CutoffProfile& cutoff) {
  ScalarField u = matching_factor(R0);
  const NormalizationReport rep = check_normalization(phi, u, R0);
  if (!rep.pass()) throw NormalizationError("structure is not normalized at 0: " + rep.violations());
  const ScalarField chi = cutoff.field();
  // lerp keeps the plateau and exterior values exact
  DeformationTensor phi_delta(lerp(chi, phi.phi(), ScalarField(0.0)), phi.probe_set());
  ScalarField v_sq = lerp(chi, ScalarField(1.0), u * u);
  ScalarField v = sqrt(v_sq);
  for (const auto& p : phi.probe_set()) detail::require_positive(v(p), p);
  return {phi, R0, std::move(u), cutoff, chi, std::move(phi_delta), std::move(v_sq), std::move(v)};
}

inline GluedStructure glue(const DeformationTensor& phi, double R0, double delta) {
  return glue(phi, R0, make_cutoff(delta));
}

// R^{phi^delta, (v^delta)^2 Theta}(p) by the conformal law.
inline double glued_curvature(const GluedStructure& gs, const HPoint& p) {
  const Jet2 jv = gs.v_delta.jet2(p);
  detail::require_positive(jv.val(), p);
  return conformal_curvature_kernel(gs.phi_delta.jet(p), jv).real();
}

// Heisenberg dilations (r x, r y, r^2 z) of the lattice points of the unit
// gauge ball, for radii r log-spaced over [inner, delta]. The cutoff changes
// on scales far below any grid spacing (around sqrt(inner * delta)), so the
// studies sample every scale of the annulus explicitly.
inline std::vector<HPoint> dilated_probes(const CutoffProfile& c, int scales = 16,
                                          int per_axis = 7) {
  std::vector<HPoint> ball;
  for (int i = 0; i < per_axis; ++i)
    for (int j = 0; j < per_axis; ++j)
      for (int k = 0; k < per_axis; ++k) {
        auto t = [&](int m) { return -1.0 + 2.0 * m / (per_axis - 1); };
        const HPoint q{t(i), t(j), t(k)};
        if (koranyi_gauge(q).rho <= 1.0) ball.push_back(q);
      }
  std::vector<HPoint> pts;
  const double lo = std::log(c.inner), hi = std::log(c.delta);
  for (int m = 0; m < scales; ++m) {
    const double r = std::exp(lo + (hi - lo) * m / (scales - 1));
    for (const HPoint& q : ball) pts.push_back(dilate(q, r));
  }
  return pts;
}

inline std::vector<HPoint> study_points(const BoxGrid& grid, const CutoffProfile& c) {
  std::vector<HPoint> pts = grid.nodes();
  const std::vector<HPoint> extra = dilated_probes(c);
  pts.insert(pts.end(), extra.begin(), extra.end());
  return pts;
}

// Least-squares slope of log(err) against log(delta); NaN when fewer than two
// positive errors are available.
inline double loglog_slope(const std::vector<double>& deltas, const std::vector<double>& errs) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    if (!(errs[k] > 0.0)) continue;
    const double lx = std::log(deltas[k]), ly = std::log(errs[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return std::numeric_limits<double>::quiet_NaN();
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

struct ConvergenceRow {
  double delta = 0;
  double sup_phi_err = 0;
  double sup_v_err = 0;
  double sup_R_err = 0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  double slope = 0;         // curvature error vs delta
  bool monotone = true;     // errors non-increasing as delta shrinks, 5% allowance
  std::size_t points = 0;   // evaluation points per delta

  std::vector<double> column(double ConvergenceRow::*m) const {
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(r.*m);
    return out;
  }
};

inline void require_decreasing(const std::vector<double>& deltas) {
  if (deltas.empty()) throw ConfigError("deltas", "at least one delta is required");
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    if (!(deltas[k] > 0.0 && deltas[k] <= 1.0))
      throw ConfigError("deltas", "each delta must lie in (0, 1]");
    if (k > 0 && !(deltas[k] < deltas[k - 1]))
      throw ConfigError("deltas", "deltas must be strictly decreasing");
  }
}

inline ConvergenceReport convergence_study(const DeformationTensor& phi, double R0,
                                           const std::vector<double>& deltas, const BoxGrid& grid) {
  require_decreasing(deltas);
  ConvergenceReport rep;
  for (double delta : deltas) {
    const GluedStructure gs = glue(phi, R0, delta);
    const std::vector<HPoint> pts = study_points(grid, gs.cutoff);
    ConvergenceRow row{delta, 0, 0, 0};
    for (const HPoint& p : pts) {
      const Jet2 jp = phi.jet(p);
      const Jet2 jd = gs.phi_delta.jet(p);
      const Jet2 jv = gs.v_delta.jet2(p);
      row.sup_phi_err = std::max(row.sup_phi_err, std::abs(jd.val() - jp.val()));
      row.sup_v_err = std::max(row.sup_v_err, std::abs(jv.val() - 1.0));
      const double R = curvature_kernel(jp).real();
      const double Rd = conformal_curvature_kernel(jd, jv).real();
      row.sup_R_err = std::max(row.sup_R_err, std::abs(Rd - R));
    }
    rep.points = pts.size();
    rep.rows.push_back(row);
  }
  for (std::size_t k = 1; k < rep.rows.size(); ++k)
    if (rep.rows[k].sup_R_err > 1.05 * rep.rows[k - 1].sup_R_err) rep.monotone = false;
  rep.slope = loglog_slope(deltas, rep.column(&ConvergenceRow::sup_R_err));
  return rep;
}

// ---------------------------------------------------------------------------
// Uniform bounds

struct UniformBoundsRow {
  double delta = 0;
  double sup_F = 0;
  double sup_v = 0;
  double inf_v = 0;
  double sup_phi_dd = 0;  // max over a, b of |phi^delta_ab|
  double sup_v_d = 0;     // max over a of |(v^delta)_a|
  double sup_v_dd = 0;    // max over a, b of |(v^delta)_ab|
  bool F_envelope = true; // 1 <= F^delta <= sup F
  bool v_envelope = true; // u^2 - |u^2 - 1| <= (v^delta)^2 <= u^2 + |u^2 - 1|
};

enum class ColumnStatus { Bounded, Flagged, Growing };

struct UniformBoundsReport {
  std::vector<UniformBoundsRow> rows;
  double sup_F_base = 0;
  // per column: sup_F, sup_v, inf_v, sup_phi_dd, sup_v_d, sup_v_dd
  std::vector<std::pair<std::string, ColumnStatus>> columns;

  bool pass() const {
    for (const auto& r : rows)
      if (!r.F_envelope || !r.v_envelope) return false;
    for (const auto& c : columns)
      if (c.second == ColumnStatus::Growing) return false;
    return true;
  }
};

namespace detail {

// Bounded: family max within 10% of the median. Otherwise flagged when the
// growth as delta -> 0 is slower than delta^-0.1, growing beyond that.
inline ColumnStatus classify_column(const std::vector<double>& deltas, std::vector<double> col) {
  std::vector<double> sorted = col;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  const double mx = sorted.back();
  if (mx <= 1.1 * median || mx == 0.0) return ColumnStatus::Bounded;
  const double slope = loglog_slope(deltas, col);
  if (std::isnan(slope) || slope >= -0.1) return ColumnStatus::Flagged;
  return ColumnStatus::Growing;
}

}  // namespace detail

inline UniformBoundsReport uniform_bounds_report(const std::vector<GluedStructure>& family,
                                                 const BoxGrid& grid) {
  UniformBoundsReport rep;
  if (family.empty()) return rep;
  std::vector<double> deltas;
  const DeformationTensor& phi = family.front().base_phi;
  for (const HPoint& p : grid.nodes())
    rep.sup_F_base = std::max(rep.sup_F_base, 1.0 / std::sqrt(1.0 - std::norm(phi(p))));
  for (const GluedStructure& gs : family) {
    UniformBoundsRow row;
    row.delta = gs.delta();
    row.inf_v = std::numeric_limits<double>::infinity();
    for (const HPoint& p : study_points(grid, gs.cutoff)) {
      const Jet2 jd = gs.phi_delta.jet(p);
      const Jet2 jv = gs.v_delta.jet2(p);
      const double F = 1.0 / std::sqrt(1.0 - std::norm(jd.val()));
      const double Fb = 1.0 / std::sqrt(1.0 - std::norm(phi(p)));
      row.sup_F = std::max(row.sup_F, F);
      if (F < 1.0 || F > Fb * (1.0 + 1e-14)) row.F_envelope = false;
      const double v = jv.val().real();
      row.sup_v = std::max(row.sup_v, v);
      row.inf_v = std::min(row.inf_v, v);
      const double u2 = std::norm(gs.u(p));
      const double slack = 1e-14 * (1.0 + u2);
      if (v * v < u2 - std::abs(u2 - 1.0) - slack || v * v > u2 + std::abs(u2 - 1.0) + slack)
        row.v_envelope = false;
      row.sup_v_d = std::max({row.sup_v_d, std::abs(jv.j1.d_z1), std::abs(jv.j1.d_z1b)});
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          row.sup_phi_dd = std::max(row.sup_phi_dd, std::abs(jd.d2[a][b]));
          row.sup_v_dd = std::max(row.sup_v_dd, std::abs(jv.d2[a][b]));
        }
    }
    deltas.push_back(row.delta);
    rep.rows.push_back(row);
  }
  auto col = [&](double UniformBoundsRow::*m) {
    std::vector<double> out;
    for (const auto& r : rep.rows) out.push_back(r.*m);
    return out;
  };
  const std::pair<const char*, double UniformBoundsRow::*> names[] = {
      {"sup_F", &UniformBoundsRow::sup_F},           {"sup_v", &UniformBoundsRow::sup_v},
      {"inf_v", &UniformBoundsRow::inf_v},           {"sup_phi_dd", &UniformBoundsRow::sup_phi_dd},
      {"sup_v_d", &UniformBoundsRow::sup_v_d},       {"sup_v_dd", &UniformBoundsRow::sup_v_dd}};
  for (const auto& [name, m] : names)
    rep.columns.emplace_back(name, detail::classify_column(deltas, col(m)));
  return rep;
}

}  // namespace crcalc
