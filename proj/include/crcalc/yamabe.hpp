#pragma once

// Discrete CR Yamabe energy on a box: E(u) = 4 int |grad_b u|^2 dV + int R u^2 dV
// and Q(u) = E(u) / (int u^4 dV)^(1/2) over trial functions vanishing on the
// boundary ring (a Dirichlet proxy for the closed-manifold constant).
//
// The energy is discretised with trilinear finite elements and 2x2x2 Gauss
// quadrature; the structure enters only through per-Gauss-point coefficients.
// Pointwise frame derivatives of grid fields (duality check, gradient
// comparison) use the second-order differences of GridField.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "crcalc/errors.hpp"
#include "crcalc/forms.hpp"
#include "crcalc/gluing.hpp"
#include "crcalc/grid.hpp"
#include "crcalc/phcalc.hpp"

namespace crcalc {

// nu in Theta ^ dTheta = nu dx dy dz; pinned by calibrate_volume_density().
inline constexpr double kVolumeDensity = 2.0;

// int f dV_theta for theta = w^2 Theta by the composite trapezoid rule.
inline double volume_integral(const std::function<double(const HPoint&)>& f, const ScalarField& w,
                              const BoxGrid& grid) {
  return trapezoid(grid, [&](int i, int j, int k) {
    const HPoint p = grid.node(i, j, k);
    const double wv = detail::require_positive(w(p), p);
    const double w2 = wv * wv;
    return f(p) * kVolumeDensity * w2 * w2;
  });
}

// Structure data needed by the energy at one point.
struct PointCoefficients {
  cplx phi{};
  double w = 1.0;
  double R = 0.0;  // curvature of (J_phi, w^2 Theta)
};

inline PointCoefficients sample_structure(const DeformationTensor& phi, const ScalarField& w,
                                          const HPoint& p) {
  const Jet2 jp = phi.jet(p);
  const Jet2 jw = w.jet2(p);
  const double wv = detail::require_positive(jw.val(), p);
  return {jp.val(), wv, conformal_curvature_kernel(jp, jw).real()};
}

using StructureSampler = std::function<PointCoefficients(const HPoint&)>;

struct EnergyTerms {
  double gradient = 0;   // int |grad_b u|^2 dV
  double curvature = 0;  // int R u^2 dV
  double quartic = 0;    // int u^4 dV
  double energy() const { return 4.0 * gradient + curvature; }
};

class YamabeProblem {
 public:
  YamabeProblem(const BoxGrid& grid, const StructureSampler& sampler) : grid_(grid) {
    init_reference();
    const std::size_t ng = gauss_count();
    m11_.resize(ng);
    m12_.resize(ng);
    m22_.resize(ng);
    r_.resize(ng);
    vol_.resize(ng);
    for (std::size_t g = 0; g < ng; ++g) set_coefficients(g, sampler(gauss_point(g)));
    assemble();
  }

  // Copy of `base` with the coefficients recomputed where `changed` holds.
  YamabeProblem(const YamabeProblem& base, const StructureSampler& sampler,
                const std::function<bool(const HPoint&)>& changed)
      : YamabeProblem(base) {
    for (std::size_t g = 0; g < gauss_count(); ++g) {
      const HPoint p = gauss_point(g);
      if (changed(p)) set_coefficients(g, sampler(p));
    }
    assemble();
  }

  static YamabeProblem for_structure(const DeformationTensor& phi, const ScalarField& w,
                                     const BoxGrid& grid) {
    return YamabeProblem(grid, [&](const HPoint& p) { return sample_structure(phi, w, p); });
  }

  // Glued structure; base-structure samples are reused outside B(delta),
  // where the glued pair coincides with (phi, 1) exactly.
  static YamabeProblem for_glued(const YamabeProblem& base, const GluedStructure& gs) {
    return YamabeProblem(
        base, [&](const HPoint& p) { return sample_structure(gs.phi_delta, gs.v_delta, p); },
        [&](const HPoint& p) { return !gs.outside(p); });
  }

  const BoxGrid& grid() const { return grid_; }
  std::size_t gauss_count() const {
    const std::size_t e = grid_.n() - 1;
    return e * e * e * 8;
  }

  HPoint gauss_point(std::size_t g) const {
    const std::size_t e = g / 8;
    const int q = static_cast<int>(g % 8);
    const int ne = grid_.n() - 1;
    const int k = static_cast<int>(e % ne), j = static_cast<int>((e / ne) % ne),
              i = static_cast<int>(e / (static_cast<std::size_t>(ne) * ne));
    const double h = grid_.spacing();
    return {grid_.coord(i) + h * xi_[q][0], grid_.coord(j) + h * xi_[q][1],
            grid_.coord(k) + h * xi_[q][2]};
  }

  // E(u) = u^T A u
  double energy(const std::vector<double>& u) const {
    double e = 0.0;
    for_interior([&](std::size_t node) { e += u[node] * apply_row(node, u); });
    return e;
  }

  // int u^4 dV and, optionally, its gradient.
  double quartic(const std::vector<double>& u, std::vector<double>* grad = nullptr) const {
    if (grad) grad->assign(u.size(), 0.0);
    double total = 0.0;
    const int ne = grid_.n() - 1;
    std::array<double, 8> loc{};
    std::array<std::size_t, 8> idx{};
    std::size_t g = 0;
    for (int i = 0; i < ne; ++i)
      for (int j = 0; j < ne; ++j)
        for (int k = 0; k < ne; ++k) {
          for (int a = 0; a < 8; ++a) {
            idx[a] = grid_.index(i + corner_[a][0], j + corner_[a][1], k + corner_[a][2]);
            loc[a] = u[idx[a]];
          }
          for (int q = 0; q < 8; ++q, ++g) {
            double ug = 0.0;
            for (int a = 0; a < 8; ++a) ug += N_[q][a] * loc[a];
            const double u2 = ug * ug;
            total += vol_[g] * u2 * u2;
            if (grad) {
              const double c = 4.0 * vol_[g] * u2 * ug;
              for (int a = 0; a < 8; ++a) (*grad)[idx[a]] += c * N_[q][a];
            }
          }
        }
    if (grad) zero_ring(*grad);
    return total;
  }

  // Gradient of E: 2 A u (boundary entries zero).
  std::vector<double> energy_gradient(const std::vector<double>& u) const {
    std::vector<double> g(u.size(), 0.0);
    for_interior([&](std::size_t node) { g[node] = 2.0 * apply_row(node, u); });
    return g;
  }

  // The three integrals separately, by direct quadrature.
  EnergyTerms terms(const std::vector<double>& u) const {
    EnergyTerms t;
    const int ne = grid_.n() - 1;
    const double invh = 1.0 / grid_.spacing();
    std::array<double, 8> loc{};
    std::size_t g = 0;
    for (int i = 0; i < ne; ++i)
      for (int j = 0; j < ne; ++j)
        for (int k = 0; k < ne; ++k) {
          for (int a = 0; a < 8; ++a)
            loc[a] = u[grid_.index(i + corner_[a][0], j + corner_[a][1], k + corner_[a][2])];
          for (int q = 0; q < 8; ++q, ++g) {
            const HPoint p = gauss_point(g);
            double ug = 0, ux = 0, uy = 0, uz = 0;
            for (int a = 0; a < 8; ++a) {
              ug += N_[q][a] * loc[a];
              ux += dN_[q][a][0] * invh * loc[a];
              uy += dN_[q][a][1] * invh * loc[a];
              uz += dN_[q][a][2] * invh * loc[a];
            }
            const double e1 = ux + p.y * uz, e2 = uy - p.x * uz;
            t.gradient += m11_[g] * e1 * e1 + 2.0 * m12_[g] * e1 * e2 + m22_[g] * e2 * e2;
            t.curvature += r_[g] * ug * ug;
            t.quartic += vol_[g] * ug * ug * ug * ug;
          }
        }
    return t;
  }

  double quotient(const std::vector<double>& u) const {
    const double n4 = quartic(u);
    if (!(n4 > 0.0)) throw ZeroDenominator("int u^4 dV vanishes; the quotient is undefined");
    return energy(u) / std::sqrt(n4);
  }

  double sup_volume_distortion() const { return sup_vol_distortion_; }

 private:
  void init_reference() {
    const double g0 = 0.5 - 0.5 / std::sqrt(3.0), g1 = 0.5 + 0.5 / std::sqrt(3.0);
    for (int a = 0; a < 8; ++a) corner_[a] = {(a >> 2) & 1, (a >> 1) & 1, a & 1};
    for (int q = 0; q < 8; ++q) {
      xi_[q] = {(q >> 2) & 1 ? g1 : g0, (q >> 1) & 1 ? g1 : g0, q & 1 ? g1 : g0};
      for (int a = 0; a < 8; ++a) {
        double val = 1.0;
        std::array<double, 3> f{}, df{};
        for (int d = 0; d < 3; ++d) {
          f[d] = corner_[a][d] ? xi_[q][d] : 1.0 - xi_[q][d];
          df[d] = corner_[a][d] ? 1.0 : -1.0;
          val *= f[d];
        }
        N_[q][a] = val;
        dN_[q][a] = {df[0] * f[1] * f[2], f[0] * df[1] * f[2], f[0] * f[1] * df[2]};
      }
    }
  }

  void set_coefficients(std::size_t g, const PointCoefficients& c) {
    const double h = grid_.spacing();
    const double weight = h * h * h / 8.0 * kVolumeDensity;
    const double m = std::norm(c.phi);
    const double F2 = 1.0 / (1.0 - m);
    const double w2 = c.w * c.w;
    // |grad_b u|^2 w^4 = w^2 F^2 [(1+m)/2 + Re phi, Im phi; Im phi, (1+m)/2 - Re phi]
    const double s = weight * w2 * F2;
    m11_[g] = s * (0.5 * (1.0 + m) + c.phi.real());
    m12_[g] = s * c.phi.imag();
    m22_[g] = s * (0.5 * (1.0 + m) - c.phi.real());
    r_[g] = weight * w2 * w2 * c.R;
    vol_[g] = weight * w2 * w2;
    sup_vol_distortion_ = std::max(sup_vol_distortion_, std::abs(w2 * w2 - 1.0));
  }

  static int stencil_slot(int di, int dj, int dk) { return (di + 1) * 9 + (dj + 1) * 3 + (dk + 1); }

  void assemble() {
    const int n = grid_.n();
    const int ne = n - 1;
    const double invh = 1.0 / grid_.spacing();
    A_.assign(grid_.size() * 27, 0.0);
    for (int s = 0; s < 27; ++s) {
      const int di = s / 9 - 1, dj = (s / 3) % 3 - 1, dk = s % 3 - 1;
      offset_[s] = (static_cast<std::ptrdiff_t>(di) * n + dj) * n + dk;
    }
    std::size_t g = 0;
    for (int i = 0; i < ne; ++i)
      for (int j = 0; j < ne; ++j)
        for (int k = 0; k < ne; ++k) {
          double K[8][8] = {};
          for (int q = 0; q < 8; ++q, ++g) {
            const HPoint p = gauss_point(g);
            double e1[8], e2[8];
            for (int a = 0; a < 8; ++a) {
              e1[a] = (dN_[q][a][0] + p.y * dN_[q][a][2]) * invh;
              e2[a] = (dN_[q][a][1] - p.x * dN_[q][a][2]) * invh;
            }
            for (int a = 0; a < 8; ++a)
              for (int b = 0; b < 8; ++b)
                K[a][b] += 4.0 * (m11_[g] * e1[a] * e1[b] + m12_[g] * (e1[a] * e2[b] + e2[a] * e1[b]) +
                                  m22_[g] * e2[a] * e2[b]) +
                           r_[g] * N_[q][a] * N_[q][b];
          }
          for (int a = 0; a < 8; ++a) {
            const std::size_t row =
                grid_.index(i + corner_[a][0], j + corner_[a][1], k + corner_[a][2]);
            for (int b = 0; b < 8; ++b) {
              const int slot = stencil_slot(corner_[b][0] - corner_[a][0],
                                            corner_[b][1] - corner_[a][1],
                                            corner_[b][2] - corner_[a][2]);
              A_[row * 27 + slot] += K[a][b];
            }
          }
        }
  }

  double apply_row(std::size_t node, const std::vector<double>& u) const {
    const double* a = &A_[node * 27];
    double s = 0.0;
    for (int m = 0; m < 27; ++m) s += a[m] * u[node + offset_[m]];
    return s;
  }

  template <typename Fn>
  void for_interior(Fn&& fn) const {
    const int n = grid_.n();
    for (int i = 1; i < n - 1; ++i)
      for (int j = 1; j < n - 1; ++j)
        for (int k = 1; k < n - 1; ++k) fn(grid_.index(i, j, k));
  }

  void zero_ring(std::vector<double>& v) const {
    const int n = grid_.n();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (grid_.on_boundary(i, j, k)) v[grid_.index(i, j, k)] = 0.0;
  }

  BoxGrid grid_;
  std::array<std::array<int, 3>, 8> corner_{};
  std::array<std::array<double, 3>, 8> xi_{};
  std::array<std::array<double, 8>, 8> N_{};                  // N_[q][a]
  std::array<std::array<std::array<double, 3>, 8>, 8> dN_{};  // reference gradients
  std::vector<double> m11_, m12_, m22_, r_, vol_;
  std::vector<double> A_;
  std::array<std::ptrdiff_t, 27> offset_{};
  double sup_vol_distortion_ = 0.0;
};

inline double energy(const DeformationTensor& phi, const ScalarField& w, const GridField& u) {
  return YamabeProblem::for_structure(phi, w, u.grid()).energy(u.values());
}

inline double yamabe_quotient(const DeformationTensor& phi, const ScalarField& w,
                              const GridField& u) {
  return YamabeProblem::for_structure(phi, w, u.grid()).quotient(u.values());
}

// ---------------------------------------------------------------------------
// Minimisation

struct MinimizeOptions {
  double tol = 1e-8;
  int max_iter = 5000;
  std::uint64_t seed = 1;
  double noise = 0.05;   // relative perturbation of the initial bump
  double armijo = 1e-4;
};

struct MinimizeResult {
  double lambda = 0;
  GridField u;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;  // Q after each accepted step (starts with the initial Q)
};

// Positive seeded bump prod cos(pi x / 2L) (1 + noise * U(-1, 1)).
inline GridField initial_bump(const BoxGrid& grid, std::uint64_t seed, double noise) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double k = M_PI / (2.0 * grid.half_width());
  std::vector<double> v(grid.size());
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const HPoint p = grid.node(idx);
    v[idx] = std::cos(k * p.x) * std::cos(k * p.y) * std::cos(k * p.z) * (1.0 + noise * U(rng));
  }
  return GridField(grid, std::move(v));
}

namespace detail {
inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
}  // namespace detail

// Projected gradient descent on the sphere int u^4 dV = 1 with a
// Barzilai-Borwein trial step and Armijo backtracking. Accepted steps never
// increase Q. Stops when the relative decrease of Q drops below opts.tol.
inline MinimizeResult minimize_quotient(const YamabeProblem& prob, const MinimizeOptions& opts = {},
                                        const std::optional<GridField>& start = std::nullopt) {
  using detail::dot;
  const BoxGrid& grid = prob.grid();
  std::vector<double> u = start ? start->values() : initial_bump(grid, opts.seed, opts.noise).values();
  auto normalise = [&](std::vector<double>& v) {
    const double n4 = prob.quartic(v);
    if (!(n4 > 0.0)) throw ZeroDenominator("int u^4 dV vanishes during minimisation");
    const double s = std::pow(n4, -0.25);
    for (double& x : v) x *= s;
  };
  normalise(u);
  // with int u^4 = 1: grad Q = grad E - (E/2) grad N
  auto gradient = [&](const std::vector<double>& v, double e) {
    std::vector<double> gq = prob.energy_gradient(v), gn;
    prob.quartic(v, &gn);
    for (std::size_t i = 0; i < gq.size(); ++i) gq[i] -= 0.5 * e * gn[i];
    return gq;
  };

  MinimizeResult res{0.0, GridField(grid), 0, false, {}};
  double q = prob.energy(u);
  std::vector<double> g = gradient(u, q);
  res.history.push_back(q);
  std::vector<double> prev_u, prev_g;
  double step = 1e-3;
  std::vector<double> trial(u.size());
  for (int it = 0; it < opts.max_iter; ++it) {
    const double gg = dot(g, g);
    if (gg == 0.0) {
      res.converged = true;
      break;
    }
    if (!prev_u.empty()) {
      double ss = 0, sy = 0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double s = u[i] - prev_u[i], y = g[i] - prev_g[i];
        ss += s * s;
        sy += s * y;
      }
      if (sy > 0) step = ss / sy;
    }
    double t = step, qn = q;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt, t *= 0.5) {
      for (std::size_t i = 0; i < u.size(); ++i) trial[i] = u[i] - t * g[i];
      const double n4 = prob.quartic(trial);
      if (!(n4 > 0.0)) continue;
      qn = prob.energy(trial) / std::sqrt(n4);
      if (qn <= q - opts.armijo * t * gg) {
        accepted = true;
        break;
      }
    }
    res.iterations = it + 1;
    if (!accepted) {
      res.converged = true;  // no descent direction left at round-off level
      break;
    }
    prev_u = u;
    prev_g = g;
    u = trial;
    normalise(u);
    const double rel = (q - qn) / std::abs(q);
    q = prob.energy(u);
    g = gradient(u, q);
    res.history.push_back(q);
    if (rel < opts.tol) {
      res.converged = true;
      break;
    }
  }
  double sum = 0.0;
  for (double x : u) sum += x;
  if (sum < 0)
    for (double& x : u) x = -x;
  res.lambda = q;
  res.u = GridField(grid, std::move(u));
  return res;
}

// ---------------------------------------------------------------------------
// Duality: int (Delta_b u) v dV against int <grad u, grad v> dV

struct DualityResult {
  double lhs = 0;  // int (Delta_b u) v dV
  double rhs = 0;  // int <grad_b u, grad_b v> dV
  double defect() const { return std::abs(lhs - rhs); }
  double ratio() const { return lhs / rhs; }
};

inline DualityResult integration_by_parts_check(const DeformationTensor& phi, const GridField& u,
                                                const GridField& v) {
  const BoxGrid& grid = u.grid();
  DualityResult r;
  r.lhs = trapezoid(grid, [&](int i, int j, int k) {
    if (grid.on_boundary(i, j, k)) return 0.0;  // v vanishes there
    const Jet2 jp = phi.jet(grid.node(i, j, k));
    return sublaplacian_kernel(jp, u.jet(i, j, k)).real() * v(i, j, k) * kVolumeDensity;
  });
  r.rhs = trapezoid(grid, [&](int i, int j, int k) {
    const cplx f = phi(grid.node(i, j, k));
    const Jet2 ju = u.jet(i, j, k), jv = v.jet(i, j, k);
    return grad_inner_kernel(f, ju.j1.d_z1, ju.j1.d_z1b, jv.j1.d_z1, jv.j1.d_z1b, 1.0).real() *
           kVolumeDensity;
  });
  return r;
}

struct DualityStudy {
  std::vector<int> sizes;
  std::vector<double> spacing, defects, ratios;
  double order = 0;     // from the two finest grids
  double constant = 0;  // Richardson-extrapolated lhs/rhs
};

inline DualityStudy duality_study(const DeformationTensor& phi,
                                  const std::function<double(const HPoint&)>& u,
                                  const std::function<double(const HPoint&)>& v,
                                  double half_width = 1.0, std::vector<int> sizes = {17, 33, 65}) {
  DualityStudy s;
  s.sizes = sizes;
  for (int n : sizes) {
    const BoxGrid grid(half_width, n);
    const DualityResult r =
        integration_by_parts_check(phi, GridField::sample(grid, u), GridField::sample(grid, v));
    s.spacing.push_back(grid.spacing());
    s.defects.push_back(r.defect());
    s.ratios.push_back(r.ratio());
  }
  const std::size_t m = s.defects.size();
  if (m >= 2) {
    s.order = std::log(s.defects[m - 2] / s.defects[m - 1]) /
              std::log(s.spacing[m - 2] / s.spacing[m - 1]);
    const double f = std::pow(s.spacing[m - 2] / s.spacing[m - 1], 2.0);
    s.constant = s.ratios[m - 1] + (s.ratios[m - 1] - s.ratios[m - 2]) / (f - 1.0);
  } else if (m == 1) {
    s.constant = s.ratios[0];
  }
  return s;
}

// ---------------------------------------------------------------------------
// Gradient comparison between (phi, Theta) and the glued (phi^delta, v^2 Theta)

struct GradientComparison {
  double max_ratio = 1.0, min_ratio = 1.0;  // |grad u|^2 / |grad^delta u|^2_delta
  double envelope_upper = 1.0, envelope_lower = 1.0;  // extremes of the pointwise envelope
  double envelope_width = 1.0;  // max upper/lower over points where the structures differ
  std::size_t violations = 0;   // points outside their envelope
  std::size_t skipped = 0;      // zero denominator
  bool outside_exact = true;    // ratio == 1 exactly outside B(delta)
};

inline GradientComparison gradient_comparison(const DeformationTensor& phi, const GluedStructure& gs,
                                              const GridField& u) {
  const BoxGrid& grid = u.grid();
  GradientComparison c;
  c.max_ratio = -std::numeric_limits<double>::infinity();
  c.min_ratio = std::numeric_limits<double>::infinity();
  c.envelope_upper = -std::numeric_limits<double>::infinity();
  c.envelope_lower = std::numeric_limits<double>::infinity();
  const int n = grid.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const HPoint p = grid.node(i, j, k);
        const Jet2 ju = u.jet(i, j, k);
        const cplx f = phi(p), fd = gs.phi_delta(p);
        const double v = gs.v_delta(p).real();
        const double a = grad_norm_kernel(f, ju.j1.d_z1, ju.j1.d_z1b, 1.0).real();
        const double b = grad_norm_kernel(fd, ju.j1.d_z1, ju.j1.d_z1b, v).real();
        // envelope from 2F^2|u_1b|^2 (1 -+ |phi|)^2 <= |grad u|^2 <= 2F^2|u_1b|^2 (1 +- |phi|)^2
        const double F2 = 1.0 / (1.0 - std::norm(f)), Fd2 = 1.0 / (1.0 - std::norm(fd));
        const double af = std::abs(f), ad = std::abs(fd);
        const double upper = v * v * F2 * (1 + af) * (1 + af) / (Fd2 * (1 - ad) * (1 - ad));
        const double lower = v * v * F2 * (1 - af) * (1 - af) / (Fd2 * (1 + ad) * (1 + ad));
        c.envelope_upper = std::max(c.envelope_upper, upper);
        c.envelope_lower = std::min(c.envelope_lower, lower);
        if (!gs.outside(p)) c.envelope_width = std::max(c.envelope_width, upper / lower);
        if (!(b > 0.0)) {
          ++c.skipped;
          continue;
        }
        const double ratio = a / b;
        c.max_ratio = std::max(c.max_ratio, ratio);
        c.min_ratio = std::min(c.min_ratio, ratio);
        const double slack = 1e-12;
        if (ratio > upper * (1 + slack) || ratio < lower * (1 - slack)) ++c.violations;
        if (gs.outside(p) && ratio != 1.0) c.outside_exact = false;
      }
  if (c.max_ratio < c.min_ratio) c.max_ratio = c.min_ratio = 1.0;
  return c;
}

// ---------------------------------------------------------------------------
// lambda comparison

struct YamabeRow {
  double delta = 0;
  double lambda_delta = 0;
  double lambda_base = 0;
  double gap = 0;       // |lambda_delta - lambda_base|
  double rel_gap = 0;   // gap / |lambda_base|
  int iterations = 0;
  bool converged = false;
  // integrand comparisons on the base near-minimiser u0 (int u0^4 dV = 1)
  double curvature_term_diff = 0;  // |int R u0^2 dV - int R^delta u0^2 dV^delta|
  double gradient_term_diff = 0;   // |int |grad u0|^2 dV - int |grad^delta u0|^2 dV^delta|
  double energy_ratio = 1;         // E_{theta^delta}(u0) / E_theta(u0)
  double norm_pinch = 0;           // |int u0^4 dV^delta - int u0^4 dV|
  double pinch_bound = 0;          // sup |(v^delta)^4 - 1| int u0^4 dV
};

struct YamabeReport {
  double lambda_base = 0;
  int base_iterations = 0;
  bool base_converged = false;
  std::vector<YamabeRow> rows;
  bool differences_shrink = true;  // each comparison column non-increasing as delta shrinks (5%)
  bool pinch_holds = true;
};

inline YamabeReport lambda_comparison_study(const DeformationTensor& phi, double R0,
                                            const std::vector<double>& deltas, const BoxGrid& grid,
                                            const MinimizeOptions& opts = {}) {
  require_decreasing(deltas);
  YamabeReport rep;
  const YamabeProblem base = YamabeProblem::for_structure(phi, ScalarField(1.0), grid);
  const MinimizeResult b = minimize_quotient(base, opts);
  rep.lambda_base = b.lambda;
  rep.base_iterations = b.iterations;
  rep.base_converged = b.converged;
  const std::vector<double>& u0 = b.u.values();
  const EnergyTerms t0 = base.terms(u0);
  for (double delta : deltas) {
    const GluedStructure gs = glue(phi, R0, delta);
    const YamabeProblem glued = YamabeProblem::for_glued(base, gs);
    const MinimizeResult m = minimize_quotient(glued, opts);
    const EnergyTerms td = glued.terms(u0);
    YamabeRow row;
    row.delta = delta;
    row.lambda_delta = m.lambda;
    row.lambda_base = b.lambda;
    row.gap = std::abs(m.lambda - b.lambda);
    row.rel_gap = row.gap / std::abs(b.lambda);
    row.iterations = m.iterations;
    row.converged = m.converged;
    row.curvature_term_diff = std::abs(t0.curvature - td.curvature);
    row.gradient_term_diff = std::abs(t0.gradient - td.gradient);
    row.energy_ratio = td.energy() / t0.energy();
    row.norm_pinch = std::abs(td.quartic - t0.quartic);
    row.pinch_bound = glued.sup_volume_distortion() * t0.quartic;
    if (row.norm_pinch > row.pinch_bound * (1 + 1e-12) + 1e-15) rep.pinch_holds = false;
    rep.rows.push_back(row);
  }
  auto shrinking = [&](double YamabeRow::*m) {
    for (std::size_t k = 1; k < rep.rows.size(); ++k)
      if (rep.rows[k].*m > 1.05 * (rep.rows[k - 1].*m) + 1e-15) return false;
    return true;
  };
  rep.differences_shrink = shrinking(&YamabeRow::curvature_term_diff) &&
                           shrinking(&YamabeRow::gradient_term_diff) &&
                           shrinking(&YamabeRow::norm_pinch);
  return rep;
}

}  // namespace crcalc
