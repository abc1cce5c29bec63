#pragma once

// Pseudohermitian calculus of a structure (J_phi, w^2 Theta) on the
// Heisenberg chart: F, the unitary coframe, torsion, connection form,
// Tanaka-Webster curvature, sublaplacian, gradient norm and the conformal law.
//
// Two independent routes are provided. The "kernel" functions transcribe the
// closed formulas pointwise from a Jet2 of phi; the field-level forms
// (connection_form, unitary_coframe, ...) feed exterior_d / fd_exterior_d and
// the definitional sublaplacian, which serve as oracles for the kernels.

#include <cmath>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "crcalc/errors.hpp"
#include "crcalc/field.hpp"
#include "crcalc/forms.hpp"
#include "crcalc/hgroup.hpp"

namespace crcalc {

// 4^3 lattice over [-L, L]^3 plus the origin.
inline std::vector<HPoint> default_probes(double half_width = 1.0) {
  std::vector<HPoint> pts;
  pts.push_back({0.0, 0.0, 0.0});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        auto c = [&](int m) { return -half_width + 2.0 * half_width * m / 3.0; };
        pts.push_back({c(i), c(j), c(k)});
      }
  return pts;
}

namespace detail {

inline std::string point_text(const HPoint& p) {
  std::ostringstream os;
  os << "(" << p.x << ", " << p.y << ", " << p.z << ")";
  return os.str();
}

// a -> a^alpha that refuses a <= 0. Applied to 1 - |phi|^2 it enforces
// |phi| < 1 at every evaluation.
class PositivePower final : public UnaryFunction {
 public:
  PositivePower(double alpha, std::string name) : alpha_(alpha), name_(std::move(name)) {}
  std::string name() const override { return name_; }
  void derivatives(cplx a, int order, cplx* out) const override {
    if (!(a.real() > 0.0))
      throw DomainError("|phi| >= 1: 1 - |phi|^2 = " + std::to_string(a.real()) + " in " + name_);
    pow_derivatives(cplx(a.real(), 0.0), alpha_, order, out);
  }

 private:
  double alpha_;
  std::string name_;
};

inline void require_admissible(cplx phi, const HPoint& p) {
  if (!(std::norm(phi) < 1.0))
    throw DomainError("|phi| = " + std::to_string(std::abs(phi)) + " >= 1 at " + point_text(p));
}

inline double require_positive(cplx w, const HPoint& p) {
  if (!(w.real() > 0.0) || std::abs(w.imag()) > 1e-12 * std::abs(w.real()))
    throw PositivityError("conformal factor w = " + std::to_string(w.real()) +
                          " is not positive at " + point_text(p));
  return w.real();
}

}  // namespace detail

class DeformationTensor {
 public:
  // Checks |phi| < 1 on the probe set; throws DomainError otherwise.
  explicit DeformationTensor(ScalarField phi, std::vector<HPoint> probes = default_probes())
      : phi_(std::move(phi)), probes_(std::move(probes)) {
    for (const auto& p : probes_) detail::require_admissible(phi_(p), p);
  }

  const ScalarField& phi() const { return phi_; }
  const std::vector<HPoint>& probe_set() const { return probes_; }
  cplx operator()(const HPoint& p) const { return phi_(p); }

  // Jet of phi with the |phi| < 1 guard applied at p.
  Jet2 jet(const HPoint& p) const {
    Jet2 j = phi_.jet2(p);
    detail::require_admissible(j.val(), p);
    return j;
  }

 private:
  ScalarField phi_;
  std::vector<HPoint> probes_;
};

struct PHStructure {
  DeformationTensor phi;
  ScalarField w;

  PHStructure(DeformationTensor phi_in, ScalarField w_in)
      : phi(std::move(phi_in)), w(std::move(w_in)) {
    for (const auto& p : phi.probe_set()) detail::require_positive(w(p), p);
  }
};

// ---------------------------------------------------------------------------
// Field-level objects

// G = 1 / (1 - |phi|^2), guarded.
inline ScalarField gfac(const DeformationTensor& phi) {
  static const auto inv = std::make_shared<detail::PositivePower>(-1.0, "inv");
  const ScalarField& f = phi.phi();
  return compose(inv, ScalarField(1.0) - f * conj(f));
}

// F = (1 - |phi|^2)^(-1/2), guarded.
inline ScalarField fcal(const DeformationTensor& phi) {
  static const auto inv_sqrt = std::make_shared<detail::PositivePower>(-0.5, "inv_sqrt");
  const ScalarField& f = phi.phi();
  return compose(inv_sqrt, ScalarField(1.0) - f * conj(f));
}

// theta1 = F (theta1o - phi theta1bo)
inline CoframeForm1 unitary_coframe(const DeformationTensor& phi) {
  const ScalarField F = fcal(phi);
  return {ScalarField(0.0), F, -(F * phi.phi())};
}

// A^1_1b = -phi_0 / (1 - |phi|^2)
inline ScalarField torsion_field(const DeformationTensor& phi) {
  return -(d0(phi.phi()) * gfac(phi));
}

// tau^1 = A^1_1b theta^1b, with theta^1b = F (theta1bo - conj(phi) theta1o)
inline CoframeForm1 torsion_form(const DeformationTensor& phi) {
  const ScalarField F = fcal(phi);
  const ScalarField A = torsion_field(phi);
  return {ScalarField(0.0), A * (-(F * conj(phi.phi()))), A * F};
}

// theta_1^1 transcribed term by term.
inline CoframeForm1 connection_form(const DeformationTensor& phi) {
  const ScalarField& f = phi.phi();
  const ScalarField fb = conj(f);
  const ScalarField F = fcal(phi);
  const ScalarField G = gfac(phi);
  const ScalarField invF = recip(F);
  const ScalarField f_1 = d1(f), f_0 = d0(f);
  const ScalarField fb_1b = d1b(fb);  // conj(phi)_1b
  const ScalarField G_1 = d1(G), G_1b = d1b(G);

  CoframeForm1 w;
  // -d ln F contributes -(X F)/F to every slot
  // [conj(phi) phi_0 / (1-|phi|^2)] Theta
  w.c_theta = -(d0(F) * invF) + fb * f_0 * G;
  // [(conj(phi)_1b + conj(phi) phi_1) G + conj(phi) Z1b G + Z1 G] theta1o
  w.c_1 = -(d1(F) * invF) + (fb_1b + fb * f_1) * G + fb * G_1b + G_1;
  // -[(phi_1 + phi conj(phi)_1b) G + |phi|^2 Z1b G + phi Z1 G] theta1bo
  w.c_1b = -(d1b(F) * invF) - ((f_1 + f * fb_1b) * G + f * fb * G_1b + f * G_1);
  return w;
}

// d theta^1 - theta^1 ^ theta_1^1 - Theta ^ tau^1, identically zero.
inline CoframeForm2 structure_equation_residual(const DeformationTensor& phi) {
  const CoframeForm1 th = unitary_coframe(phi);
  return exterior_d(th) - wedge(th, connection_form(phi)) -
         wedge(CoframeForm1::theta(), torsion_form(phi));
}

// Real-part residual of theta_1^1 + conj(theta_1^1) at the probes.
inline double antihermitian_defect(const CoframeForm1& w, std::span<const HPoint> probes) {
  double m = 0.0;
  for (const auto& p : probes) {
    const Form1Value v = w(p);
    m = std::max({m, std::abs(v.theta + std::conj(v.theta)), std::abs(v.one + std::conj(v.oneb))});
  }
  return m;
}

// ---------------------------------------------------------------------------
// Pointwise kernels

namespace detail {

// Value plus Z1o / Z1bo derivatives; enough for one more derivative of the
// bracketed coefficients in the curvature formula.
struct FrameDual {
  cplx v{}, d1{}, d1b{};

  friend FrameDual operator+(const FrameDual& a, const FrameDual& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d1b + b.d1b};
  }
  friend FrameDual operator-(const FrameDual& a, const FrameDual& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d1b - b.d1b};
  }
  friend FrameDual operator*(const FrameDual& a, const FrameDual& b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d1b * b.v + a.v * b.d1b};
  }
  friend FrameDual operator*(cplx s, const FrameDual& a) { return {s * a.v, s * a.d1, s * a.d1b}; }
};

inline FrameDual conj(const FrameDual& a) {
  return {std::conj(a.v), std::conj(a.d1b), std::conj(a.d1)};
}

// Quantities shared by the curvature and sublaplacian formulas.
struct PhiTerms {
  FrameDual phi, phi_1, phi_1b;  // phi, Z1o phi, Z1bo phi
  FrameDual pb, pb_1, pb_1b;     // conj(phi) and its frame derivatives
  FrameDual m;                   // |phi|^2
  FrameDual G, G_1, G_1b;        // 1/(1-|phi|^2), Z1o G, Z1bo G
  cplx phi_0{};

  explicit PhiTerms(const Jet2& j) {
    phi = {j.val(), j.j1.d_z1, j.j1.d_z1b};
    phi_1 = {j.j1.d_z1, j.d2[0][0], j.d2[0][1]};
    phi_1b = {j.j1.d_z1b, j.d2[1][0], j.d2[1][1]};
    phi_0 = j.j1.d_t;
    pb = conj(phi);
    pb_1 = conj(phi_1b);
    pb_1b = conj(phi_1);
    m = phi * pb;
    const cplx g = 1.0 / (1.0 - m.v);
    const FrameDual m_1 = phi_1 * pb + phi * pb_1;
    const FrameDual m_1b = phi_1b * pb + phi * pb_1b;
    G = {g, g * g * m_1.v, g * g * m_1b.v};
    const FrameDual G2 = G * G;
    G_1 = G2 * m_1;
    G_1b = G2 * m_1b;
  }
};

}  // namespace detail

// Torsion from a jet of phi.
inline cplx torsion_kernel(const Jet2& phi) {
  return -phi.j1.d_t / (1.0 - std::norm(phi.val()));
}

inline cplx torsion(const DeformationTensor& phi, const HPoint& p) {
  return torsion_kernel(phi.jet(p));
}

// Connection form value from a jet of phi: coefficients on (Theta, theta1o, theta1bo).
inline Form1Value connection_kernel(const Jet2& phi) {
  const detail::PhiTerms t(phi);
  const cplx g = t.G.v;
  // -d ln F = -(1/2) d ln G = -(1/2) dG / G
  const cplx T_G = g * g * (t.phi_0 * t.pb.v + t.phi.v * std::conj(t.phi_0));
  Form1Value w;
  w.theta = -0.5 * T_G / g + t.pb.v * t.phi_0 * g;
  w.one = -0.5 * t.G_1.v / g + ((t.pb_1b + t.pb * t.phi_1) * t.G + t.pb * t.G_1b + t.G_1).v;
  w.oneb = -0.5 * t.G_1b.v / g -
           ((t.phi_1 + t.phi * t.pb_1b) * t.G + t.m * t.G_1b + t.phi * t.G_1).v;
  return w;
}

// Tanaka-Webster curvature R^{phi,Theta}, complex form (imaginary part is round-off).
inline cplx curvature_kernel(const Jet2& phi) {
  const detail::PhiTerms t(phi);
  // B1 = (conj(phi)_1b + conj(phi) phi_1) G + conj(phi) Z1bo G + Z1o G
  const detail::FrameDual B1 = (t.pb_1b + t.pb * t.phi_1) * t.G + t.pb * t.G_1b + t.G_1;
  // B2 = (phi_1 + phi conj(phi)_1b) G + |phi|^2 Z1bo G + phi Z1o G
  const detail::FrameDual B2 = (t.phi_1 + t.phi * t.pb_1b) * t.G + t.m * t.G_1b + t.phi * t.G_1;
  // R = -Z1bo B1 - Z1o B2 + i conj(phi) phi_0 G
  return -B1.d1b - B2.d1 + kI * t.pb.v * t.phi_0 * t.G.v;
}

inline cplx scalar_curvature_complex(const DeformationTensor& phi, const HPoint& p) {
  return curvature_kernel(phi.jet(p));
}

inline double scalar_curvature(const DeformationTensor& phi, const HPoint& p) {
  return scalar_curvature_complex(phi, p).real();
}

// Flat sublaplacian -(Z1bo Z1o u + Z1o Z1bo u) = -(e1^2 + e2^2) u / 2.
inline cplx flat_sublaplacian_kernel(const Jet2& u) { return -(u.d2[0][1] + u.d2[1][0]); }

// Sublaplacian of u for the structure phi, transcribed term by term.
inline cplx sublaplacian_kernel(const Jet2& phi, const Jet2& u) {
  const detail::PhiTerms t(phi);
  const cplx g = t.G.v, m = t.m.v, f = t.phi.v, fb = t.pb.v;
  const cplx m_1 = (t.phi_1 * t.pb + t.phi * t.pb_1).v;
  const cplx m_1b = (t.phi_1b * t.pb + t.phi * t.pb_1b).v;
  const cplx u_1 = u.j1.d_z1, u_1b = u.j1.d_z1b;
  const cplx u_11 = u.d2[0][0], u_1b1b = u.d2[1][1];

  // [(1+|phi|^2)/(1-|phi|^2)] flat sublaplacian
  cplx r = (1.0 + m) * g * flat_sublaplacian_kernel(u);
  // - [2 conj(phi) G] u_1b1b - [2 phi G] u_11
  r -= 2.0 * fb * g * u_1b1b;
  r -= 2.0 * f * g * u_11;
  // - [(2 conj(phi)_1b + |phi|^2_1) G + 2 conj(phi) Z1bo G + (1+|phi|^2) Z1o G] u_1b
  r -= ((2.0 * t.pb_1b.v + m_1) * g + 2.0 * fb * t.G_1b.v + (1.0 + m) * t.G_1.v) * u_1b;
  // - [(2 phi_1 + |phi|^2_1b) G + (1+|phi|^2) Z1bo G + 2 phi Z1o G] u_1
  r -= ((2.0 * t.phi_1.v + m_1b) * g + (1.0 + m) * t.G_1b.v + 2.0 * f * t.G_1.v) * u_1;
  return r;
}

inline double sublaplacian(const DeformationTensor& phi, const ScalarField& u, const HPoint& p) {
  return sublaplacian_kernel(phi.jet(p), u.jet2(p)).real();
}

// Second derivation: -(Z1b Z1 u - theta_1^1(Z1b) Z1 u) + conjugate, with the
// unit frame Z1b = F (Z1bo + phi Z1o) and the field-level connection form.
inline ScalarField defn_sublaplacian_field(const DeformationTensor& phi, const ScalarField& u) {
  const ScalarField& f = phi.phi();
  const ScalarField F = fcal(phi);
  const CoframeForm1 w = connection_form(phi);
  auto Z1 = [&](const ScalarField& g) { return F * (d1(g) + conj(f) * d1b(g)); };
  auto Z1b = [&](const ScalarField& g) { return F * (d1b(g) + f * d1(g)); };
  const ScalarField Z1u = Z1(u);
  const ScalarField w_Z1b = F * (w.c_1b + f * w.c_1);  // theta_1^1(Z1b)
  const ScalarField inner = Z1b(Z1u) - w_Z1b * Z1u;
  return -inner - conj(inner);
}

inline double defn_sublaplacian_oracle(const DeformationTensor& phi, const ScalarField& u,
                                       const HPoint& p) {
  (void)phi.jet(p);  // guard
  return defn_sublaplacian_field(phi, u)(p).real();
}

// 2 F^2 ((1+|phi|^2)|u_1b|^2 + phi u_1^2 + conj(phi) u_1b^2) / w^2
inline cplx grad_norm_kernel(cplx phi, cplx u_1, cplx u_1b, double w) {
  const double m = std::norm(phi);
  const double F2 = 1.0 / (1.0 - m);
  return 2.0 * F2 * ((1.0 + m) * std::norm(u_1b) + phi * u_1 * u_1 + std::conj(phi) * u_1b * u_1b) /
         (w * w);
}

// Polarisation of grad_norm_kernel for real u, v.
inline cplx grad_inner_kernel(cplx phi, cplx u_1, cplx u_1b, cplx v_1, cplx v_1b, double w) {
  const double m = std::norm(phi);
  const double F2 = 1.0 / (1.0 - m);
  return 2.0 * F2 *
         ((1.0 + m) * 0.5 * (u_1b * v_1 + u_1 * v_1b) + phi * u_1 * v_1 +
          std::conj(phi) * u_1b * v_1b) /
         (w * w);
}

inline double grad_norm_sq(const DeformationTensor& phi, const ScalarField& w, const ScalarField& u,
                           const HPoint& p) {
  const cplx f = phi.jet(p).val();
  const double wv = detail::require_positive(w(p), p);
  const Jet2 ju = u.jet2(p);
  return grad_norm_kernel(f, ju.j1.d_z1, ju.j1.d_z1b, wv).real();
}

// R^{phi, w^2 Theta} = w^-3 (4 Delta_b w + R w)
inline cplx conformal_curvature_kernel(const Jet2& phi, const Jet2& w) {
  const cplx wv = w.val();
  return (4.0 * sublaplacian_kernel(phi, w) + curvature_kernel(phi) * wv) / (wv * wv * wv);
}

inline double conformal_curvature(const DeformationTensor& phi, const ScalarField& w,
                                  const HPoint& p) {
  const Jet2 jw = w.jet2(p);
  detail::require_positive(jw.val(), p);
  return conformal_curvature_kernel(phi.jet(p), jw).real();
}

inline double conformal_curvature(const PHStructure& s, const HPoint& p) {
  return conformal_curvature(s.phi, s.w, p);
}

// theta1o ^ theta1bo coefficient of fd_exterior_d(connection form) at p.
inline double curvature_via_structure_eq(const DeformationTensor& phi, const HPoint& p, double h) {
  (void)phi.jet(p);
  const CoframeForm1 w = connection_form(phi);
  return fd_exterior_d(w, p, h).c11b.real();
}

}  // namespace crcalc
