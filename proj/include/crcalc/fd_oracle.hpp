#pragma once

// Finite-difference jet oracle. Derivatives are taken as nested central
// differences along the frame vector fields themselves (straight lines
// q + t V(q)), so it shares no coordinate-to-frame algebra with the exact
// series path.

#include <array>
#include <cmath>
#include <functional>

#include "crcalc/field.hpp"
#include "crcalc/hgroup.hpp"

namespace crcalc {

using PointFn = std::function<cplx(const HPoint&)>;

namespace detail {

// Left-invariant vector fields e1, e2, T at q.
inline HPoint frame_vector(int which, const HPoint& q) {
  switch (which) {
    case 0: return {1.0, 0.0, q.y};
    case 1: return {0.0, 1.0, -q.x};
    default: return {0.0, 0.0, 1.0};
  }
}

inline HPoint step(const HPoint& q, const HPoint& v, double t) {
  return {q.x + t * v.x, q.y + t * v.y, q.z + t * v.z};
}

inline cplx directional(const PointFn& f, int which, const HPoint& q, double h) {
  const HPoint v = frame_vector(which, q);
  return (f(step(q, v, h)) - f(step(q, v, -h))) / (2.0 * h);
}

}  // namespace detail

inline Jet2 fd_jet(const PointFn& f, const HPoint& p, double h) {
  using detail::directional;
  const cplx e1 = directional(f, 0, p, h);
  const cplx e2 = directional(f, 1, p, h);
  // ee[i][j] = e_i(e_j f)
  std::array<std::array<cplx, 2>, 2> ee{};
  for (int j = 0; j < 2; ++j) {
    const PointFn inner = [&f, j, h](const HPoint& q) { return directional(f, j, q, h); };
    for (int i = 0; i < 2; ++i) ee[i][j] = directional(inner, i, p, h);
  }
  Jet2 jet;
  jet.j1.val = f(p);
  jet.j1.d_z1 = 0.5 * (e1 - kI * e2);
  jet.j1.d_z1b = 0.5 * (e1 + kI * e2);
  jet.j1.d_t = directional(f, 2, p, h);
  // Z_a = (e1 + s_a i e2)/2 with s_Z1 = -1, s_Z1b = +1
  const double sgn[2] = {-1.0, 1.0};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      jet.d2[a][b] = 0.25 * (ee[0][0] + sgn[a] * kI * ee[0][1] + sgn[b] * kI * ee[1][0] -
                             sgn[a] * sgn[b] * ee[1][1]);
  return jet;
}

inline Jet2 fd_jet(const ScalarField& f, const HPoint& p, double h) {
  return fd_jet(PointFn([&f](const HPoint& q) { return f(q); }), p, h);
}

// d2[Z1][Z1b] - d2[Z1b][Z1] - kappa i T f; vanishes for exact jets.
inline cplx commutator_defect(const Jet2& j) {
  return j.d2[0][1] - j.d2[1][0] - static_cast<double>(kCommutatorSign) * kI * j.j1.d_t;
}

inline cplx commutator_defect(const ScalarField& f, const HPoint& p) {
  return commutator_defect(f.jet2(p));
}

// Recovers kappa from the oracle on the calibration field f = z.
inline int calibrate_commutator_sign(const HPoint& p = {0.3, -0.2, 0.1}, double h = 1e-3) {
  const Jet2 j = fd_jet(ScalarField::z(), p, h);
  const cplx ratio = (j.d2[0][1] - j.d2[1][0]) / (kI * j.j1.d_t);
  return ratio.real() > 0 ? +1 : -1;
}

}  // namespace crcalc
