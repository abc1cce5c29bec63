#pragma once

// Heisenberg group H1 in the chart (x, y, z): group law, the left-invariant
// frame e1 = d/dx + y d/dz, e2 = d/dy - x d/dz, T = d/dz with
// Z1 = (e1 - i e2)/2, and the frame jets of scalar fields.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "crcalc/series.hpp"

namespace crcalc {

using cplx = std::complex<double>;
inline constexpr cplx kI{0.0, 1.0};

struct HPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const HPoint&, const HPoint&) = default;
};

inline HPoint group_mul(const HPoint& p, const HPoint& q) {
  return {p.x + q.x, p.y + q.y, p.z + q.z + p.y * q.x - p.x * q.y};
}

inline HPoint group_inverse(const HPoint& p) { return {-p.x, -p.y, -p.z}; }

// Heisenberg dilation (x, y, z) -> (r x, r y, r^2 z).
inline HPoint dilate(const HPoint& p, double r) { return {r * p.x, r * p.y, r * r * p.z}; }

struct Gauge {
  double s = 0.0;    // (x^2 + y^2)^2 + z^2, polynomial
  double rho = 0.0;  // s^(1/4), the Koranyi norm
};

inline Gauge koranyi_gauge(const HPoint& p) {
  const double r2 = p.x * p.x + p.y * p.y;
  const double s = r2 * r2 + p.z * p.z;
  return {s, std::sqrt(std::sqrt(s))};
}

enum class Dir { Z1 = 0, Z1b = 1, T = 2 };

inline constexpr Dir conj_dir(Dir d) {
  return d == Dir::Z1 ? Dir::Z1b : (d == Dir::Z1b ? Dir::Z1 : Dir::T);
}

inline const char* dir_name(Dir d) {
  switch (d) {
    case Dir::Z1: return "Z1";
    case Dir::Z1b: return "Z1b";
    case Dir::T: return "T";
  }
  return "?";
}

// First-order frame jet.
struct Jet1 {
  cplx val{};
  cplx d_z1{};
  cplx d_z1b{};
  cplx d_t{};

  cplx d(Dir dir) const { return dir == Dir::Z1 ? d_z1 : (dir == Dir::Z1b ? d_z1b : d_t); }
};

// Value plus first frame derivatives plus the four ordered horizontal second
// derivatives. d2[a][b] = Z_b(Z_a f), a, b in {Z1, Z1b}.
struct Jet2 {
  Jet1 j1;
  std::array<std::array<cplx, 2>, 2> d2{};

  cplx val() const { return j1.val; }
  cplx dd(Dir a, Dir b) const { return d2[static_cast<int>(a)][static_cast<int>(b)]; }

  static Jet2 constant(cplx c) {
    Jet2 j;
    j.j1.val = c;
    return j;
  }
};

// Sign kappa in d2[Z1][Z1b] - d2[Z1b][Z1] = kappa * i * T f. Pinned by the
// fd_jet calibration on f = z (see calibrate_commutator_sign).
inline constexpr int kCommutatorSign = +1;

// Applies the frame vector field `dir` to a local series centred at p (local
// variables dx, dy, dz). The result has one order less.
inline Series3 apply_frame(const Series3& s, Dir dir, const HPoint& p) {
  const Series3 sx = s.partial(0);
  const Series3 sy = s.partial(1);
  const Series3 sz = s.partial(2);
  if (dir == Dir::T) return sz;
  const int ord = sz.order();
  // Z1  = (dx - i dy)/2 + (y + i x) dz / 2
  // Z1b = (dx + i dy)/2 + (y - i x) dz / 2
  const double sign = dir == Dir::Z1 ? -1.0 : 1.0;
  Series3 coef = 0.5 * Series3::variable(1, cplx(p.y), ord) +
                 cplx(0.0, -0.5 * sign) * Series3::variable(0, cplx(p.x), ord);
  return cplx(0.5) * sx + cplx(0.0, 0.5 * sign) * sy + coef * sz;
}

// Frame jet of a local series of order >= 2.
inline Jet2 frame_jet(const Series3& s, const HPoint& p) {
  Jet2 j;
  j.j1.val = s.value();
  const Series3 f1 = apply_frame(s, Dir::Z1, p);
  const Series3 f1b = apply_frame(s, Dir::Z1b, p);
  j.j1.d_z1 = f1.value();
  j.j1.d_z1b = f1b.value();
  j.j1.d_t = s.partial(2).value();
  j.d2[0][0] = apply_frame(f1, Dir::Z1, p).value();
  j.d2[0][1] = apply_frame(f1, Dir::Z1b, p).value();
  j.d2[1][0] = apply_frame(f1b, Dir::Z1, p).value();
  j.d2[1][1] = apply_frame(f1b, Dir::Z1b, p).value();
  return j;
}

// Local order-2 series at p from coordinate partial derivatives, used to turn
// grid finite differences into frame jets.
struct CoordinatePartials {
  cplx f, fx, fy, fz, fxx, fyy, fzz, fxy, fxz, fyz;
};

inline Series3 local_series(const CoordinatePartials& c) {
  Series3 s(2);
  s[0] = c.f;
  s[1] = c.fx;
  s[2] = c.fy;
  s[3] = c.fz;
  s[Series3::Table::get().index_of({2, 0, 0})] = 0.5 * c.fxx;
  s[Series3::Table::get().index_of({0, 2, 0})] = 0.5 * c.fyy;
  s[Series3::Table::get().index_of({0, 0, 2})] = 0.5 * c.fzz;
  s[Series3::Table::get().index_of({1, 1, 0})] = c.fxy;
  s[Series3::Table::get().index_of({1, 0, 1})] = c.fxz;
  s[Series3::Table::get().index_of({0, 1, 1})] = c.fyz;
  return s;
}

inline Jet2 conj(const Jet2& j) {
  Jet2 c;
  c.j1.val = std::conj(j.j1.val);
  c.j1.d_z1 = std::conj(j.j1.d_z1b);
  c.j1.d_z1b = std::conj(j.j1.d_z1);
  c.j1.d_t = std::conj(j.j1.d_t);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) c.d2[a][b] = std::conj(j.d2[1 - a][1 - b]);
  return c;
}

inline double max_abs(const Jet2& j) {
  double m = std::max({std::abs(j.j1.val), std::abs(j.j1.d_z1), std::abs(j.j1.d_z1b),
                       std::abs(j.j1.d_t)});
  for (const auto& row : j.d2)
    for (const auto& v : row) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace crcalc
