#pragma once

// 1- and 2-forms in the coframe {Theta, theta1, theta1b} of H1, where
// Theta = dz + x dy - y dx and theta1 = dx + i dy (dual to T, Z1, Z1b).
// 2-forms use the basis theta1^theta1b, Theta^theta1, Theta^theta1b.

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>

#include "crcalc/field.hpp"
#include "crcalc/hgroup.hpp"

namespace crcalc {

// dTheta = sigma * i * theta1 ^ theta1b; pinned against fd_exterior_d.
inline constexpr int kStructureSign = +1;

// Helpers that drop literal zeros and ones; keeps derived trees small.
inline bool is_zero(const ScalarField& f) {
  return f.is_constant() && f.node()->value == cplx{};
}
inline bool is_one(const ScalarField& f) {
  return f.is_constant() && f.node()->value == cplx{1.0};
}
inline ScalarField sum(const ScalarField& a, const ScalarField& b) {
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  return a + b;
}
inline ScalarField difference(const ScalarField& a, const ScalarField& b) {
  if (is_zero(b)) return a;
  if (is_zero(a)) return -b;
  return a - b;
}
inline ScalarField product(const ScalarField& a, const ScalarField& b) {
  if (is_zero(a) || is_zero(b)) return ScalarField(0.0);
  if (is_one(a)) return b;
  if (is_one(b)) return a;
  return a * b;
}
inline ScalarField derivative(const ScalarField& f, Dir dir) {
  if (f.is_constant()) return ScalarField(0.0);
  return deriv(f, dir);
}

struct Form1Value {
  cplx theta{}, one{}, oneb{};
};

struct Form2Value {
  cplx c11b{}, ct1{}, ct1b{};

  double max_abs() const { return std::max({std::abs(c11b), std::abs(ct1), std::abs(ct1b)}); }
  friend Form2Value operator-(const Form2Value& a, const Form2Value& b) {
    return {a.c11b - b.c11b, a.ct1 - b.ct1, a.ct1b - b.ct1b};
  }
};

struct CoframeForm1 {
  ScalarField c_theta{0.0};
  ScalarField c_1{0.0};
  ScalarField c_1b{0.0};

  Form1Value operator()(const HPoint& p) const { return {c_theta(p), c_1(p), c_1b(p)}; }

  static CoframeForm1 theta() { return {1.0, 0.0, 0.0}; }
  static CoframeForm1 theta1() { return {0.0, 1.0, 0.0}; }
  static CoframeForm1 theta1b() { return {0.0, 0.0, 1.0}; }

  friend CoframeForm1 operator+(const CoframeForm1& a, const CoframeForm1& b) {
    return {sum(a.c_theta, b.c_theta), sum(a.c_1, b.c_1), sum(a.c_1b, b.c_1b)};
  }
  friend CoframeForm1 operator*(const ScalarField& f, const CoframeForm1& a) {
    return {product(f, a.c_theta), product(f, a.c_1), product(f, a.c_1b)};
  }
};

// Complex conjugate form: conj(f Theta + g theta1 + h theta1b).
inline CoframeForm1 conj(const CoframeForm1& a) {
  auto c = [](const ScalarField& f) { return f.is_constant() ? ScalarField(std::conj(f.node()->value)) : conj(f); };
  return {c(a.c_theta), c(a.c_1b), c(a.c_1)};
}

struct CoframeForm2 {
  ScalarField c_11b{0.0};
  ScalarField c_t1{0.0};
  ScalarField c_t1b{0.0};

  Form2Value operator()(const HPoint& p) const { return {c_11b(p), c_t1(p), c_t1b(p)}; }

  friend CoframeForm2 operator-(const CoframeForm2& a, const CoframeForm2& b) {
    return {difference(a.c_11b, b.c_11b), difference(a.c_t1, b.c_t1),
            difference(a.c_t1b, b.c_t1b)};
  }
  friend CoframeForm2 operator+(const CoframeForm2& a, const CoframeForm2& b) {
    return {sum(a.c_11b, b.c_11b), sum(a.c_t1, b.c_t1), sum(a.c_t1b, b.c_t1b)};
  }
};

// df = (T f) Theta + (Z1 f) theta1 + (Z1b f) theta1b
inline CoframeForm1 differential(const ScalarField& f) {
  return {derivative(f, Dir::T), derivative(f, Dir::Z1), derivative(f, Dir::Z1b)};
}

inline CoframeForm2 wedge(const CoframeForm1& a, const CoframeForm1& b) {
  return {difference(product(a.c_1, b.c_1b), product(a.c_1b, b.c_1)),
          difference(product(a.c_theta, b.c_1), product(a.c_1, b.c_theta)),
          difference(product(a.c_theta, b.c_1b), product(a.c_1b, b.c_theta))};
}

inline Form2Value wedge(const Form1Value& a, const Form1Value& b) {
  return {a.one * b.oneb - a.oneb * b.one, a.theta * b.one - a.one * b.theta,
          a.theta * b.oneb - a.oneb * b.theta};
}

// d(f Theta + g theta1 + h theta1b) with dtheta1 = dtheta1b = 0 and
// dTheta = sigma i theta1^theta1b.
inline CoframeForm2 exterior_d(const CoframeForm1& a) {
  const ScalarField& f = a.c_theta;
  const ScalarField& g = a.c_1;
  const ScalarField& h = a.c_1b;
  const ScalarField sigma_i(cplx(0.0, static_cast<double>(kStructureSign)));
  CoframeForm2 out;
  out.c_11b = sum(difference(product(sigma_i, f), derivative(g, Dir::Z1b)),
                  derivative(h, Dir::Z1));
  out.c_t1 = difference(derivative(g, Dir::T), derivative(f, Dir::Z1));
  out.c_t1b = difference(derivative(h, Dir::T), derivative(f, Dir::Z1b));
  return out;
}

// ---- coordinate representation (oracle only) ----

struct Coord1 {
  cplx dx{}, dy{}, dz{};
};

// 2-form P dx^dy + Q dx^dz + S dy^dz
struct Coord2 {
  cplx dxdy{}, dxdz{}, dydz{};
};

inline Coord1 to_coordinates(const Form1Value& a, const HPoint& p) {
  return {-p.y * a.theta + a.one + a.oneb, p.x * a.theta + kI * a.one - kI * a.oneb, a.theta};
}

inline Form1Value from_coordinates(const Coord1& c, const HPoint& p) {
  Form1Value a;
  a.theta = c.dz;
  const cplx s = c.dx + p.y * a.theta;           // g + h
  const cplx d = (c.dy - p.x * a.theta) / kI;    // g - h
  a.one = 0.5 * (s + d);
  a.oneb = 0.5 * (s - d);
  return a;
}

inline Form2Value from_coordinates(const Coord2& w, const HPoint& p) {
  Form2Value r;
  r.ct1 = 0.5 * (-w.dxdz + kI * w.dydz);
  r.ct1b = 0.5 * (-w.dxdz - kI * w.dydz);
  const cplx rest = w.dxdy - r.ct1 * cplx(-p.x, -p.y) - r.ct1b * cplx(-p.x, p.y);
  r.c11b = rest / cplx(0.0, -2.0);
  return r;
}

using Form1Fn = std::function<Form1Value(const HPoint&)>;

// Coordinate curl of a pointwise 1-form by central differences.
inline Coord2 fd_exterior_d_coordinates(const Form1Fn& a, const HPoint& p, double h) {
  auto at = [&](double dx, double dy, double dz) {
    const HPoint q{p.x + dx, p.y + dy, p.z + dz};
    return to_coordinates(a(q), q);
  };
  const Coord1 xp = at(h, 0, 0), xm = at(-h, 0, 0);
  const Coord1 yp = at(0, h, 0), ym = at(0, -h, 0);
  const Coord1 zp = at(0, 0, h), zm = at(0, 0, -h);
  const double inv = 1.0 / (2.0 * h);
  Coord2 w;
  w.dxdy = (xp.dy - xm.dy) * inv - (yp.dx - ym.dx) * inv;
  w.dxdz = (xp.dz - xm.dz) * inv - (zp.dx - zm.dx) * inv;
  w.dydz = (yp.dz - ym.dz) * inv - (zp.dy - zm.dy) * inv;
  return w;
}

inline Form2Value fd_exterior_d(const Form1Fn& a, const HPoint& p, double h) {
  return from_coordinates(fd_exterior_d_coordinates(a, p, h), p);
}

inline Form2Value fd_exterior_d(const CoframeForm1& a, const HPoint& p, double h) {
  return fd_exterior_d(Form1Fn([&a](const HPoint& q) { return a(q); }), p, h);
}

// sigma recovered from the oracle: dTheta evaluated at p, divided by i.
inline int calibrate_structure_sign(const HPoint& p = {0.4, -0.3, 0.2}, double h = 1e-3) {
  const Form2Value d = fd_exterior_d(CoframeForm1::theta(), p, h);
  return (d.c11b / kI).real() > 0 ? +1 : -1;
}

// nu in Theta ^ dTheta = nu dx^dy^dz, from the oracle's coordinate curl.
inline double calibrate_volume_density(const HPoint& p = {0.4, -0.3, 0.2}, double h = 1e-3) {
  const Form1Fn theta = [](const HPoint&) { return Form1Value{1.0, 0.0, 0.0}; };
  const Coord2 w = fd_exterior_d_coordinates(theta, p, h);
  const Coord1 t = to_coordinates(Form1Value{1.0, 0.0, 0.0}, p);
  return (t.dx * w.dydz - t.dy * w.dxdz + t.dz * w.dxdy).real();
}

// A form is real when c_theta is real and c_1b = conj(c_1) at every probe.
inline double reality_defect(const CoframeForm1& a, std::span<const HPoint> probes) {
  double m = 0.0;
  for (const auto& p : probes) {
    const Form1Value v = a(p);
    m = std::max({m, std::abs(v.theta.imag()), std::abs(v.oneb - std::conj(v.one))});
  }
  return m;
}

}  // namespace crcalc
