#pragma once

// Logarithmic cutoff chi_delta of the Koranyi gauge. In the log variable
// t = ln(rho / a) / ln(delta / a) the profile is 1 - psi(t) with the smooth
// transition psi(t) = f(t) / (f(t) + f(1 - t)), f(t) = exp(-1/t). So chi == 1
// for rho <= a, chi == 0 for rho >= delta, and chi(sqrt(a delta)) = 1/2.
//
// The stored profile is a function of the polynomial gauge s = rho^4, which
// keeps glued fields smooth at the origin.

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "crcalc/errors.hpp"
#include "crcalc/field.hpp"
#include "crcalc/series.hpp"

namespace crcalc {

namespace detail {

// psi(t) as a univariate series; the argument's value lies in (0, 1).
inline Series1 transition_series(const Series1& t) {
  const Series1 one = Series1::constant(1.0, t.order());
  const Series1 f0 = series_exp(-series_recip(t));
  const Series1 f1 = series_exp(-series_recip(one - t));
  return f0 * series_recip(f0 + f1);
}

}  // namespace detail

// chi as a function of s, with exact derivatives (plateau values are exact).
class LogCutoff final : public UnaryFunction {
 public:
  LogCutoff(double delta, double inner) : delta_(delta), inner_(inner) {
    log_inner4_ = 4.0 * std::log(inner);
    span_ = 4.0 * std::log(delta / inner);
    s_inner_ = std::pow(inner, 4);
    s_outer_ = std::pow(delta, 4);
  }

  std::string name() const override { return "chi"; }

  void derivatives(cplx a, int order, cplx* out) const override {
    const double s = a.real();
    for (int k = 0; k <= order; ++k) out[k] = 0.0;
    if (s <= s_inner_) {
      out[0] = 1.0;
      return;
    }
    if (s >= s_outer_) return;
    const Series1 ds = Series1::variable(0, s, order);
    const Series1 t = (1.0 / span_) * (-log_inner4_ + series_log(ds));
    // rounding can land exactly on the plateau ends
    if (t.value().real() <= 0.0) {
      out[0] = 1.0;
      return;
    }
    if (t.value().real() >= 1.0) return;
    const Series1 chi = Series1::constant(1.0, order) - detail::transition_series(t);
    double fact = 1.0;
    for (int k = 0; k <= order; ++k) {
      if (k > 0) fact *= k;
      out[k] = cplx(chi[k].real() * fact, 0.0);
    }
  }

  double delta() const { return delta_; }
  double inner() const { return inner_; }

 private:
  double delta_, inner_;
  double log_inner4_ = 0, span_ = 1, s_inner_ = 0, s_outer_ = 0;
};

struct CutoffDerivs {
  double chi = 0;
  double rho_d1 = 0;  // rho chi'(rho)
  double rho2_d2 = 0; // rho^2 chi''(rho)
};

struct CutoffProfile {
  double delta = 0;
  double inner = 0;
  std::shared_ptr<const LogCutoff> profile;

  // chi(s(x, y, z)) as a field
  ScalarField field() const { return compose(profile, ScalarField::gauge()); }

  double operator()(double rho) const { return at_rho(rho).chi; }

  // chi and its scaled rho-derivatives through the s-profile (s = rho^4).
  CutoffDerivs at_rho(double rho) const {
    const Series1 r = Series1::variable(0, rho, 2);
    const Series1 r2 = r * r;
    const Series1 s = r2 * r2;
    cplx d[kMaxSeriesOrder + 1];
    profile->derivatives(s.value(), 2, d);
    const Series1 chi = s.compose(d);
    return {chi.value().real(), rho * chi[1].real(), rho * rho * 2.0 * chi[2].real()};
  }
};

// a = delta exp(-inner_exponent / delta). Throws RangeError unless 0 < delta <= 1.
inline CutoffProfile make_cutoff(double delta, double inner_exponent = 2.0) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw RangeError("cutoff delta must lie in (0, 1], got " + std::to_string(delta));
  if (!(inner_exponent > 0.0)) throw RangeError("cutoff inner exponent must be positive");
  const double inner = delta * std::exp(-inner_exponent / delta);
  return {delta, inner, std::make_shared<LogCutoff>(delta, inner)};
}

struct CutoffBoundsReport {
  double delta = 0;
  double sup_first = 0;   // sup |rho chi'| / delta
  double sup_second = 0;  // sup |rho^2 chi''| / delta
  bool range_ok = true;   // 0 <= chi <= 1
  bool plateau_exact = true;
  bool support_exact = true;
  double mid_value = 0;   // chi at sqrt(inner * delta)
};

// Sweeps `samples` log-spaced radii covering [inner/2, 2 delta].
inline CutoffBoundsReport verify_cutoff(const CutoffProfile& c, int samples = 10000) {
  CutoffBoundsReport r;
  r.delta = c.delta;
  const double lo = std::log(0.5 * c.inner), hi = std::log(2.0 * c.delta);
  for (int i = 0; i < samples; ++i) {
    const double rho = std::exp(lo + (hi - lo) * i / (samples - 1));
    const CutoffDerivs d = c.at_rho(rho);
    r.sup_first = std::max(r.sup_first, std::abs(d.rho_d1) / c.delta);
    r.sup_second = std::max(r.sup_second, std::abs(d.rho2_d2) / c.delta);
    if (d.chi < 0.0 || d.chi > 1.0) r.range_ok = false;
    if (rho <= c.inner && d.chi != 1.0) r.plateau_exact = false;
    if (rho >= c.delta && d.chi != 0.0) r.support_exact = false;
  }
  if (c(0.0) != 1.0 || c(c.inner) != 1.0) r.plateau_exact = false;
  if (c(c.delta) != 0.0) r.support_exact = false;
  r.mid_value = c(std::sqrt(c.inner * c.delta));
  return r;
}

}  // namespace crcalc
