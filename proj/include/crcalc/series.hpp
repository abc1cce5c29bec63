#pragma once

// Truncated multivariate Taylor series with a runtime order of at most
// kMaxSeriesOrder. Coefficients are stored in graded order (all degree-0
// monomials, then degree 1, ...), so truncating to order k is a prefix.

#include <algorithm>
#include <array>
#include <cassert>
#include <complex>
#include <cstdint>
#include <vector>

namespace crcalc {

inline constexpr int kMaxSeriesOrder = 4;

namespace detail {

constexpr int binomial(int n, int k) {
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

template <int NVars>
struct MonomialTable {
  static constexpr int kCapacity = binomial(NVars + kMaxSeriesOrder, NVars);

  struct Product {
    std::uint8_t lhs, rhs, out;
  };

  std::array<std::array<std::uint8_t, NVars>, kCapacity> exponents{};
  std::array<std::uint8_t, kCapacity> degree{};
  std::array<int, kMaxSeriesOrder + 1> count{};  // monomials of degree <= k
  // products[k] lists every pair whose total degree is <= k
  std::array<std::vector<Product>, kMaxSeriesOrder + 1> products;
  // shift[v][i]: index of monomial i with exponent of v raised by one (or -1)
  std::array<std::array<int, kCapacity>, NVars> shift{};

  int index_of(const std::array<std::uint8_t, NVars>& e) const {
    for (int i = 0; i < kCapacity; ++i)
      if (exponents[i] == e) return i;
    return -1;
  }

  MonomialTable() {
    int n = 0;
    std::array<std::uint8_t, NVars> e{};
    for (int d = 0; d <= kMaxSeriesOrder; ++d) {
      // enumerate exponent vectors of total degree d in lexicographic order
      auto rec = [&](auto&& self, int var, int left) -> void {
        if (var == NVars - 1) {
          e[var] = static_cast<std::uint8_t>(left);
          exponents[n] = e;
          degree[n] = static_cast<std::uint8_t>(d);
          ++n;
          return;
        }
        for (int a = left; a >= 0; --a) {
          e[var] = static_cast<std::uint8_t>(a);
          self(self, var + 1, left - a);
        }
      };
      rec(rec, 0, d);
      count[d] = n;
    }
    for (int k = 0; k <= kMaxSeriesOrder; ++k) {
      for (int i = 0; i < count[k]; ++i)
        for (int j = 0; j < count[k]; ++j) {
          if (degree[i] + degree[j] > k) continue;
          std::array<std::uint8_t, NVars> s{};
          for (int v = 0; v < NVars; ++v) s[v] = exponents[i][v] + exponents[j][v];
          products[k].push_back({static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j),
                                 static_cast<std::uint8_t>(index_of(s))});
        }
    }
    for (int v = 0; v < NVars; ++v)
      for (int i = 0; i < kCapacity; ++i) {
        auto s = exponents[i];
        s[v] += 1;
        shift[v][i] = (degree[i] + 1 <= kMaxSeriesOrder) ? index_of(s) : -1;
      }
  }

  static const MonomialTable& get() {
    static const MonomialTable table;
    return table;
  }
};

}  // namespace detail

template <typename Scalar, int NVars>
class Taylor {
 public:
  using Table = detail::MonomialTable<NVars>;
  static constexpr int kCapacity = Table::kCapacity;

  Taylor() : Taylor(0) {}
  explicit Taylor(int order) : order_(order) {
    assert(order >= 0 && order <= kMaxSeriesOrder);
    coeffs_.fill(Scalar{});
  }

  static Taylor constant(Scalar value, int order) {
    Taylor t(order);
    t.coeffs_[0] = value;
    return t;
  }

  // base + d_var, the local coordinate expansion of variable `var`.
  static Taylor variable(int var, Scalar base, int order) {
    Taylor t = constant(base, order);
    if (order >= 1) t.coeffs_[1 + var] = Scalar{1};
    return t;
  }

  int order() const { return order_; }
  int size() const { return Table::get().count[order_]; }
  Scalar value() const { return coeffs_[0]; }
  Scalar operator[](int i) const { return coeffs_[i]; }
  Scalar& operator[](int i) { return coeffs_[i]; }

  Scalar coeff(const std::array<std::uint8_t, NVars>& e) const {
    const int i = Table::get().index_of(e);
    return (i >= 0 && i < size()) ? coeffs_[i] : Scalar{};
  }

  Taylor truncated(int order) const {
    Taylor t(std::min(order, order_));
    std::copy_n(coeffs_.begin(), t.size(), t.coeffs_.begin());
    return t;
  }

  bool is_constant() const {
    for (int i = 1; i < size(); ++i)
      if (coeffs_[i] != Scalar{}) return false;
    return true;
  }

  Taylor operator-() const {
    Taylor t(order_);
    for (int i = 0; i < size(); ++i) t.coeffs_[i] = -coeffs_[i];
    return t;
  }

  friend Taylor operator+(const Taylor& a, const Taylor& b) {
    Taylor t(std::min(a.order_, b.order_));
    for (int i = 0; i < t.size(); ++i) t.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
    return t;
  }
  friend Taylor operator-(const Taylor& a, const Taylor& b) {
    Taylor t(std::min(a.order_, b.order_));
    for (int i = 0; i < t.size(); ++i) t.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
    return t;
  }
  friend Taylor operator*(const Taylor& a, const Taylor& b) {
    Taylor t(std::min(a.order_, b.order_));
    for (const auto& p : Table::get().products[t.order_])
      t.coeffs_[p.out] += a.coeffs_[p.lhs] * b.coeffs_[p.rhs];
    return t;
  }
  friend Taylor operator*(Scalar s, const Taylor& a) {
    Taylor t(a.order_);
    for (int i = 0; i < t.size(); ++i) t.coeffs_[i] = s * a.coeffs_[i];
    return t;
  }
  friend Taylor operator+(Scalar s, const Taylor& a) {
    Taylor t = a;
    t.coeffs_[0] += s;
    return t;
  }

  // g(a) from g and its derivatives at a.value(): derivs[k] = g^(k)(a0).
  Taylor compose(const Scalar* derivs) const {
    Taylor h = *this;
    h.coeffs_[0] = Scalar{};
    Taylor out = constant(derivs[0], order_);
    Taylor power = constant(Scalar{1}, order_);
    double factorial = 1.0;
    for (int k = 1; k <= order_; ++k) {
      power = power * h;
      factorial *= k;
      const Scalar w = derivs[k] / static_cast<typename Scalar::value_type>(factorial);
      for (int i = 0; i < size(); ++i) out.coeffs_[i] += w * power.coeffs_[i];
    }
    return out;
  }

  // Partial derivative along variable `var`; the result has order - 1.
  Taylor partial(int var) const {
    assert(order_ >= 1);
    Taylor t(order_ - 1);
    const auto& tab = Table::get();
    for (int i = 0; i < t.size(); ++i) {
      const int j = tab.shift[var][i];
      t.coeffs_[i] = static_cast<typename Scalar::value_type>(tab.exponents[i][var] + 1) *
                     coeffs_[j];
    }
    return t;
  }

 private:
  std::array<Scalar, kCapacity> coeffs_{};
  int order_ = 0;
};

template <typename Scalar, int NVars>
Taylor<Scalar, NVars> conj(const Taylor<Scalar, NVars>& a) {
  Taylor<Scalar, NVars> t(a.order());
  for (int i = 0; i < a.size(); ++i) t[i] = std::conj(a[i]);
  return t;
}

using Series3 = Taylor<std::complex<double>, 3>;
using Series1 = Taylor<std::complex<double>, 1>;

// Derivative vectors for the elementary functions used by fields; out[k] is
// the k-th derivative at `a`, k = 0..order.
inline void exp_derivatives(std::complex<double> a, int order, std::complex<double>* out) {
  const auto e = std::exp(a);
  for (int k = 0; k <= order; ++k) out[k] = e;
}

inline void log_derivatives(std::complex<double> a, int order, std::complex<double>* out) {
  out[0] = std::log(a);
  std::complex<double> p = 1.0 / a;  // (k-1)! (-1)^(k-1) a^-k
  for (int k = 1; k <= order; ++k) {
    out[k] = p;
    p *= -static_cast<double>(k) / a;
  }
}

// a^alpha on the principal branch; callers guarantee a != 0.
inline void pow_derivatives(std::complex<double> a, double alpha, int order,
                            std::complex<double>* out) {
  std::complex<double> base;
  if (a.imag() == 0.0 && a.real() > 0.0)
    base = alpha == 0.5 ? std::sqrt(a.real()) : std::pow(a.real(), alpha);
  else
    base = alpha == 0.5 ? std::sqrt(a) : std::pow(a, alpha);
  double falling = 1.0;
  std::complex<double> p = base;
  for (int k = 0; k <= order; ++k) {
    out[k] = falling * p;
    falling *= (alpha - k);
    p /= a;
  }
}

template <typename S>
S series_exp(const S& a) {
  std::array<std::complex<double>, kMaxSeriesOrder + 1> d{};
  exp_derivatives(a.value(), a.order(), d.data());
  return a.compose(d.data());
}

template <typename S>
S series_log(const S& a) {
  std::array<std::complex<double>, kMaxSeriesOrder + 1> d{};
  log_derivatives(a.value(), a.order(), d.data());
  return a.compose(d.data());
}

template <typename S>
S series_pow(const S& a, double alpha) {
  std::array<std::complex<double>, kMaxSeriesOrder + 1> d{};
  pow_derivatives(a.value(), alpha, a.order(), d.data());
  return a.compose(d.data());
}

template <typename S>
S series_recip(const S& a) {
  return series_pow(a, -1.0);
}

}  // namespace crcalc
