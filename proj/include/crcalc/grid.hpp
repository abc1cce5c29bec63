#pragma once

// Uniform box grids over [-L, L]^3, grid fields with a zero boundary ring,
// finite-difference frame jets and trapezoid quadrature.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "crcalc/errors.hpp"
#include "crcalc/hgroup.hpp"

namespace crcalc {

class BoxGrid {
 public:
  // n >= 9 and odd, so the origin is a node.
  BoxGrid(double half_width, int n) : L_(half_width), n_(n) {
    if (!(half_width > 0.0)) throw ConfigError("grid.L", "box half-width must be positive");
    if (n < 9 || n % 2 == 0) throw ConfigError("grid.n", "grid size must be odd and >= 9");
    h_ = 2.0 * L_ / (n_ - 1);
  }

  double half_width() const { return L_; }
  int n() const { return n_; }
  double spacing() const { return h_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }

  double coord(int i) const { return -L_ + i * h_; }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }
  HPoint node(int i, int j, int k) const { return {coord(i), coord(j), coord(k)}; }
  HPoint node(std::size_t idx) const {
    const int k = static_cast<int>(idx % n_);
    const int j = static_cast<int>((idx / n_) % n_);
    const int i = static_cast<int>(idx / (static_cast<std::size_t>(n_) * n_));
    return node(i, j, k);
  }
  bool on_boundary(int i, int j, int k) const {
    return i == 0 || j == 0 || k == 0 || i == n_ - 1 || j == n_ - 1 || k == n_ - 1;
  }

  std::vector<HPoint> nodes() const {
    std::vector<HPoint> pts;
    pts.reserve(size());
    for (std::size_t idx = 0; idx < size(); ++idx) pts.push_back(node(idx));
    return pts;
  }

 private:
  double L_;
  int n_;
  double h_ = 0;
};

namespace detail {

struct Stencil {
  int count = 0;
  int offset[4]{};
  double weight[4]{};
};

// Second-order first-derivative stencil at index i (one-sided at the ends).
inline Stencil first_stencil(int i, int n, double h) {
  if (i == 0) return {3, {0, 1, 2}, {-1.5 / h, 2.0 / h, -0.5 / h}};
  if (i == n - 1) return {3, {0, -1, -2}, {1.5 / h, -2.0 / h, 0.5 / h}};
  return {2, {1, -1}, {0.5 / h, -0.5 / h}};
}

// Second-order second-derivative stencil at index i.
inline Stencil second_stencil(int i, int n, double h) {
  const double q = 1.0 / (h * h);
  if (i == 0) return {4, {0, 1, 2, 3}, {2 * q, -5 * q, 4 * q, -q}};
  if (i == n - 1) return {4, {0, -1, -2, -3}, {2 * q, -5 * q, 4 * q, -q}};
  return {3, {-1, 0, 1}, {q, -2 * q, q}};
}

}  // namespace detail

class GridField {
 public:
  explicit GridField(const BoxGrid& grid) : grid_(grid), values_(grid.size(), 0.0) {}
  GridField(const BoxGrid& grid, std::vector<double> values)
      : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw ConfigError("grid field", "size mismatch");
    zero_boundary();
  }

  // Samples f at the nodes; the boundary ring is forced to 0.
  static GridField sample(const BoxGrid& grid, const std::function<double(const HPoint&)>& f) {
    GridField g(grid);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) g.values_[idx] = f(grid.node(idx));
    g.zero_boundary();
    return g;
  }

  const BoxGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  double operator()(int i, int j, int k) const { return values_[grid_.index(i, j, k)]; }
  double operator[](std::size_t idx) const { return values_[idx]; }

  void zero_boundary() {
    const int n = grid_.n();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (grid_.on_boundary(i, j, k)) values_[grid_.index(i, j, k)] = 0.0;
  }

  // Coordinate partials by second-order differences (one-sided at the ring).
  CoordinatePartials partials(int i, int j, int k) const {
    const int n = grid_.n();
    const double h = grid_.spacing();
    const int idx[3] = {i, j, k};
    auto at = [&](int di, int dj, int dk) { return (*this)(i + di, j + dj, k + dk); };
    auto shift = [](int axis, int o, int out[3]) {
      out[0] = out[1] = out[2] = 0;
      out[axis] = o;
    };
    double d1[3], d2[3], mixed[3];
    for (int a = 0; a < 3; ++a) {
      const detail::Stencil s1 = detail::first_stencil(idx[a], n, h);
      const detail::Stencil s2 = detail::second_stencil(idx[a], n, h);
      d1[a] = d2[a] = 0.0;
      int o[3];
      for (int m = 0; m < s1.count; ++m) {
        shift(a, s1.offset[m], o);
        d1[a] += s1.weight[m] * at(o[0], o[1], o[2]);
      }
      for (int m = 0; m < s2.count; ++m) {
        shift(a, s2.offset[m], o);
        d2[a] += s2.weight[m] * at(o[0], o[1], o[2]);
      }
    }
    // mixed (x,y), (x,z), (y,z)
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (int p = 0; p < 3; ++p) {
      const int a = pairs[p][0], b = pairs[p][1];
      const detail::Stencil sa = detail::first_stencil(idx[a], n, h);
      const detail::Stencil sb = detail::first_stencil(idx[b], n, h);
      mixed[p] = 0.0;
      for (int ma = 0; ma < sa.count; ++ma)
        for (int mb = 0; mb < sb.count; ++mb) {
          int o[3] = {0, 0, 0};
          o[a] = sa.offset[ma];
          o[b] = sb.offset[mb];
          mixed[p] += sa.weight[ma] * sb.weight[mb] * at(o[0], o[1], o[2]);
        }
    }
    return {at(0, 0, 0), d1[0], d1[1], d1[2], d2[0], d2[1], d2[2], mixed[0], mixed[1], mixed[2]};
  }

  // Frame jet from the finite-difference coordinate partials.
  Jet2 jet(int i, int j, int k) const {
    return frame_jet(local_series(partials(i, j, k)), grid_.node(i, j, k));
  }

 private:
  BoxGrid grid_;
  std::vector<double> values_;
};

// Composite trapezoid rule of nodal values over the box.
inline double trapezoid(const BoxGrid& grid, const std::function<double(int, int, int)>& f) {
  const int n = grid.n();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double wi = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    for (int j = 0; j < n; ++j) {
      const double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      for (int k = 0; k < n; ++k) {
        const double wk = (k == 0 || k == n - 1) ? 0.5 : 1.0;
        sum += wi * wj * wk * f(i, j, k);
      }
    }
  }
  const double h = grid.spacing();
  return sum * h * h * h;
}

}  // namespace crcalc
