#include <gtest/gtest.h>

#include <cmath>

#include "crcalc/grid.hpp"
#include "crcalc/field.hpp"

using namespace crcalc;

namespace {
const ScalarField X = ScalarField::x(), Y = ScalarField::y(), Z = ScalarField::z();
}

TEST(BoxGrid, RejectsBadSizes) {
  for (int n : {0, 7, 8, 10, 32}) {
    try {
      BoxGrid g(1.0, n);
      FAIL() << n;
    } catch (const ConfigError& e) {
      EXPECT_EQ(e.field(), "grid.n");
    }
  }
  EXPECT_THROW(BoxGrid(0.0, 9), ConfigError);
  EXPECT_THROW(BoxGrid(-1.0, 9), ConfigError);
}

TEST(BoxGrid, OriginIsANodeAndIndexingRoundTrips) {
  const BoxGrid g(1.5, 13);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.25);
  const HPoint o = g.node(6, 6, 6);
  EXPECT_EQ(o.x, 0.0);
  EXPECT_EQ(o.y, 0.0);
  EXPECT_EQ(o.z, 0.0);
  const std::size_t idx = g.index(2, 5, 11);
  const HPoint a = g.node(idx), b = g.node(2, 5, 11);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.y, b.y);
  EXPECT_EQ(a.z, b.z);
  EXPECT_TRUE(g.on_boundary(0, 5, 5));
  EXPECT_TRUE(g.on_boundary(5, 12, 5));
  EXPECT_FALSE(g.on_boundary(1, 1, 11));
}

TEST(GridField, BoundaryRingIsZero) {
  const BoxGrid g(1.0, 9);
  const GridField f = GridField::sample(g, [](const HPoint&) { return 1.0; });
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      for (int k = 0; k < 9; ++k) EXPECT_EQ(f(i, j, k), g.on_boundary(i, j, k) ? 0.0 : 1.0);
  EXPECT_THROW(GridField(g, std::vector<double>(10)), ConfigError);
}

TEST(GridField, SecondOrderStencilsAreExactOnQuadratics) {
  const BoxGrid g(1.0, 9);
  const ScalarField u = 3.0 * X * X - X * Y + 0.5 * Y * Z + 2.0 * Z * Z + X - 4.0;
  // keep the ring: build from raw values
  std::vector<double> vals(g.size());
  for (std::size_t idx = 0; idx < g.size(); ++idx) vals[idx] = u(g.node(idx)).real();
  GridField f(g);
  f.values() = vals;
  for (auto [i, j, k] : {std::array{4, 4, 4}, std::array{0, 3, 8}, std::array{8, 8, 1}, std::array{2, 7, 0}}) {
    const Jet2 fd = f.jet(i, j, k);
    const Jet2 ex = u.jet2(g.node(i, j, k));
    EXPECT_NEAR(std::abs(fd.j1.d_z1 - ex.j1.d_z1), 0.0, 1e-11);
    EXPECT_NEAR(std::abs(fd.j1.d_t - ex.j1.d_t), 0.0, 1e-11);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) EXPECT_NEAR(std::abs(fd.d2[a][b] - ex.d2[a][b]), 0.0, 1e-10);
  }
}

TEST(GridField, FrameJetConvergesAtSecondOrder) {
  const ScalarField u = exp(0.4 * X - 0.3 * Y * Z + 0.2 * Z);
  auto err = [&](int n) {
    const BoxGrid g(1.0, n);
    const GridField f = GridField::sample(g, [&](const HPoint& p) { return u(p).real(); });
    const int c = n / 2, q = n / 4;  // node (0.5, 0, -0.5) style interior point
    const Jet2 fd = f.jet(c + q, c, c - q);
    const Jet2 ex = u.jet2(g.node(c + q, c, c - q));
    return std::abs(fd.d2[0][1] - ex.d2[0][1]) + std::abs(fd.j1.d_z1 - ex.j1.d_z1);
  };
  EXPECT_GE(std::log2(err(17) / err(33)), 1.8);
}

TEST(Trapezoid, ConstantsAndSecondOrder) {
  const BoxGrid g(1.0, 9);
  EXPECT_NEAR(trapezoid(g, [](int, int, int) { return 1.0; }), 8.0, 1e-12);
  auto err = [](int n) {
    const BoxGrid gr(1.0, n);
    const double v = trapezoid(gr, [&](int i, int, int) {
      const double x = gr.coord(i);
      return std::exp(x);
    });
    return std::abs(v - 4.0 * (std::exp(1.0) - std::exp(-1.0)));
  };
  EXPECT_NEAR(std::log2(err(17) / err(33)), 2.0, 0.05);
}
