#include <gtest/gtest.h>

#include <random>

#include "crcalc/corpus.hpp"
#include "crcalc/forms.hpp"

using namespace crcalc;

namespace {
const ScalarField X = ScalarField::x(), Y = ScalarField::y(), Z = ScalarField::z();
const HPoint kP{0.35, -0.6, 0.2};

void expect_form2(const Form2Value& v, cplx c11b, cplx ct1, cplx ct1b, double tol) {
  EXPECT_NEAR(std::abs(v.c11b - c11b), 0.0, tol);
  EXPECT_NEAR(std::abs(v.ct1 - ct1), 0.0, tol);
  EXPECT_NEAR(std::abs(v.ct1b - ct1b), 0.0, tol);
}
}  // namespace

TEST(Wedge, BasisProducts) {
  expect_form2(wedge(CoframeForm1::theta1(), CoframeForm1::theta1b())(kP), 1.0, 0.0, 0.0, 0.0);
  expect_form2(wedge(CoframeForm1::theta(), CoframeForm1::theta1())(kP), 0.0, 1.0, 0.0, 0.0);
  expect_form2(wedge(CoframeForm1::theta(), CoframeForm1::theta1b())(kP), 0.0, 0.0, 1.0, 0.0);
}

TEST(Wedge, SelfWedgeVanishes) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 10; ++k) {
    const CoframeForm1 a{corpus::random_field(rng, 2), corpus::random_field(rng, 2),
                         corpus::random_field(rng, 2)};
    const HPoint p = corpus::random_point(rng, 1.0);
    EXPECT_LE(wedge(a, a)(p).max_abs(), 1e-12);
  }
}

TEST(Wedge, Antisymmetric) {
  const CoframeForm1 a{X, Y * Z, exp(X)}, b{Z * Z, ScalarField(kI), X - Y};
  const Form2Value ab = wedge(a, b)(kP), ba = wedge(b, a)(kP);
  expect_form2(ab, -ba.c11b, -ba.ct1, -ba.ct1b, 1e-14);
}

TEST(ExteriorD, StructureSignPinnedByOracle) {
  EXPECT_EQ(calibrate_structure_sign(), kStructureSign);
  EXPECT_EQ(kStructureSign, +1);
  expect_form2(exterior_d(CoframeForm1::theta())(kP), cplx(0, kStructureSign), 0.0, 0.0, 0.0);
}

TEST(ExteriorD, VolumeDensityPinnedByOracle) {
  EXPECT_NEAR(calibrate_volume_density(), 2.0, 1e-9);
}

TEST(ExteriorD, CoframeIsClosed) {
  expect_form2(exterior_d(CoframeForm1::theta1())(kP), 0.0, 0.0, 0.0, 0.0);
  expect_form2(exterior_d(CoframeForm1::theta1b())(kP), 0.0, 0.0, 0.0, 0.0);
}

TEST(ExteriorD, SquareIsZero) {
  EXPECT_LE(exterior_d(differential(X * Z))(kP).max_abs(), 1e-9);
  const ScalarField f = exp(X * Y) * recip(2.0 + Z * Z) + kI * Y;
  EXPECT_LE(exterior_d(differential(f))(kP).max_abs(), 1e-9);
}

TEST(ExteriorD, LinearOverComplexConstants) {
  const CoframeForm1 a{X * Y, Z, exp(Y)}, b{ScalarField(1.0), X * X, Y * Z};
  const cplx c(0.3, -1.2);
  const CoframeForm1 lin = ScalarField(c) * a + b;
  const Form2Value l = exterior_d(lin)(kP);
  const Form2Value da = exterior_d(a)(kP), db = exterior_d(b)(kP);
  expect_form2(l, c * da.c11b + db.c11b, c * da.ct1 + db.ct1, c * da.ct1b + db.ct1b, 1e-13);
}

TEST(FdExteriorD, MatchesExactOnTheta) {
  const Form2Value exact = exterior_d(CoframeForm1::theta())(kP);
  const Form2Value fd = fd_exterior_d(CoframeForm1::theta(), kP, 1e-3);
  EXPECT_LE((exact - fd).max_abs(), 1e-9);
}

TEST(FdExteriorD, XdyHasUnitDxDy) {
  // x dy = x (theta1 - theta1b) / (2i)
  const ScalarField c = X * ScalarField(cplx(0, -0.5));
  const CoframeForm1 a{ScalarField(0.0), c, -c};
  const Form1Fn fn = [&a](const HPoint& q) { return a(q); };
  const Coord2 w = fd_exterior_d_coordinates(fn, kP, 1e-3);
  EXPECT_NEAR(std::abs(w.dxdy - 1.0), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(w.dxdz), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(w.dydz), 0.0, 1e-9);
}

TEST(FdExteriorD, ClosedOnExactPolynomialForms) {
  const CoframeForm1 a = differential(X * X * Y + Z * Y);
  EXPECT_LE(fd_exterior_d(a, kP, 1e-3).max_abs(), 1e-8);
}

TEST(FdExteriorD, SecondOrderAgreement) {
  const CoframeForm1 a{exp(X * Y), Z * recip(2.0 + X), kI * Y * exp(Z)};
  const Form2Value exact = exterior_d(a)(kP);
  const double e1 = (exterior_d(a)(kP) - fd_exterior_d(a, kP, 1e-2)).max_abs();
  const double e2 = (exact - fd_exterior_d(a, kP, 5e-3)).max_abs();
  EXPECT_GE(std::log2(e1 / e2), 1.8);
}

TEST(Coordinates, RoundTrip) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  for (int k = 0; k < 20; ++k) {
    const HPoint p = corpus::random_point(rng, 2.0);
    const Form1Value a{cplx(n(rng), n(rng)), cplx(n(rng), n(rng)), cplx(n(rng), n(rng))};
    const Form1Value b = from_coordinates(to_coordinates(a, p), p);
    EXPECT_NEAR(std::abs(a.theta - b.theta), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(a.one - b.one), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(a.oneb - b.oneb), 0.0, 1e-12);
  }
}

TEST(Reality, RealFormsDetected) {
  const std::vector<HPoint> probes{{0.1, 0.2, 0.3}, {-0.5, 0.4, 0.0}};
  const ScalarField g = X + kI * Y * Z;
  EXPECT_EQ(reality_defect(CoframeForm1{Z, g, conj(g)}, probes), 0.0);
  EXPECT_GT(reality_defect(CoframeForm1{kI * Z, g, g}, probes), 0.1);
}
