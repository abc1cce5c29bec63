#include <gtest/gtest.h>

#include <cmath>

#include "crcalc/gluing.hpp"

using namespace crcalc;

namespace {
const ScalarField X = ScalarField::x(), Y = ScalarField::y(), Z = ScalarField::z();
DeformationTensor demo() { return DeformationTensor(0.1 * (X * X + Y * Y) + 0.05 * kI * X * Y); }
double demo_R0() { return scalar_curvature(demo(), {0, 0, 0}); }
}  // namespace

TEST(MatchingFactor, MatchesCurvatureAtOrigin) {
  EXPECT_TRUE(matching_factor(0.0).is_constant());
  for (double R0 : {-0.05, 0.3, -1.2}) {
    const ScalarField u = matching_factor(R0);
    EXPECT_NEAR(conformal_curvature(DeformationTensor(ScalarField(0.0)), u, {0, 0, 0}), R0, 1e-12);
  }
  EXPECT_NEAR(demo_R0(), -0.05, 1e-12);
}

TEST(Glue, NormalizationGuards) {
  EXPECT_NO_THROW(glue(demo(), demo_R0(), 0.2));
  EXPECT_THROW(glue(demo(), demo_R0() + 0.1, 0.2), NormalizationError);
  EXPECT_THROW(glue(DeformationTensor(0.1 + 0.1 * X * X), 0.0, 0.2), NormalizationError);
  EXPECT_THROW(glue(DeformationTensor(0.1 * X), 0.0, 0.2), NormalizationError);
  EXPECT_THROW(glue(demo(), demo_R0(), 0.0), RangeError);
}

TEST(Glue, CurvatureAtOriginIsPreserved) {
  for (double d : {0.4, 0.2, 0.1, 0.05})
    EXPECT_NEAR(glued_curvature(glue(demo(), demo_R0(), d), {0, 0, 0}), demo_R0(), 1e-8) << d;
}

TEST(Glue, RegionIdentitiesAreExact) {
  const GluedStructure gs = glue(demo(), demo_R0(), 0.3);
  const DeformationTensor phi = demo();
  int outside = 0, plateau = 0;
  for (const HPoint& p : study_points(BoxGrid(1.0, 9), gs.cutoff)) {
    if (gs.outside(p)) {
      ++outside;
      EXPECT_EQ(gs.phi_delta(p), phi(p));
      EXPECT_EQ(gs.v_delta(p), cplx(1.0));
    }
    if (gs.in_plateau(p)) {
      ++plateau;
      EXPECT_EQ(gs.phi_delta(p), cplx(0.0));
      EXPECT_EQ(gs.v_delta(p), gs.u(p));
    }
  }
  EXPECT_GT(outside, 100);
  EXPECT_GT(plateau, 10);
}

TEST(DilatedProbes, StayInsideTheGaugeBall) {
  const CutoffProfile c = make_cutoff(0.2);
  const auto pts = dilated_probes(c);
  EXPECT_GT(pts.size(), 16u * 50u);
  for (const HPoint& p : pts) EXPECT_LE(koranyi_gauge(p).rho, c.delta * (1 + 1e-12));
}

TEST(LogLogSlope, FitsPowerLaws) {
  EXPECT_NEAR(loglog_slope({0.4, 0.2, 0.1}, {0.8, 0.4, 0.2}), 1.0, 1e-12);
  EXPECT_NEAR(loglog_slope({0.4, 0.2, 0.1}, {0.16, 0.04, 0.01}), 2.0, 1e-12);
  EXPECT_TRUE(std::isnan(loglog_slope({0.4, 0.2}, {0.0, 0.0})));
  EXPECT_TRUE(std::isnan(loglog_slope({0.4}, {1.0})));
}

TEST(ConvergenceStudy, RejectsBadDeltaLists) {
  const BoxGrid g(1.0, 9);
  try {
    convergence_study(demo(), demo_R0(), {0.1, 0.2}, g);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "deltas");
  }
  EXPECT_THROW(convergence_study(demo(), demo_R0(), {}, g), ConfigError);
  EXPECT_THROW(convergence_study(demo(), demo_R0(), {1.5, 0.1}, g), ConfigError);
}

TEST(ConvergenceStudy, TrivialFamilyHasZeroErrors) {
  const ConvergenceReport r =
      convergence_study(DeformationTensor(ScalarField(0.0)), 0.0, {0.4, 0.2, 0.1, 0.05}, BoxGrid(1.0, 9));
  ASSERT_EQ(r.rows.size(), 4u);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.sup_phi_err, 0.0);
    EXPECT_EQ(row.sup_v_err, 0.0);
    EXPECT_EQ(row.sup_R_err, 0.0);
  }
  EXPECT_TRUE(std::isnan(r.slope));
}

TEST(ConvergenceStudy, DemoConvergesAtFirstOrder) {
  const ConvergenceReport r = convergence_study(demo(), demo_R0(), {0.4, 0.2, 0.1, 0.05}, BoxGrid(1.0, 17));
  EXPECT_TRUE(r.monotone);
  EXPECT_GE(r.slope, 0.8);
  const auto phi_err = r.column(&ConvergenceRow::sup_phi_err);
  const auto v_err = r.column(&ConvergenceRow::sup_v_err);
  for (std::size_t k = 1; k < phi_err.size(); ++k) {
    EXPECT_LE(phi_err[k], 1.05 * phi_err[k - 1]);
    EXPECT_LE(v_err[k], 1.05 * v_err[k - 1]);
  }
}

TEST(UniformBounds, FlatFamilyIsConstant) {
  std::vector<GluedStructure> fam;
  for (double d : {0.4, 0.2, 0.1}) fam.push_back(glue(DeformationTensor(ScalarField(0.0)), 0.0, d));
  const UniformBoundsReport r = uniform_bounds_report(fam, BoxGrid(1.0, 9));
  EXPECT_TRUE(r.pass());
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.sup_F, 1.0);
    EXPECT_EQ(row.sup_v, 1.0);
    EXPECT_EQ(row.inf_v, 1.0);
    EXPECT_EQ(row.sup_phi_dd, 0.0);
    EXPECT_EQ(row.sup_v_d, 0.0);
    EXPECT_EQ(row.sup_v_dd, 0.0);
  }
}

TEST(UniformBounds, DemoFamilyStaysInsideItsEnvelopes) {
  std::vector<GluedStructure> fam;
  for (double d : {0.4, 0.2, 0.1, 0.05}) fam.push_back(glue(demo(), demo_R0(), d));
  const UniformBoundsReport r = uniform_bounds_report(fam, BoxGrid(1.0, 9));
  EXPECT_TRUE(r.pass());
  for (const auto& row : r.rows) {
    EXPECT_TRUE(row.F_envelope);
    EXPECT_TRUE(row.v_envelope);
    EXPECT_GE(row.sup_F, 1.0);
    EXPECT_LE(row.sup_F, r.sup_F_base * (1 + 1e-14));
  }
}
