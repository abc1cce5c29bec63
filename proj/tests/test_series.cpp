#include <gtest/gtest.h>

#include <cmath>

#include "crcalc/series.hpp"

using crcalc::Series1;
using crcalc::Series3;
using cd = std::complex<double>;

TEST(Series, ProductOfVariablesHasMixedCoefficient) {
  const Series3 x = Series3::variable(0, 2.0, 3);
  const Series3 y = Series3::variable(1, -1.0, 3);
  const Series3 p = x * y;
  EXPECT_EQ(p.value(), cd(-2.0));
  EXPECT_EQ(p.coeff({1, 0, 0}), cd(-1.0));
  EXPECT_EQ(p.coeff({0, 1, 0}), cd(2.0));
  EXPECT_EQ(p.coeff({1, 1, 0}), cd(1.0));
  EXPECT_EQ(p.coeff({2, 0, 0}), cd(0.0));
}

TEST(Series, ExpMatchesTaylorCoefficients) {
  const Series1 t = Series1::variable(0, 0.3, 4);
  const Series1 e = crcalc::series_exp(t);
  double fact = 1.0;
  for (int k = 0; k <= 4; ++k) {
    if (k > 0) fact *= k;
    EXPECT_NEAR(e[k].real(), std::exp(0.3) / fact, 1e-14);
  }
}

TEST(Series, RecipTimesSelfIsOne) {
  Series3 a = Series3::variable(0, 1.5, 4) * Series3::variable(2, 0.5, 4) +
              cd(0.0, 1.0) * Series3::variable(1, 0.2, 4);
  const Series3 r = crcalc::series_recip(a) * a;
  EXPECT_NEAR(std::abs(r.value() - 1.0), 0.0, 1e-14);
  for (int i = 1; i < r.size(); ++i) EXPECT_NEAR(std::abs(r[i]), 0.0, 1e-12) << i;
}

TEST(Series, PartialLowersOrder) {
  const Series3 x = Series3::variable(0, 1.0, 3);
  const Series3 c = x * x * x;  // (1 + dx)^3
  const Series3 d = c.partial(0);
  EXPECT_EQ(d.order(), 2);
  EXPECT_EQ(d.value(), cd(3.0));
  EXPECT_EQ(d.coeff({1, 0, 0}), cd(6.0));
  EXPECT_EQ(d.coeff({2, 0, 0}), cd(3.0));
}

TEST(Series, SqrtSquared) {
  const Series3 a = Series3::variable(1, 4.0, 4);
  const Series3 s = crcalc::series_pow(a, 0.5);
  const Series3 back = s * s;
  for (int i = 0; i < back.size(); ++i) EXPECT_NEAR(std::abs(back[i] - a[i]), 0.0, 1e-14);
}
