#include <gtest/gtest.h>

#include <random>

#include "crcalc/corpus.hpp"
#include "crcalc/parse.hpp"
#include "crcalc/phcalc.hpp"

using namespace crcalc;

namespace {
const ScalarField X = ScalarField::x(), Y = ScalarField::y(), Z = ScalarField::z();

SyntaxError syntax_error(const std::string& src) {
  try {
    parse_field(src);
  } catch (const SyntaxError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for '" << src << "'";
  return SyntaxError(0, 0, {}, "");
}

void expect_same_values(const ScalarField& a, const ScalarField& b) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const HPoint p = corpus::random_point(rng, 0.9);
    EXPECT_NEAR(std::abs(a(p) - b(p)), 0.0, 1e-12 * (1 + std::abs(a(p))));
  }
}
}  // namespace

TEST(Parse, Zero) {
  const ScalarField f = parse_field("0");
  ASSERT_TRUE(f.is_constant());
  EXPECT_EQ(f({0.3, 0.2, 0.1}), cplx(0.0));
}

TEST(Parse, DemoTensor) {
  const ScalarField f = parse_field("0.1*(x^2+y^2) + 0.05i*x*y");
  expect_same_values(f, 0.1 * (X * X + Y * Y) + 0.05 * kI * X * Y);
  EXPECT_NO_THROW(DeformationTensor{f});
}

TEST(Parse, PrecedenceAndVariables) {
  expect_same_values(parse_field("-x^2"), -(X * X));
  expect_same_values(parse_field("2*x + 3*y/4 - z"), 2.0 * X + 0.75 * Y - Z);
  expect_same_values(parse_field("s"), pow(X * X + Y * Y, 2) + Z * Z);
  expect_same_values(parse_field("(1+x^2)^-0.5"), pow(1.0 + X * X, -0.5));
  expect_same_values(parse_field("conj(exp(i*x))"), exp(-kI * X));
  expect_same_values(parse_field("1e-1 * x + 2.5E+1"), 0.1 * X + 25.0);
  expect_same_values(parse_field("+x - -y"), X + Y);
}

TEST(Parse, ComplexLiteralsFold) {
  const ScalarField f = parse_field("0.2 - 0.3i");
  ASSERT_TRUE(f.is_constant());
  EXPECT_EQ(f({0, 0, 0}), cplx(0.2, -0.3));
  EXPECT_TRUE(parse_field("-0.5").is_constant());
  EXPECT_EQ(parse_field("-0.5")({0, 0, 0}), cplx(-0.5));
  EXPECT_EQ(parse_field("i")({0, 0, 0}), cplx(0, 1));
}

TEST(Parse, ErrorPositions) {
  const SyntaxError e = syntax_error("exp(");
  EXPECT_EQ(e.line(), 1);
  EXPECT_EQ(e.column(), 5);
  EXPECT_TRUE(e.expected().count("number"));
  EXPECT_TRUE(e.expected().count("("));

  const SyntaxError multi = syntax_error("x +\n  * y");
  EXPECT_EQ(multi.line(), 2);
  EXPECT_EQ(multi.column(), 3);

  EXPECT_EQ(syntax_error("(x + y").column(), 7);
  EXPECT_EQ(syntax_error("x y").column(), 3);
  EXPECT_EQ(syntax_error("foo(x)").column(), 1);
  EXPECT_EQ(syntax_error("2 * w").column(), 5);
  EXPECT_EQ(syntax_error("x^0.3").column(), 3);
  EXPECT_EQ(syntax_error("x^y").column(), 3);
  EXPECT_EQ(syntax_error("x^2^3").column(), 4);
  EXPECT_EQ(syntax_error("").column(), 1);
  EXPECT_EQ(syntax_error("exp x").column(), 5);
}

TEST(Parse, PrintedTreesParseBackIdentically) {
  for (const char* src : {"0.1*(x^2+y^2) + 0.05i*x*y", "-0.1 + 2.5i - x^-0.5*conj(exp(s/(1-2i)))",
                          "(-1-2i)*y^2 - -3i", "exp(-(x*z))/(2+y^2)", "x^0*0.5^-1"}) {
    const ScalarField f = parse_field(src);
    const ScalarField g = parse_field(to_string(f));
    EXPECT_TRUE(same_tree(f, g)) << src << " -> " << to_string(f);
    EXPECT_EQ(to_string(f), to_string(g));
  }
}

// Random corpus expressions: printing and reparsing is a fixed point after
// one pass and preserves values.
TEST(Parse, RoundTripProperty) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 200; ++k) {
    const ScalarField f = corpus::random_field(rng, 3);
    const ScalarField g = parse_field(to_string(f));
    const ScalarField h = parse_field(to_string(g));
    EXPECT_TRUE(same_tree(g, h)) << to_string(f);
    const HPoint p = corpus::random_point(rng, 0.9);
    cplx fv, gv;
    try {
      fv = f(p);
    } catch (const DomainError&) {
      continue;
    }
    gv = g(p);
    EXPECT_NEAR(std::abs(fv - gv), 0.0, 1e-12 * (1 + std::abs(fv))) << to_string(f);
  }
}
