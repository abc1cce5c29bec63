#pragma once

// Reference fields shared by the verification suites and the tests: a fixed
// corpus of admissible deformation tensors (|phi| <= 0.5 on [-1,1]^3), real
// test functions, and a seeded generator of random polynomial/rational fields.

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "crcalc/field.hpp"
#include "crcalc/hgroup.hpp"

namespace crcalc::corpus {

struct NamedField {
  std::string name;
  ScalarField field;
};

inline std::vector<NamedField> deformation_tensors() {
  const ScalarField x = ScalarField::x(), y = ScalarField::y(), z = ScalarField::z();
  const cplx i = kI;
  return {
      {"demo", 0.1 * (x * x + y * y) + 0.05 * i * x * y},
      {"z-linear", 0.2 * z + 0.1 * i * x * x},
      {"holomorphic-square", 0.15 * pow(x + i * y, 2)},
      {"exp-xz", 0.1 * exp(x * z)},
      {"cubic", 0.2 * y * z + 0.1 * i * pow(x, 3)},
      {"rational-x", 0.1 * x * recip(2.0 + y * y)},
      {"mixed", 0.1 * (x - i * z) * y},
      {"quadratic-z", 0.05 * (x * x + y * y + z * z) + 0.1 * i * z * x},
      {"phase", 0.12 * exp(i * x * y) * z},
      {"rational-z", 0.1 * (x + i * y) * recip(1.5 + z)},
      {"sqrt", 0.1 * sqrt(2.0 + x * y) - 0.1 * std::sqrt(2.0)},
      {"z-square", 0.2 * z * z - 0.1 * i * y},
  };
}

// Real test functions for sublaplacian / gradient checks.
inline std::vector<NamedField> real_functions() {
  const ScalarField x = ScalarField::x(), y = ScalarField::y(), z = ScalarField::z();
  return {
      {"x2+yz", x * x + y * z},
      {"exp", exp(0.3 * x - 0.2 * z + 0.1 * y * y)},
      {"rational", recip(1.5 + x * x + z)},
      {"cubic", pow(x, 3) - x * y * z + y},
      {"gauge", ScalarField::gauge() + x},
  };
}

inline HPoint random_point(std::mt19937_64& rng, double half_width) {
  std::uniform_real_distribution<double> u(-half_width, half_width);
  const double a = u(rng), b = u(rng), c = u(rng);
  return {a, b, c};
}

// Random expression of the given depth built from x, y, z, complex constants,
// +, -, *, exp, conj and guarded rationals 1/(2 + g conj(g)).
inline ScalarField random_field(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 9);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const int k = pick(rng);
  switch (k) {
    case 0: return ScalarField::x();
    case 1: return ScalarField::y();
    case 2: return ScalarField::z();
    case 3: {
      const double re = coef(rng), im = coef(rng);
      return ScalarField(cplx(re, im));
    }
    case 4:
    case 5: {
      ScalarField a = random_field(rng, depth - 1);
      return a + random_field(rng, depth - 1);
    }
    case 6: {
      ScalarField a = random_field(rng, depth - 1);
      return a - random_field(rng, depth - 1);
    }
    case 7: {
      ScalarField a = random_field(rng, depth - 1);
      return a * random_field(rng, depth - 1);
    }
    case 8: {
      const ScalarField g = random_field(rng, depth - 1);
      return recip(2.0 + g * conj(g));
    }
    default: return exp(0.5 * random_field(rng, depth - 1));
  }
}

}  // namespace crcalc::corpus
