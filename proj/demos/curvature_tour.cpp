// Scalar curvature of a few deformation tensors, computed from exact jets and
// checked against the finite-difference structure-equation oracle.

#include <cstdio>

#include "crcalc.hpp"

int main() {
  using namespace crcalc;
  const HPoint p{0.2, 0.1, 0.05};
  std::printf("point (%.2f, %.2f, %.2f)\n%-36s %16s %16s %10s\n", p.x, p.y, p.z, "phi", "R", "oracle", "gap");
  for (const auto& [name, field] : corpus::deformation_tensors()) {
    const DeformationTensor phi(field);
    const double R = scalar_curvature(phi, p);
    const double o = curvature_via_structure_eq(phi, p, 2.5e-3);
    std::printf("%-36s %16.10f %16.10f %10.2e\n", name.c_str(), R, o, std::abs(R - o));
  }
}
