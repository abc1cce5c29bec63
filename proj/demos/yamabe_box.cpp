// Discrete Yamabe quotient on a Heisenberg box: the base structure against its
// glued variants, plus the same minimisation on two meshes.

#include <algorithm>
#include <cstdio>

#include "crcalc.hpp"
#include "crcalc/parse.hpp"

int main() {
  using namespace crcalc;
  const DeformationTensor phi(parse_field("0.1*(x^2+y^2) + 0.05i*x*y"));
  const double R0 = scalar_curvature(phi, {0, 0, 0});
  const YamabeReport rep = lambda_comparison_study(phi, R0, {0.4, 0.2, 0.1, 0.05}, BoxGrid(1.0, 17), {});
  std::printf("lambda_base %.6f (%d iterations)\n", rep.lambda_base, rep.base_iterations);
  std::printf("%8s %12s %12s %10s %10s\n", "delta", "lambda", "gap", "rel_gap", "converged");
  for (const auto& r : rep.rows)
    std::printf("%8.3f %12.6f %12.4e %10.2e %10s\n", r.delta, r.lambda_delta, r.gap, r.rel_gap,
                r.converged ? "yes" : "no");

  for (int n : {9, 17, 33}) {
    const auto prob = YamabeProblem::for_structure(phi, ScalarField(1.0), BoxGrid(1.0, n));
    const MinimizeResult m = minimize_quotient(prob, {});
    std::printf("n = %2d  lambda %.6f  max u %.4f\n", n, m.lambda, *std::max_element(m.u.values().begin(), m.u.values().end()));
  }
}
