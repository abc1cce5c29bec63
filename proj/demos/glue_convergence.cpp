// Glue the default demo tensor to its constant value at the origin and watch
// the sup errors shrink with the cutoff radius.

#include <cstdio>

#include "crcalc.hpp"
#include "crcalc/parse.hpp"

int main() {
  using namespace crcalc;
  const DeformationTensor phi(parse_field("0.1*(x^2+y^2) + 0.05i*x*y"));
  const double R0 = scalar_curvature(phi, {0, 0, 0});
  const ConvergenceReport rep = convergence_study(phi, R0, {0.4, 0.2, 0.1, 0.05}, BoxGrid(1.0, 33));
  std::printf("%8s %14s %14s %14s\n", "delta", "sup_phi_err", "sup_v_err", "sup_R_err");
  for (const auto& r : rep.rows)
    std::printf("%8.3f %14.6e %14.6e %14.6e\n", r.delta, r.sup_phi_err, r.sup_v_err, r.sup_R_err);
  std::printf("fitted slope %.3f, monotone %s\n", rep.slope, rep.monotone ? "yes" : "no");
}
