// Acceptance runner: one PASS/FAIL line per criterion. With arguments, runs
// only the listed criterion numbers. Exit status 1 if any selected criterion fails.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "crcalc/verify.hpp"

namespace {

using crcalc::verify::SuiteResult;

struct Criterion {
  int id;
  std::string title;
  double time_limit;  // seconds; 0 means none
  std::function<SuiteResult()> run;
};

std::vector<Criterion> criteria() {
  namespace v = crcalc::verify;
  return {
      {1, "structure equations hold on the corpus", 10, v::structure_equation},
      {2, "curvature matches the structure-equation oracle", 0, v::curvature_oracle},
      {3, "sublaplacian expansion matches its definition", 0, v::sublaplacian_cross},
      {4, "duality pairing pinned with second-order defect", 0, v::duality},
      {5, "flat and constant structures are curvature-free", 0, v::flat_constant},
      {6, "small-phi curvature expansion is second-order accurate", 0, v::small_phi},
      {7, "cutoff derivative bounds, exact plateau and support", 0, v::cutoff_bounds},
      {8, "glued structure normalization and region identities", 0, v::normalization},
      {9, "C0 curvature convergence of the glued structures", 120, [] { return v::glue_convergence(33); }},
      {10, "gradient-norm ratios inside the comparison envelope", 0, [] { return v::gradient_envelope(33); }},
      {11, "Dirichlet-proxy Yamabe constant convergence", 600, [] { return v::lambda_study(17, 33); }},
      {12, "convention constants reproduced by their oracles", 0, v::conventions},
  };
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    char* end = nullptr;
    const long id = std::strtol(argv[i], &end, 10);
    if (*end != '\0' || id < 1 || id > 12) {
      std::fprintf(stderr, "usage: %s [criterion 1..12]...\n", argv[0]);
      return 2;
    }
    selected.push_back(static_cast<int>(id));
  }
  bool all = true;
  for (const Criterion& c : criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    SuiteResult r = c.run();
    std::string timing;
    if (c.time_limit > 0 && r.seconds >= c.time_limit) {
      r.pass = false;
      timing = " runtime over the " + std::to_string(static_cast<int>(c.time_limit)) + " s limit;";
    }
    std::printf("[%s] %2d %s: %s (%.1f s)%s\n", r.pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                r.detail.c_str(), r.seconds, timing.c_str());
    std::fflush(stdout);
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
