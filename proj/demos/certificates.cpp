// Prints the symmetry basis, the pushed-forward field and a one-line summary of every check.
#include <cstdio>

#include "mbsym/verify.hpp"

int main() {
  using namespace mbsym;
  const auto sol = symmetry::solve_determining(2);
  std::printf("point symmetries (degree <= 2): dimension %zu\n", sol.basis.size());
  for (const auto& u : sol.basis) std::printf("  %s\n", u.field().str().c_str());

  const auto x = symmetry::pushforward_phi(symmetry::pushforward_fl(symmetry::family_field(symmetry::paper_family())));
  std::printf("pushed-forward field on (t, x):\n  %s\n", x.field().str().c_str());
  const auto cls = symmetry::dynamics_commutator(x);
  std::printf("[X,V] = (%s) V\n", cls.factor ? cls.factor->str().c_str() : "?");

  int failed = 0;
  for (const auto& r : verify::run_suite("all")) {
    std::printf("%-34s %s  %.2f ms\n", r.check.c_str(), r.passed ? "pass" : "FAIL", r.elapsed_ms);
    failed += r.passed ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
