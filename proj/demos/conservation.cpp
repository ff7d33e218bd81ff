// Integrates the Maxwell-Bloch system and its canonical lift, printing invariant drift.
#include <cstdio>

#include "mbsym/integrators.hpp"

int main() {
  using namespace mbsym;
  using integrators::IntegratorId;
  using model::InvariantId;
  using model::SystemId;

  const std::vector<double> x0{1.0, 0.5, -0.3, 0.2, 0.1};
  const auto rk = integrators::integrate(IntegratorId::RK4, SystemId::MB5, x0, 0.0, 100.0, 1e-3);
  const auto d = integrators::drift_report(rk, {InvariantId::H, InvariantId::C, InvariantId::J});
  std::printf("rk4 mb5, h=1e-3, t in [0,100]\n");
  for (const auto& e : d.drifts) {
    std::printf("  %-2s  I(0) = % .6f   max rel drift = %.3e\n", std::string(model::to_string(e.id)).c_str(),
                e.initial, e.max_relative_deviation());
  }

  const std::vector<double> y0{1.0, -0.3, 0.0, 0.5, 0.2, 0.645};
  const auto mp = integrators::integrate(IntegratorId::IMPLICIT_MIDPOINT, SystemId::HAM6, y0, 0.0, 100.0, 1e-2);
  const auto e = integrators::drift_report(mp, {InvariantId::Htilde, InvariantId::Ctilde, InvariantId::Jtilde});
  std::printf("midpoint ham6, h=1e-2, t in [0,100]\n");
  for (const auto& v : e.drifts) {
    std::printf("  %-6s  max |dI| = %.3e\n", std::string(model::to_string(v.id)).c_str(), v.max_abs_deviation);
  }
  return 0;
}
