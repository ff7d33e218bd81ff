#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mbsym/model.hpp"
#include "mbsym/poisson.hpp"
#include "mbsym/report.hpp"
#include "mbsym/symmetry.hpp"

// Verification suites. Each suite is a fixed, ordered list of checks; every
// check yields a VerificationReport whose residuals must all be the zero
// polynomial. The objects under test (the Poisson tensor and the symmetry
// family) come from a Fixture so that corrupted inputs can be fed through the
// same code path.

namespace mbsym::verify {

using model::InvariantId;
using model::SystemId;

struct Fixture {
  poisson::PoissonTensor pi = poisson::standard_poisson_tensor();
  std::vector<symmetry::FamilyTerm> family = symmetry::paper_family();
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"poisson",  "cocycle",     "realization", "algebra",
                                              "symmetry", "variational", "noether",     "pushforward"};
  return names;
}

namespace detail {

using Check = std::function<void(VerificationReport&)>;

inline VerificationReport run_check(const std::string& name, const Check& body) {
  return timed(name, [&](VerificationReport& r) {
    try {
      body(r);
    } catch (const std::exception& e) {
      r.require(std::string("completed without error (") + e.what() + ")", false);
    }
  });
}

inline std::vector<Poly> difference(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  std::vector<Poly> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
  return out;
}

inline std::vector<Poly> difference(const symmetry::VectorField& a, const symmetry::VectorField& b) {
  return difference(a.components, b.components);
}

inline std::string table_str(const poisson::CommutatorTable& t, const char* prefix) {
  std::string s;
  for (std::size_t i = 0; i < t.dim(); ++i) {
    for (std::size_t j = i + 1; j < t.dim(); ++j) {
      std::string rhs;
      for (std::size_t k = 0; k < t.dim(); ++k) {
        const Rational& c = t.at(i, j, k);
        if (c.is_zero()) continue;
        rhs += (rhs.empty() ? "" : " + ") + (c.is_one() ? std::string() : c.str() + "*") + prefix +
               std::to_string(k + 1);
      }
      s += (s.empty() ? "" : ", ") + std::string("[") + prefix + std::to_string(i + 1) + "," + prefix +
           std::to_string(j + 1) + "]=" + (rhs.empty() ? "0" : rhs);
    }
  }
  return s;
}

/// [B1,B2]=B2, [B1,B3]=-B3, all other brackets zero.
inline poisson::CommutatorTable stated_symmetry_table() {
  poisson::CommutatorTable t(4);
  t.at(0, 1, 1) = Rational(1);
  t.at(1, 0, 1) = Rational(-1);
  t.at(0, 2, 2) = Rational(-1);
  t.at(2, 0, 2) = Rational(1);
  return t;
}

/// [E2,E5]=E1, [E4,E5]=E3, all other brackets zero.
inline poisson::CommutatorTable stated_e_table() {
  poisson::CommutatorTable t(5);
  t.at(1, 4, 0) = Rational(1);
  t.at(4, 1, 0) = Rational(-1);
  t.at(3, 4, 2) = Rational(1);
  t.at(4, 3, 2) = Rational(-1);
  return t;
}

inline Poly table_residual(const poisson::CommutatorTable& got, const poisson::CommutatorTable& want, std::size_t i,
                           std::size_t j) {
  static const VarSet scalar{"c"};
  Poly r(scalar);
  for (std::size_t k = 0; k < got.dim(); ++k) {
    const Rational d = got.at(i, j, k) - want.at(i, j, k);
    if (!d.is_zero()) r += Poly::monomial(scalar, {static_cast<std::uint32_t>(k + 1)}, d);
  }
  return r;
}

}  // namespace detail

inline std::vector<VerificationReport> poisson_suite(const Fixture& fx) {
  using namespace poisson;
  using detail::run_check;
  const auto& pi = fx.pi;
  const auto& vs = model::state5_vars();
  const Poly H = model::invariant_symbolic(InvariantId::H);
  const Poly C = model::invariant_symbolic(InvariantId::C);
  const Poly J = model::invariant_symbolic(InvariantId::J);
  std::vector<VerificationReport> out;
  out.push_back(run_check("poisson.antisymmetry", [&](VerificationReport& r) {
    r.residuals_of("pi + pi^T", antisymmetry_residual(pi));
  }));
  out.push_back(run_check("poisson.jacobi", [&](VerificationReport& r) {
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = i + 1; j < 5; ++j) {
        for (std::size_t k = j + 1; k < 5; ++k) {
          r.residual("jacobi(" + vs.name(i) + "," + vs.name(j) + "," + vs.name(k) + ")", jacobi_residual(i, j, k, pi));
        }
      }
    }
  }));
  out.push_back(run_check("poisson.casimir", [&](VerificationReport& r) {
    r.residuals_of("pi*grad(C)", casimir_residual(pi));
  }));
  out.push_back(run_check("poisson.ham_field", [&](VerificationReport& r) {
    r.residuals_of("pi*grad(H) - rhs(mb5)",
                   detail::difference(ham_vector_field(pi, H), model::rhs_symbolic(SystemId::MB5)));
    const std::vector<Poly> xj{Poly::parse(vs, "-x2"), Poly::parse(vs, "-y2"), Poly::parse(vs, "x1"),
                               Poly::parse(vs, "y1"), Poly(vs)};
    r.residuals_of("pi*grad(J) - (-x2,-y2,x1,y1,0)", detail::difference(ham_vector_field(pi, J), xj));
  }));
  out.push_back(run_check("poisson.involution", [&](VerificationReport& r) {
    r.residual("{H,C}", poisson_bracket(H, C, pi));
    r.residual("{H,J}", poisson_bracket(H, J, pi));
    r.residual("{C,J}", poisson_bracket(C, J, pi));
  }));
  out.push_back(run_check("poisson.assembly", [&](VerificationReport& r) {
    const auto theta = paper_cocycle();
    const auto assembled = assemble_modified_lie_poisson(
        StructureConstants::from(matrix_commutator_table(e_basis()), theta), theta);
    const auto displayed = displayed_poisson_tensor();
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) {
        const std::string at = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
        r.residual("assembled - displayed " + at, assembled(i, j) - displayed(i, j));
        r.residual("pi - assembled " + at, pi(i, j) - assembled(i, j));
      }
    }
  }));
  return out;
}

inline std::vector<VerificationReport> cocycle_suite(const Fixture& /*fx*/) {
  using namespace poisson;
  std::vector<VerificationReport> out;
  out.push_back(detail::run_check("cocycle.e_table", [](VerificationReport& r) {
    const auto got = matrix_commutator_table(e_basis());
    const auto want = detail::stated_e_table();
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = i + 1; j < 5; ++j) {
        r.residual("[E" + std::to_string(i + 1) + ",E" + std::to_string(j + 1) + "] - stated",
                   detail::table_residual(got, want, i, j));
      }
    }
    r.witness("table: " + detail::table_str(got, "E"));
  }));
  out.push_back(detail::run_check("cocycle.iso_Phi", [](VerificationReport& r) {
    const auto rep = iso_check_Phi();
    r.residuals = rep.residuals;
    r.witnesses = rep.witnesses;
    r.require("Phi is a Lie algebra isomorphism", rep.passed);
  }));
  out.push_back(detail::run_check("cocycle.theta", [](VerificationReport& r) {
    const auto rep = cocycle_check(paper_cocycle());
    r.residuals = rep.residuals;
    r.witnesses = rep.witnesses;
    r.require("Theta is a 2-cocycle and not a coboundary", rep.passed);
  }));
  return out;
}

inline std::vector<VerificationReport> realization_suite(const Fixture& /*fx*/) {
  using detail::run_check;
  std::vector<VerificationReport> out;
  const auto phi = model::phi_symbolic();
  const auto& s6 = model::state6_vars();
  auto via_phi = [&](const Poly& f) { return compose(f, phi, s6); };
  out.push_back(run_check("realization.invariants", [&](VerificationReport& r) {
    r.residual("H o phi - Htilde",
               via_phi(model::invariant_symbolic(InvariantId::H)) - model::invariant_symbolic(InvariantId::Htilde));
    r.residual("C o phi - p3",
               via_phi(model::invariant_symbolic(InvariantId::C)) - model::invariant_symbolic(InvariantId::Ctilde));
    r.residual("J o phi - Jtilde",
               via_phi(model::invariant_symbolic(InvariantId::J)) - model::invariant_symbolic(InvariantId::Jtilde));
  }));
  out.push_back(run_check("realization.hamiltonian", [&](VerificationReport& r) {
    // Canonical equations generated from Htilde: qdot = dH/dp, pdot = -dH/dq.
    const Poly ht = model::invariant_symbolic(InvariantId::Htilde);
    std::vector<Poly> canonical;
    for (const char* p : {"p1", "p2", "p3"}) canonical.push_back(diff(ht, p));
    for (const char* q : {"q1", "q2", "q3"}) canonical.push_back(-diff(ht, q));
    r.residuals_of("X_Htilde - rhs(ham6)", detail::difference(canonical, model::rhs_symbolic(SystemId::HAM6)));
  }));
  out.push_back(run_check("realization.phi_maps_flow", [&](VerificationReport& r) {
    const auto jac = model::phi_jacobian_symbolic();
    const auto g = model::rhs_symbolic(SystemId::HAM6);
    const auto f = model::rhs_symbolic(SystemId::MB5);
    std::vector<Poly> res;
    for (std::size_t i = 0; i < 5; ++i) {
      Poly lhs(s6);
      for (std::size_t j = 0; j < 6; ++j) lhs += jac(i, j) * g[j];
      res.push_back(lhs - via_phi(f[i]));
    }
    r.residuals_of("Dphi*rhs(ham6) - rhs(mb5) o phi", res);
  }));
  out.push_back(run_check("realization.phi_submersion", [&](VerificationReport& r) {
    for (const auto& sample : {model::State6{0, 0, 0, 0, 0, 0}, model::State6{1, 2, 3, 0, 0, 0},
                               model::State6{-0.7, 1.5, 2.25, 0.125, -3, 4}}) {
      const auto rank = model::jacobian_rank_phi(sample);
      r.require("rank Dphi = 5 at (" + std::to_string(sample.q1) + "," + std::to_string(sample.q2) + ",...)",
                rank == 5);
    }
  }));
  out.push_back(run_check("realization.legendre", [&](VerificationReport& r) {
    const auto& t6 = model::tangent6_vars();
    const auto fl = model::legendre_symbolic();
    const Poly lag = model::invariant_symbolic(InvariantId::L);
    Poly sum_pv(t6);
    for (int i = 1; i <= 3; ++i) sum_pv += fl.at("p" + std::to_string(i)) * Poly::variable(t6, "qd" + std::to_string(i));
    r.residual("Htilde o FL - (sum p_i qd_i - L)",
               compose(model::invariant_symbolic(InvariantId::Htilde), fl, t6) - (sum_pv - lag));
    const auto inv = model::legendre_inverse_symbolic();
    for (int i = 1; i <= 3; ++i) {
      const auto k = std::to_string(i);
      r.residual("FL o FL^-1 : p" + k, compose(fl.at("p" + k), inv, s6) - Poly::variable(s6, "p" + k));
      r.residual("FL^-1 o FL : qd" + k, compose(inv.at("qd" + k), fl, t6) - Poly::variable(t6, "qd" + k));
    }
  }));
  out.push_back(run_check("realization.euler_lagrange", [&](VerificationReport& r) {
    // d/dt dL/dqd_i - dL/dq_i must reproduce the second-order system.
    const auto& so = model::second_order_vars();
    const Poly lag = rebase(model::invariant_symbolic(InvariantId::L), so);
    auto dt = [&](const Poly& f) {
      Poly o(so);
      for (int i = 1; i <= 3; ++i) {
        const auto k = std::to_string(i);
        o += Poly::variable(so, "qd" + k) * diff(f, "q" + k) + Poly::variable(so, "qdd" + k) * diff(f, "qd" + k);
      }
      return o;
    };
    const auto expected = model::euler_lagrange_residuals();
    for (int i = 1; i <= 3; ++i) {
      const auto k = std::to_string(i);
      r.residual("EL_" + k + " - stated", dt(diff(lag, "qd" + k)) - diff(lag, "q" + k) - expected[i - 1]);
    }
    // Hamilton's equations differentiate into the same system: substitute qdd from the first-order form.
    Bindings acc;
    const auto el6 = model::rhs_symbolic(SystemId::EL6);
    for (int i = 1; i <= 3; ++i) acc.emplace("qdd" + std::to_string(i), rebase(el6[2 + i], so));
    for (int i = 0; i < 3; ++i) r.residual("EL residual on el6 flow [" + std::to_string(i) + "]", substitute(expected[i], acc));
  }));
  return out;
}

inline std::vector<VerificationReport> algebra_suite(const Fixture& fx) {
  using detail::run_check;
  std::vector<VerificationReport> out;
  const auto basis_arr = symmetry::paper_basis(fx.family);
  const std::vector<symmetry::JetVectorField> basis(basis_arr.begin(), basis_arr.end());
  out.push_back(run_check("algebra.symmetry_table", [&](VerificationReport& r) {
    const auto got = symmetry::algebra_table(basis, 1);
    const auto want = detail::stated_symmetry_table();
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) {
        r.residual("[u" + std::to_string(i + 1) + ",u" + std::to_string(j + 1) + "] - stated",
                   detail::table_residual(got, want, i, j));
      }
    }
    r.witness("table: " + detail::table_str(got, "u"));
  }));
  out.push_back(run_check("algebra.jacobi", [&](VerificationReport& r) {
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) {
        for (std::size_t k = j + 1; k < 4; ++k) {
          using symmetry::lie_bracket;
          const auto sum = lie_bracket(basis[i].field(), lie_bracket(basis[j].field(), basis[k].field())) +
                           lie_bracket(basis[j].field(), lie_bracket(basis[k].field(), basis[i].field())) +
                           lie_bracket(basis[k].field(), lie_bracket(basis[i].field(), basis[j].field()));
          r.residuals_of("jacobi(u" + std::to_string(i + 1) + ",u" + std::to_string(j + 1) + ",u" +
                             std::to_string(k + 1) + ")",
                         sum.components);
        }
      }
    }
  }));
  out.push_back(run_check("algebra.matrix_isomorphism", [&](VerificationReport& r) {
    const auto s = symmetry::algebra_table(basis, 1);
    const auto sg = poisson::matrix_commutator_table(poisson::a_basis());
    const auto want = detail::stated_symmetry_table();
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) {
        const auto tag = std::to_string(i + 1) + std::to_string(j + 1);
        r.residual("s_g[A" + tag + "] - stated", detail::table_residual(sg, want, i, j));
        r.residual("s[u" + tag + "] - s_g[A" + tag + "]", detail::table_residual(s, sg, i, j));
      }
    }
    r.witness("s_g table: " + detail::table_str(sg, "A"));
  }));
  return out;
}

inline std::vector<VerificationReport> symmetry_suite(const Fixture& fx) {
  using detail::run_check;
  std::vector<VerificationReport> out;
  const auto u = symmetry::family_field(fx.family);
  out.push_back(run_check("symmetry.family_determining", [&](VerificationReport& r) {
    r.residuals_of("pr2(u) Delta (symbolic alpha..delta)", symmetry::determining_residuals(u));
  }));
  out.push_back(run_check("symmetry.solve_degree2", [&](VerificationReport& r) {
    const auto sol = symmetry::solve_determining(2);
    r.witness("unknowns=" + std::to_string(sol.unknowns) + " equations=" + std::to_string(sol.equations) +
              " dimension=" + std::to_string(sol.basis.size()));
    for (const auto& b : sol.basis) r.witness("basis: " + b.field().str());
    r.require("dimension = 4", sol.basis.size() == 4);
    const auto ub = symmetry::paper_basis(fx.family);
    r.require("span equals span{u1,u2,u3,u4}",
              symmetry::same_span(sol.basis, {ub.begin(), ub.end()}, 2));
    for (std::size_t i = 0; i < sol.basis.size(); ++i) {
      r.residuals_of("basis[" + std::to_string(i) + "] residuals", symmetry::determining_residuals(sol.basis[i]));
    }
  }));
  return out;
}

inline std::vector<VerificationReport> variational_suite(const Fixture& fx) {
  std::vector<VerificationReport> out;
  const auto u = symmetry::family_field(fx.family);
  out.push_back(detail::run_check("variational.residual", [&](VerificationReport& r) {
    const auto& v = symmetry::jet_vars();
    const Poly lag = rebase(model::invariant_symbolic(InvariantId::L), v);
    const Poly res = symmetry::variational_residual(u);
    r.residual("pr1(u)L + L*Dt(xi) - 3*alpha*L", res - Rational(3) * Poly::variable(v, "alpha") * lag);
    r.residual("alpha = 0 member", substitute(res, {{"alpha", Poly(v)}}));
  }));
  return out;
}

inline std::vector<VerificationReport> noether_suite(const Fixture& fx) {
  using detail::run_check;
  std::vector<VerificationReport> out;
  out.push_back(run_check("noether.conservation", [&](VerificationReport& r) {
    r.residual("dI/dt along ham6 (symbolic beta,gamma,delta)", symmetry::noether_charge_symbolic().time_derivative);
    const auto f = model::rhs_symbolic(SystemId::MB5);
    for (auto id : {InvariantId::H, InvariantId::C, InvariantId::J}) {
      r.residual("d" + std::string(model::to_string(id)) + "/dt along mb5",
                 model::lie_derivative(model::invariant_symbolic(id), f));
    }
  }));
  out.push_back(run_check("noether.charge_from_symmetry", [&](VerificationReport& r) {
    // Noether's formula applied to the alpha = 0 family must give I = -beta Htilde - gamma Jtilde + delta Ctilde.
    const auto& jv = symmetry::jet_vars();
    const auto u = symmetry::family_field(fx.family);
    const Bindings no_alpha{{"alpha", Poly(jv)}};
    const auto u0 = symmetry::JetVectorField::make(
        substitute(u.xi, no_alpha),
        {substitute(u.eta[0], no_alpha), substitute(u.eta[1], no_alpha), substitute(u.eta[2], no_alpha)});
    Bindings fl;
    for (const auto& [name, poly] : model::legendre_symbolic()) {
      if (name[0] == 'p') fl.emplace(name, rebase(poly, jv));
    }
    const Poly stated = compose(symmetry::noether_charge_symbolic().charge, fl, jv);
    r.residual("Noether charge - I o FL", symmetry::noether_formula(u0) - stated);
  }));
  return out;
}

inline std::vector<VerificationReport> pushforward_suite(const Fixture& fx) {
  using detail::run_check;
  std::vector<VerificationReport> out;
  const auto u = symmetry::family_field(fx.family);
  out.push_back(run_check("pushforward.fl", [&](VerificationReport& r) {
    r.residuals_of("(FL)_* pr1(u) - stated",
                   detail::difference(symmetry::pushforward_fl(u), symmetry::displayed_v_tilde()));
  }));
  out.push_back(run_check("pushforward.phi", [&](VerificationReport& r) {
    const auto x = symmetry::pushforward_phi(symmetry::pushforward_fl(u));
    r.residuals_of("phi_* v - stated X", detail::difference(x.field(), symmetry::displayed_X().field()));
    r.residuals_of("point symmetry of mb5", symmetry::first_order_symmetry_residual(x));
  }));
  out.push_back(run_check("pushforward.conformal_master", [&](VerificationReport& r) {
    const auto x = symmetry::pushforward_phi(symmetry::pushforward_fl(u));
    const auto cls = symmetry::dynamics_commutator(x);
    const auto& ev = symmetry::ext5_vars();
    const auto v = symmetry::dynamics_field();
    r.residuals_of("[X,V] - alpha*V",
                   detail::difference(cls.commutator.field(), Poly::variable(ev, "alpha") * v.field()));
    r.residuals_of("[[X,V],V]", cls.second_commutator.field().components);
    r.require("conformal with factor alpha", cls.factor && *cls.factor == Poly::variable(ev, "alpha"));
    const auto at_alpha0 = symmetry::dynamics_commutator(symmetry::substitute_parameters(x, {0, 1, 1, 1}));
    r.require("alpha = 0: X commutes with V", at_alpha0.commutes);
    const auto at_alpha1 = symmetry::dynamics_commutator(symmetry::substitute_parameters(x, {1, 0, 0, 0}));
    r.require("alpha = 1: master symmetry ([X,V] != 0, [[X,V],V] = 0)", at_alpha1.master);
    const auto delta_only = symmetry::pushforward_phi(symmetry::pushforward_fl(symmetry::family_member(fx.family, {0, 0, 0, 1})));
    r.require("delta direction projects to the zero field", delta_only.is_zero());
  }));
  return out;
}

/// Runs one named suite, or every suite for "all". Throws DomainError for unknown names.
inline std::vector<VerificationReport> run_suite(const std::string& name, const Fixture& fx = {}) {
  using Suite = std::vector<VerificationReport> (*)(const Fixture&);
  static const std::vector<std::pair<std::string, Suite>> suites{
      {"poisson", poisson_suite},   {"cocycle", cocycle_suite},         {"realization", realization_suite},
      {"algebra", algebra_suite},   {"symmetry", symmetry_suite},       {"variational", variational_suite},
      {"noether", noether_suite},   {"pushforward", pushforward_suite}};
  std::vector<VerificationReport> out;
  bool found = false;
  for (const auto& [n, suite] : suites) {
    if (name == "all" || name == n) {
      auto part = suite(fx);
      out.insert(out.end(), part.begin(), part.end());
      found = true;
    }
  }
  if (!found) throw DomainError("unknown suite '" + name + "'");
  return out;
}

inline bool all_passed(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace mbsym::verify
