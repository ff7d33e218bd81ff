#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "mbsym/error.hpp"
#include "mbsym/linear_system.hpp"
#include "mbsym/model.hpp"
#include "mbsym/poisson.hpp"
#include "mbsym/poly.hpp"

// Lie point symmetries of the Euler-Lagrange system q1'' = q1 q3',
// q2'' = q2 q3', q3'' = -(q1 q1' + q2 q2'): prolongation, determining
// equations and their exact solution, the symmetry algebra, variational
// symmetries with their Noether charges, and transport of the symmetries to
// the five-dimensional system.
//
// The four real parameters of the symmetry family are carried as extra
// polynomial variables alpha, beta, gamma, delta, so a single identity check
// covers every member of the family.

namespace mbsym::symmetry {

inline const std::vector<std::string>& parameter_names() {
  static const std::vector<std::string> p{"alpha", "beta", "gamma", "delta"};
  return p;
}

/// Jet space up to second order, plus the family parameters.
inline const VarSet& jet_vars() {
  static const VarSet v = VarSet{"t", "q1", "q2", "q3", "qd1", "qd2", "qd3", "qdd1", "qdd2", "qdd3"}.extended(
      parameter_names());
  return v;
}

/// Extended phase space (t, q, p) of the canonical system, plus parameters.
inline const VarSet& phase_vars() {
  static const VarSet v = VarSet{"t", "q1", "q2", "q3", "p1", "p2", "p3"}.extended(parameter_names());
  return v;
}

/// Extended state space (t, x1, y1, x2, y2, z) of the five-dimensional system, plus parameters.
inline const VarSet& ext5_vars() {
  static const VarSet v = VarSet{"t", "x1", "y1", "x2", "y2", "z"}.extended(parameter_names());
  return v;
}

inline const std::vector<std::string>& point_coords() {
  static const std::vector<std::string> c{"t", "q1", "q2", "q3"};
  return c;
}
inline const std::vector<std::string>& velocity_vars() {
  static const std::vector<std::string> c{"qd1", "qd2", "qd3"};
  return c;
}
inline const std::vector<std::string>& acceleration_vars() {
  static const std::vector<std::string> c{"qdd1", "qdd2", "qdd3"};
  return c;
}
inline const std::vector<std::string>& phase_coords() {
  static const std::vector<std::string> c{"t", "q1", "q2", "q3", "p1", "p2", "p3"};
  return c;
}
inline const std::vector<std::string>& ext5_coords() {
  static const std::vector<std::string> c{"t", "x1", "y1", "x2", "y2", "z"};
  return c;
}

/// Vector field sum_k components[k] d/d coords[k], coefficients over a common VarSet.
struct VectorField {
  VarSet vars;
  std::vector<std::string> coords;
  std::vector<Poly> components;

  /// Derivation f -> sum_k components[k] * df/dcoords[k].
  [[nodiscard]] Poly apply(const Poly& f) const {
    if (!(f.vars() == vars)) throw VarSetMismatch("VectorField::apply: function over a different VarSet");
    Poly out(vars);
    for (std::size_t k = 0; k < coords.size(); ++k) {
      if (!components[k].is_zero()) out += components[k] * diff(f, coords[k]);
    }
    return out;
  }

  [[nodiscard]] bool is_zero() const {
    for (const auto& c : components) {
      if (!c.is_zero()) return false;
    }
    return true;
  }

  friend bool operator==(const VectorField& a, const VectorField& b) {
    return a.vars == b.vars && a.coords == b.coords && a.components == b.components;
  }
  friend VectorField operator-(VectorField a, const VectorField& b) {
    a.require_compatible(b);
    for (std::size_t k = 0; k < a.components.size(); ++k) a.components[k] -= b.components[k];
    return a;
  }
  friend VectorField operator+(VectorField a, const VectorField& b) {
    a.require_compatible(b);
    for (std::size_t k = 0; k < a.components.size(); ++k) a.components[k] += b.components[k];
    return a;
  }
  friend VectorField operator*(const Poly& s, VectorField a) {
    for (auto& c : a.components) c = s * c;
    return a;
  }

  void require_compatible(const VectorField& o) const {
    if (!(vars == o.vars) || coords != o.coords) throw VarSetMismatch("VectorField: incompatible fields");
  }

  [[nodiscard]] std::string str() const {
    std::string s;
    for (std::size_t k = 0; k < coords.size(); ++k) {
      if (components[k].is_zero()) continue;
      s += (s.empty() ? "" : " + ") + std::string("(") + components[k].str() + ")*d/d" + coords[k];
    }
    return s.empty() ? "0" : s;
  }
};

/// [a, b]_k = a(b_k) - b(a_k).
inline VectorField lie_bracket(const VectorField& a, const VectorField& b) {
  a.require_compatible(b);
  VectorField out{a.vars, a.coords, {}};
  for (std::size_t k = 0; k < a.coords.size(); ++k) {
    out.components.push_back(a.apply(b.components[k]) - b.apply(a.components[k]));
  }
  return out;
}

/// Lie point field xi d/dt + sum eta_i d/dq_i with coefficients in (t, q) and the parameters.
struct JetVectorField {
  Poly xi{jet_vars()};
  std::array<Poly, 3> eta{Poly(jet_vars()), Poly(jet_vars()), Poly(jet_vars())};

  static JetVectorField parse(std::string_view xi, std::string_view eta1, std::string_view eta2,
                              std::string_view eta3) {
    const auto& v = jet_vars();
    return make(Poly::parse(v, xi), {Poly::parse(v, eta1), Poly::parse(v, eta2), Poly::parse(v, eta3)});
  }
  static JetVectorField make(Poly xi, std::array<Poly, 3> eta) {
    JetVectorField u{std::move(xi), std::move(eta)};
    u.validate();
    return u;
  }
  static JetVectorField from(const VectorField& f) {
    if (f.coords != point_coords()) throw DomainError("JetVectorField: field is not over (t, q1, q2, q3)");
    return make(f.components[0], {f.components[1], f.components[2], f.components[3]});
  }

  void validate() const {
    auto check = [](const Poly& p) {
      if (!(p.vars() == jet_vars())) throw VarSetMismatch("JetVectorField: coefficient not over the jet VarSet");
      for (const auto* group : {&velocity_vars(), &acceleration_vars()}) {
        for (const auto& name : *group) {
          if (p.depends_on(name)) throw DomainError("JetVectorField: coefficient depends on " + name);
        }
      }
    };
    check(xi);
    for (const auto& e : eta) check(e);
  }

  [[nodiscard]] VectorField field() const { return {jet_vars(), point_coords(), {xi, eta[0], eta[1], eta[2]}}; }

  friend bool operator==(const JetVectorField&, const JetVectorField&) = default;
};

inline JetVectorField lie_bracket(const JetVectorField& a, const JetVectorField& b) {
  return JetVectorField::from(lie_bracket(a.field(), b.field()));
}

/// xi d/dt + sum eta_i d/dx_i on (t, x1, y1, x2, y2, z).
struct ExtendedVectorField5 {
  Poly xi{ext5_vars()};
  std::array<Poly, 5> eta{Poly(ext5_vars()), Poly(ext5_vars()), Poly(ext5_vars()), Poly(ext5_vars()),
                          Poly(ext5_vars())};

  static ExtendedVectorField5 parse(std::string_view xi, const std::array<std::string_view, 5>& eta) {
    const auto& v = ext5_vars();
    ExtendedVectorField5 x;
    x.xi = Poly::parse(v, xi);
    for (std::size_t i = 0; i < 5; ++i) x.eta[i] = Poly::parse(v, eta[i]);
    return x;
  }
  static ExtendedVectorField5 from(const VectorField& f) {
    if (f.coords != ext5_coords() || !(f.vars == ext5_vars())) {
      throw DomainError("ExtendedVectorField5: field is not over (t, x1, y1, x2, y2, z)");
    }
    ExtendedVectorField5 x;
    x.xi = f.components[0];
    for (std::size_t i = 0; i < 5; ++i) x.eta[i] = f.components[i + 1];
    return x;
  }

  [[nodiscard]] VectorField field() const {
    return {ext5_vars(), ext5_coords(), {xi, eta[0], eta[1], eta[2], eta[3], eta[4]}};
  }
  [[nodiscard]] bool is_zero() const { return field().is_zero(); }

  friend bool operator==(const ExtendedVectorField5&, const ExtendedVectorField5&) = default;
};

inline ExtendedVectorField5 lie_bracket(const ExtendedVectorField5& a, const ExtendedVectorField5& b) {
  return ExtendedVectorField5::from(lie_bracket(a.field(), b.field()));
}

/// The family parameters as exact values.
struct SymParams {
  Rational alpha, beta, gamma, delta;
};

inline Bindings parameter_bindings(const SymParams& p, const VarSet& vs) {
  return {{"alpha", Poly::constant(vs, p.alpha)},
          {"beta", Poly::constant(vs, p.beta)},
          {"gamma", Poly::constant(vs, p.gamma)},
          {"delta", Poly::constant(vs, p.delta)}};
}

/// One signed term `coefficient * parameter * monomial` of a family coefficient.
/// component 0 is xi, 1..3 are eta_1..eta_3; an empty monomial means 1.
struct FamilyTerm {
  int component;
  Rational coefficient;
  std::string parameter;
  std::string monomial;
};

/// xi = -alpha t + beta, eta1 = alpha q1 + gamma q2, eta2 = -gamma q1 + alpha q2, eta3 = alpha q3 + delta.
inline std::vector<FamilyTerm> paper_family() {
  return {{0, Rational(-1), "alpha", "t"}, {0, Rational(1), "beta", ""},   {1, Rational(1), "alpha", "q1"},
          {1, Rational(1), "gamma", "q2"}, {2, Rational(-1), "gamma", "q1"}, {2, Rational(1), "alpha", "q2"},
          {3, Rational(1), "alpha", "q3"}, {3, Rational(1), "delta", ""}};
}

/// The family with the sign of one term flipped.
inline std::vector<FamilyTerm> flip_family_term(std::vector<FamilyTerm> terms, std::size_t index) {
  terms.at(index).coefficient = -terms.at(index).coefficient;
  return terms;
}

/// The whole family as one field with symbolic parameters.
inline JetVectorField family_field(const std::vector<FamilyTerm>& terms) {
  const auto& v = jet_vars();
  std::array<Poly, 4> c{Poly(v), Poly(v), Poly(v), Poly(v)};
  for (const auto& t : terms) {
    if (t.component < 0 || t.component > 3) throw DomainError("FamilyTerm: component out of range");
    Poly term = t.coefficient * Poly::variable(v, t.parameter);
    if (!t.monomial.empty()) term = term * Poly::parse(v, t.monomial);
    c[static_cast<std::size_t>(t.component)] += term;
  }
  return JetVectorField::make(c[0], {c[1], c[2], c[3]});
}

inline JetVectorField family_member(const std::vector<FamilyTerm>& terms, const SymParams& p) {
  const auto u = family_field(terms);
  const auto b = parameter_bindings(p, jet_vars());
  return JetVectorField::make(substitute(u.xi, b),
                              {substitute(u.eta[0], b), substitute(u.eta[1], b), substitute(u.eta[2], b)});
}

/// u1 (alpha), u2 (beta), u3 (delta), u4 (gamma).
inline std::array<JetVectorField, 4> paper_basis(const std::vector<FamilyTerm>& terms = paper_family()) {
  return {family_member(terms, {1, 0, 0, 0}), family_member(terms, {0, 1, 0, 0}), family_member(terms, {0, 0, 0, 1}),
          family_member(terms, {0, 0, 1, 0})};
}

/// Total derivative D_t = d/dt + qd . d/dq + qdd . d/dqd, on functions free of qdd.
inline Poly total_derivative(const Poly& f) {
  if (!(f.vars() == jet_vars())) throw VarSetMismatch("total_derivative: expected a Poly over the jet VarSet");
  for (const auto& a : acceleration_vars()) {
    if (f.depends_on(a)) throw DomainError("total_derivative: argument depends on " + a + " (third order)");
  }
  const auto& v = jet_vars();
  Poly out = diff(f, "t");
  for (int i = 1; i <= 3; ++i) {
    const auto s = std::to_string(i);
    out += Poly::variable(v, "qd" + s) * diff(f, "q" + s);
    out += Poly::variable(v, "qdd" + s) * diff(f, "qd" + s);
  }
  return out;
}

/// Coefficients of the first (and optionally second) prolongation.
struct ProlongedField {
  JetVectorField base;
  std::array<Poly, 3> vel_coeffs;
  std::vector<Poly> acc_coeffs;

  /// pr(u) as a derivation on jet functions.
  [[nodiscard]] Poly apply(const Poly& f) const {
    Poly out = base.field().apply(f);
    for (std::size_t i = 0; i < 3; ++i) out += vel_coeffs[i] * diff(f, velocity_vars()[i]);
    for (std::size_t i = 0; i < acc_coeffs.size(); ++i) out += acc_coeffs[i] * diff(f, acceleration_vars()[i]);
    return out;
  }
};

inline ProlongedField prolong(const JetVectorField& u, int order) {
  if (order != 1 && order != 2) throw DomainError("prolong: order must be 1 or 2");
  const auto& v = jet_vars();
  const Poly dxi = total_derivative(u.xi);
  ProlongedField pr{u, {Poly(v), Poly(v), Poly(v)}, {}};
  for (std::size_t i = 0; i < 3; ++i) {
    pr.vel_coeffs[i] = total_derivative(u.eta[i]) - dxi * Poly::variable(v, velocity_vars()[i]);
  }
  if (order == 2) {
    const Poly ddxi = total_derivative(dxi);
    for (std::size_t i = 0; i < 3; ++i) {
      const Poly ddeta = total_derivative(total_derivative(u.eta[i]));
      pr.acc_coeffs.push_back(ddeta - ddxi * Poly::variable(v, velocity_vars()[i]) -
                              Rational(2) * dxi * Poly::variable(v, acceleration_vars()[i]));
    }
  }
  return pr;
}

/// The second-order equations Delta_k = 0 over the jet VarSet.
inline std::vector<Poly> jet_equations() {
  std::vector<Poly> out;
  for (const auto& r : model::euler_lagrange_residuals()) out.push_back(rebase(r, jet_vars()));
  return out;
}

/// qdd_i -> accelerations of the first-order system.
inline Bindings acceleration_bindings() {
  const auto f = model::rhs_symbolic(model::SystemId::EL6);
  Bindings b;
  for (std::size_t i = 0; i < 3; ++i) b.emplace(acceleration_vars()[i], rebase(f[3 + i], jet_vars()));
  return b;
}

/// pr2(u) Delta_k with q'' eliminated; all three vanish iff u is a point symmetry.
inline std::vector<Poly> determining_residuals(const JetVectorField& u) {
  const auto pr = prolong(u, 2);
  const auto subs = acceleration_bindings();
  std::vector<Poly> out;
  for (const auto& eq : jet_equations()) out.push_back(substitute(pr.apply(eq), subs));
  return out;
}

/// Flattens the coefficients of fields of degree <= max_degree in (t, q) into one vector;
/// the ordering matches the unknowns of solve_determining.
inline RationalVector coefficient_vector(const JetVectorField& u, std::uint32_t max_degree) {
  const auto monos = monomials_up_to(4, max_degree);
  RationalVector out;
  out.reserve(4 * monos.size());
  const std::array<const Poly*, 4> comps{&u.xi, &u.eta[0], &u.eta[1], &u.eta[2]};
  for (const Poly* c : comps) {
    for (const auto& name : parameter_names()) {
      if (c->depends_on(name)) throw DomainError("coefficient_vector: field depends on parameter " + name);
    }
    auto split = coefficients_in(*c, point_coords());
    for (const auto& m : monos) {
      auto it = split.find(m);
      if (it == split.end()) {
        out.emplace_back(0);
        continue;
      }
      out.push_back(it->second.constant_term());
      split.erase(it);
    }
    if (!split.empty()) throw DomainError("coefficient_vector: field exceeds the requested degree");
  }
  return out;
}

inline JetVectorField field_from_coefficients(const RationalVector& coeffs, std::uint32_t max_degree) {
  const auto monos = monomials_up_to(4, max_degree);
  if (coeffs.size() != 4 * monos.size()) throw DomainError("field_from_coefficients: wrong length");
  const auto& v = jet_vars();
  std::array<Poly, 4> comps{Poly(v), Poly(v), Poly(v), Poly(v)};
  const auto x = v.index("t");
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t m = 0; m < monos.size(); ++m) {
      Exponents e(v.size(), 0);
      for (std::size_t k = 0; k < 4; ++k) e[x + k] = monos[m][k];
      comps[c] += Poly::monomial(v, e, coeffs[c * monos.size() + m]);
    }
  }
  return JetVectorField::make(comps[0], {comps[1], comps[2], comps[3]});
}

struct DeterminingSolution {
  std::uint32_t max_degree = 0;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  /// Reduced-echelon basis of the solution space.
  std::vector<JetVectorField> basis;
  std::vector<RationalVector> coefficients;
};

/// Solves the determining equations within the polynomial ansatz of total degree
/// <= max_degree in (t, q). Complete only up to that degree.
inline DeterminingSolution solve_determining(std::uint32_t max_degree = 2) {
  if (max_degree < 1) throw DomainError("solve_determining: max_degree must be >= 1");
  const auto monos = monomials_up_to(4, max_degree);
  const std::size_t n = 4 * monos.size();
  // Column k holds the jet coefficients of the residuals of the k-th unit field.
  using RowKey = std::tuple<std::size_t, Exponents, Exponents>;
  std::map<RowKey, std::size_t> row_of;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> columns(n);
  for (std::size_t k = 0; k < n; ++k) {
    RationalVector unit(n, Rational(0));
    unit[k] = Rational(1);
    const auto res = determining_residuals(field_from_coefficients(unit, max_degree));
    for (std::size_t r = 0; r < res.size(); ++r) {
      for (const auto& [vel_mono, rest] : coefficients_in(res[r], velocity_vars())) {
        for (const auto& [point_mono, coeff] : coefficients_in(rest, point_coords())) {
          const RowKey key{r, vel_mono, point_mono};
          const auto [it, inserted] = row_of.try_emplace(key, row_of.size());
          columns[k].emplace_back(it->second, coeff.constant_term());
        }
      }
    }
  }
  RationalMatrix a(row_of.size(), n, Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& [row, value] : columns[k]) a(row, k) = value;
  }
  DeterminingSolution sol;
  sol.max_degree = max_degree;
  sol.unknowns = n;
  sol.equations = row_of.size();
  sol.coefficients = canonical_basis(solve_nullspace(LinearSystem(std::move(a))));
  for (const auto& c : sol.coefficients) sol.basis.push_back(field_from_coefficients(c, max_degree));
  return sol;
}

/// Whether span(basis) equals span(expected), both of degree <= max_degree.
inline bool same_span(const std::vector<JetVectorField>& basis, const std::vector<JetVectorField>& expected,
                      std::uint32_t max_degree) {
  std::vector<RationalVector> a, b;
  for (const auto& u : basis) a.push_back(coefficient_vector(u, max_degree));
  for (const auto& u : expected) b.push_back(coefficient_vector(u, max_degree));
  std::vector<RationalVector> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const auto ra = canonical_basis(a).size();
  return ra == canonical_basis(b).size() && ra == canonical_basis(both).size();
}

/// Structure constants of the span of `basis`; throws NotInSpan if it is not closed.
inline poisson::CommutatorTable algebra_table(const std::vector<JetVectorField>& basis, std::uint32_t max_degree = 2) {
  const std::size_t n = basis.size();
  std::vector<RationalVector> columns;
  for (const auto& u : basis) columns.push_back(coefficient_vector(u, max_degree));
  poisson::CommutatorTable table(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto coords = express_in_span(columns, coefficient_vector(lie_bracket(basis[i], basis[j]), max_degree));
      if (!coords) {
        throw poisson::NotInSpan("[u" + std::to_string(i + 1) + ",u" + std::to_string(j + 1) +
                                     "] leaves the span of the basis",
                                 RationalMatrix(0, 0, Rational(0)));
      }
      for (std::size_t k = 0; k < n; ++k) table.at(i, j, k) = (*coords)[k];
    }
  }
  return table;
}

/// pr1(u) L + L D_t(xi).
inline Poly variational_residual(const JetVectorField& u) {
  const Poly lag = rebase(model::invariant_symbolic(model::InvariantId::L), jet_vars());
  return prolong(u, 1).apply(lag) + lag * total_derivative(u.xi);
}

/// A Noether constant of motion on T*R^3 and its derivative along the canonical flow.
struct NoetherCharge {
  Poly charge;
  Poly time_derivative;
};

/// d/dt of a function of (q, p) along the canonical equations; both over vs.
inline Poly along_canonical_flow(const Poly& f) {
  const auto& vs = f.vars();
  const auto rhs = model::rhs_symbolic(model::SystemId::HAM6);
  Poly out(vs);
  for (std::size_t i = 0; i < 6; ++i) out += rebase(rhs[i], vs) * diff(f, model::state6_vars().name(i));
  return out;
}

/// I = -beta Htilde - gamma Jtilde + delta Ctilde for a variational member (alpha = 0).
inline NoetherCharge noether_charge(const SymParams& p) {
  if (!p.alpha.is_zero()) throw DomainError("noether_charge: alpha != 0 is not a variational symmetry");
  using model::InvariantId;
  const Poly charge = -p.beta * model::invariant_symbolic(InvariantId::Htilde) -
                      p.gamma * model::invariant_symbolic(InvariantId::Jtilde) +
                      p.delta * model::invariant_symbolic(InvariantId::Ctilde);
  return {charge, along_canonical_flow(charge)};
}

/// Same charge with beta, gamma, delta left symbolic, over phase_vars().
inline NoetherCharge noether_charge_symbolic() {
  using model::InvariantId;
  const auto& v = phase_vars();
  auto inv = [&](InvariantId id) { return rebase(model::invariant_symbolic(id), v); };
  const Poly charge = -Poly::variable(v, "beta") * inv(InvariantId::Htilde) -
                      Poly::variable(v, "gamma") * inv(InvariantId::Jtilde) +
                      Poly::variable(v, "delta") * inv(InvariantId::Ctilde);
  return {charge, along_canonical_flow(charge)};
}

/// Noether's conserved quantity sum_i dL/dqd_i (eta_i - xi qd_i) + xi L, over the jet VarSet.
inline Poly noether_formula(const JetVectorField& u) {
  const auto& v = jet_vars();
  const Poly lag = rebase(model::invariant_symbolic(model::InvariantId::L), v);
  Poly out = u.xi * lag;
  for (std::size_t i = 0; i < 3; ++i) {
    const Poly qd = Poly::variable(v, velocity_vars()[i]);
    out += diff(lag, velocity_vars()[i]) * (u.eta[i] - u.xi * qd);
  }
  return out;
}

/// Coordinates (lambda1..lambda4) of u in the basis u1..u4, as Polys in the parameters,
/// or nullopt if u is not a member of the family.
inline std::optional<std::array<Poly, 4>> family_coordinates(const JetVectorField& u) {
  const auto& v = jet_vars();
  const auto basis = paper_basis();
  // Coefficient of a degree <= 1 monomial in (t, q); `var` empty for the constant term.
  auto coeff = [&](const Poly& p, std::string_view var) {
    Exponents e(point_coords().size(), 0);
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (point_coords()[k] == var) e[k] = 1;
    }
    const auto split = coefficients_in(p, point_coords());
    const auto it = split.find(e);
    return it == split.end() ? Poly(v) : it->second;
  };
  std::array<Poly, 4> lambda{-coeff(u.xi, "t"), coeff(u.xi, ""), coeff(u.eta[2], ""), coeff(u.eta[0], "q2")};
  for (const auto& l : lambda) {
    for (const auto& c : point_coords()) {
      if (l.depends_on(c)) return std::nullopt;
    }
  }
  VectorField rebuilt{v, point_coords(), {Poly(v), Poly(v), Poly(v), Poly(v)}};
  for (std::size_t i = 0; i < 4; ++i) rebuilt = rebuilt + lambda[i] * basis[i].field();
  if (!(rebuilt == u.field())) return std::nullopt;
  return lambda;
}

enum class PushTarget { FL, PHI };

/// (FL)_* pr1(u) on (t, q, p); u must belong to the family.
inline VectorField pushforward_fl(const JetVectorField& u) {
  if (!family_coordinates(u)) throw DomainError("pushforward: field is outside the symmetry family");
  const auto& pv = phase_vars();
  const auto pr = prolong(u, 1);
  Bindings to_phase;
  for (const auto& [name, poly] : model::legendre_inverse_symbolic()) {
    if (name.rfind("qd", 0) == 0) to_phase.emplace(name, rebase(poly, pv));
  }
  auto transport = [&](const Poly& p) { return compose(p, to_phase, pv); };
  VectorField out{pv, phase_coords(), {}};
  out.components.push_back(transport(u.xi));
  for (const auto& e : u.eta) out.components.push_back(transport(e));
  const auto fibre = model::legendre_symbolic();
  for (int i = 1; i <= 3; ++i) {
    const Poly p_of_v = rebase(fibre.at("p" + std::to_string(i)), jet_vars());
    out.components.push_back(transport(pr.apply(p_of_v)));
  }
  return out;
}

/// phi_* of a field on (t, q, p); fails unless the field projects through phi.
inline ExtendedVectorField5 pushforward_phi(const VectorField& v) {
  if (v.coords != phase_coords() || !(v.vars == phase_vars())) {
    throw DomainError("pushforward_phi: expected a field on (t, q, p)");
  }
  const auto& ev = ext5_vars();
  // (x, q3) -> (q, p) inverts (phi, q3); a projectable result is free of q3.
  const Bindings section{{"q1", Poly::parse(ev, "x1")},
                         {"q2", Poly::parse(ev, "x2")},
                         {"p1", Poly::parse(ev, "y1")},
                         {"p2", Poly::parse(ev, "y2")},
                         {"p3", Poly::parse(ev, "z + 1/2*(x1^2 + x2^2)")}};
  auto project = [&](const Poly& p, const std::string& what) {
    if (p.depends_on("q3")) throw DomainError("pushforward_phi: " + what + " depends on q3; field is not projectable");
    return compose(p, section, ev);
  };
  ExtendedVectorField5 x;
  x.xi = project(v.components[0], "time component");
  const auto phi = model::phi_symbolic();
  const auto& names = model::state5_vars().names();
  for (std::size_t k = 0; k < 5; ++k) x.eta[k] = project(v.apply(rebase(phi.at(names[k]), phase_vars())), names[k]);
  return x;
}

inline VectorField pushforward(const JetVectorField& u, PushTarget target) {
  const auto fl = pushforward_fl(u);
  if (target == PushTarget::FL) return fl;
  return pushforward_phi(fl).field();
}

/// The five-dimensional vector field on extended space (t, x).
inline std::vector<Poly> mb5_rhs_extended() {
  std::vector<Poly> out;
  for (const auto& f : model::rhs_symbolic(model::SystemId::MB5)) out.push_back(rebase(f, ext5_vars()));
  return out;
}

/// V = d/dt + sum F_i d/dx_i.
inline ExtendedVectorField5 dynamics_field() {
  ExtendedVectorField5 v;
  v.xi = Poly::constant(ext5_vars(), Rational(1));
  const auto f = mb5_rhs_extended();
  for (std::size_t i = 0; i < 5; ++i) v.eta[i] = f[i];
  return v;
}

/// D_t(eta_i) - F_i D_t(xi) - X(F_i) with D_t = d/dt + F . grad; zero iff X is a point symmetry.
inline std::vector<Poly> first_order_symmetry_residual(const ExtendedVectorField5& x) {
  const auto f = mb5_rhs_extended();
  const VectorField dt = dynamics_field().field();
  const VectorField xf = x.field();
  const Poly dxi = dt.apply(x.xi);
  std::vector<Poly> out;
  for (std::size_t i = 0; i < 5; ++i) out.push_back(dt.apply(x.eta[i]) - f[i] * dxi - xf.apply(f[i]));
  return out;
}

/// Commutator of X with the dynamics and the resulting classification.
/// conformal: [X,V] = c V with c free of (t, x); master: [X,V] != 0 and [[X,V],V] = 0.
struct CommutatorClassification {
  ExtendedVectorField5 commutator;
  ExtendedVectorField5 second_commutator;
  std::optional<Poly> factor;
  bool commutes = false;
  bool conformal = false;
  bool master = false;
};

inline CommutatorClassification dynamics_commutator(const ExtendedVectorField5& x) {
  const auto v = dynamics_field();
  CommutatorClassification out;
  out.commutator = lie_bracket(x, v);
  out.second_commutator = lie_bracket(out.commutator, v);
  out.commutes = out.commutator.is_zero();
  // V has unit time component, so c must equal the time component of [X,V].
  const Poly c = out.commutator.xi;
  bool constant = true;
  for (const auto& name : ext5_coords()) constant = constant && !c.depends_on(name);
  if (constant && (out.commutator.field() - c * v.field()).is_zero()) out.factor = c;
  out.conformal = out.factor.has_value();
  out.master = !out.commutes && out.second_commutator.is_zero();
  return out;
}

inline ExtendedVectorField5 substitute_parameters(const ExtendedVectorField5& x, const SymParams& p) {
  const auto b = parameter_bindings(p, ext5_vars());
  ExtendedVectorField5 out;
  out.xi = substitute(x.xi, b);
  for (std::size_t i = 0; i < 5; ++i) out.eta[i] = substitute(x.eta[i], b);
  return out;
}

/// The pushed-forward field in closed form, with symbolic alpha, beta, gamma.
inline ExtendedVectorField5 displayed_X() {
  return ExtendedVectorField5::parse("-alpha*t + beta", {"alpha*x1 + gamma*x2", "2*alpha*y1 + gamma*y2",
                                                         "-gamma*x1 + alpha*x2", "2*alpha*y2 - gamma*y1",
                                                         "2*alpha*z"});
}

/// (FL)_* pr1(u) in closed form on (t, q, p).
inline VectorField displayed_v_tilde() {
  const auto& v = phase_vars();
  auto P = [&](std::string_view s) { return Poly::parse(v, s); };
  return {v,
          phase_coords(),
          {P("-alpha*t + beta"), P("alpha*q1 + gamma*q2"), P("-gamma*q1 + alpha*q2"), P("alpha*q3 + delta"),
           P("2*alpha*p1 + gamma*p2"), P("2*alpha*p2 - gamma*p1"), P("2*alpha*p3")}};
}

}  // namespace mbsym::symmetry
