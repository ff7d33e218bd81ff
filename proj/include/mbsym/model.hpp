#pragma once

#include <array>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mbsym/compiled.hpp"
#include "mbsym/error.hpp"
#include "mbsym/linear_system.hpp"
#include "mbsym/poly.hpp"

// The five-dimensional Maxwell-Bloch system with rotating wave approximation,
// its canonical Hamiltonian realization on T*R^3 and its Lagrangian form on
// TR^3. Every system and constant of motion is defined once as a Poly; the
// double-valued functions evaluate those same Polys.

namespace mbsym::model {

inline const VarSet& state5_vars() {
  static const VarSet v{"x1", "y1", "x2", "y2", "z"};
  return v;
}
inline const VarSet& state6_vars() {
  static const VarSet v{"q1", "q2", "q3", "p1", "p2", "p3"};
  return v;
}
inline const VarSet& tangent6_vars() {
  static const VarSet v{"q1", "q2", "q3", "qd1", "qd2", "qd3"};
  return v;
}
/// Positions, velocities and accelerations; carries the second-order equations.
inline const VarSet& second_order_vars() {
  static const VarSet v{"q1", "q2", "q3", "qd1", "qd2", "qd3", "qdd1", "qdd2", "qdd3"};
  return v;
}

struct State5 {
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0, z = 0;

  [[nodiscard]] std::array<double, 5> to_array() const { return {x1, y1, x2, y2, z}; }
  static State5 from(std::span<const double> v) {
    if (v.size() != 5) throw DomainError("State5: expected 5 components");
    return {v[0], v[1], v[2], v[3], v[4]};
  }
  friend bool operator==(const State5&, const State5&) = default;
};

struct State6 {
  double q1 = 0, q2 = 0, q3 = 0, p1 = 0, p2 = 0, p3 = 0;

  [[nodiscard]] std::array<double, 6> to_array() const { return {q1, q2, q3, p1, p2, p3}; }
  static State6 from(std::span<const double> v) {
    if (v.size() != 6) throw DomainError("State6: expected 6 components");
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
  }
  friend bool operator==(const State6&, const State6&) = default;
};

struct TangentState6 {
  double q1 = 0, q2 = 0, q3 = 0, qd1 = 0, qd2 = 0, qd3 = 0;

  [[nodiscard]] std::array<double, 6> to_array() const { return {q1, q2, q3, qd1, qd2, qd3}; }
  static TangentState6 from(std::span<const double> v) {
    if (v.size() != 6) throw DomainError("TangentState6: expected 6 components");
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
  }
  friend bool operator==(const TangentState6&, const TangentState6&) = default;
};

enum class SystemId { MB5, HAM6, EL6 };
enum class InvariantId { H, C, J, Htilde, Ctilde, Jtilde, L };

inline std::string_view to_string(SystemId s) {
  switch (s) {
    case SystemId::MB5: return "mb5";
    case SystemId::HAM6: return "ham6";
    case SystemId::EL6: return "el6";
  }
  return "?";
}

inline std::string_view to_string(InvariantId id) {
  switch (id) {
    case InvariantId::H: return "H";
    case InvariantId::C: return "C";
    case InvariantId::J: return "J";
    case InvariantId::Htilde: return "Htilde";
    case InvariantId::Ctilde: return "Ctilde";
    case InvariantId::Jtilde: return "Jtilde";
    case InvariantId::L: return "L";
  }
  return "?";
}

inline const VarSet& vars_of(SystemId s) {
  switch (s) {
    case SystemId::MB5: return state5_vars();
    case SystemId::HAM6: return state6_vars();
    case SystemId::EL6: return tangent6_vars();
  }
  throw DomainError("unknown SystemId");
}

inline std::size_t dimension(SystemId s) { return vars_of(s).size(); }

/// The state space an invariant is a function on.
inline SystemId domain_of(InvariantId id) {
  switch (id) {
    case InvariantId::H:
    case InvariantId::C:
    case InvariantId::J: return SystemId::MB5;
    case InvariantId::Htilde:
    case InvariantId::Ctilde:
    case InvariantId::Jtilde: return SystemId::HAM6;
    case InvariantId::L: return SystemId::EL6;
  }
  throw DomainError("unknown InvariantId");
}

namespace detail {
inline Poly P(const VarSet& vs, std::string_view text) { return Poly::parse(vs, text); }
}  // namespace detail

/// Right-hand sides as Polys over vars_of(system).
/// EL6 is the first-order form (qd, qdd(q, qd)) of the Euler-Lagrange equations.
inline std::vector<Poly> rhs_symbolic(SystemId system) {
  using detail::P;
  switch (system) {
    case SystemId::MB5: {
      const auto& v = state5_vars();
      return {P(v, "y1"), P(v, "x1*z"), P(v, "y2"), P(v, "x2*z"), P(v, "-x1*y1 - x2*y2")};
    }
    case SystemId::HAM6: {
      const auto& v = state6_vars();
      return {P(v, "p1"),
              P(v, "p2"),
              P(v, "p3 - 1/2*(q1^2 + q2^2)"),
              P(v, "q1*p3 - 1/2*q1^3 - 1/2*q1*q2^2"),
              P(v, "q2*p3 - 1/2*q1^2*q2 - 1/2*q2^3"),
              Poly(v)};
    }
    case SystemId::EL6: {
      const auto& v = tangent6_vars();
      return {P(v, "qd1"), P(v, "qd2"), P(v, "qd3"), P(v, "q1*qd3"), P(v, "q2*qd3"), P(v, "-q1*qd1 - q2*qd2")};
    }
  }
  throw DomainError("unknown SystemId");
}

/// Compiled double-valued rendition of rhs_symbolic.
inline const NumericField& numeric_field(SystemId system) {
  static const NumericField mb5(rhs_symbolic(SystemId::MB5));
  static const NumericField ham6(rhs_symbolic(SystemId::HAM6));
  static const NumericField el6(rhs_symbolic(SystemId::EL6));
  switch (system) {
    case SystemId::MB5: return mb5;
    case SystemId::HAM6: return ham6;
    case SystemId::EL6: return el6;
  }
  throw DomainError("unknown SystemId");
}

inline std::vector<double> rhs(SystemId system, std::span<const double> state) {
  if (state.size() != dimension(system)) {
    throw DomainError("rhs: " + std::string(to_string(system)) + " expects " + std::to_string(dimension(system)) +
                      " components");
  }
  return numeric_field(system)(state);
}
inline State5 rhs(const State5& s) { return State5::from(rhs(SystemId::MB5, s.to_array())); }
inline State6 rhs(const State6& s) { return State6::from(rhs(SystemId::HAM6, s.to_array())); }
inline TangentState6 rhs(const TangentState6& s) { return TangentState6::from(rhs(SystemId::EL6, s.to_array())); }

/// Second-order residuals q'' - f(q, q') of the Euler-Lagrange equations over second_order_vars().
inline std::vector<Poly> euler_lagrange_residuals() {
  using detail::P;
  const auto& v = second_order_vars();
  return {P(v, "qdd1 - q1*qd3"), P(v, "qdd2 - q2*qd3"), P(v, "qdd3 + q1*qd1 + q2*qd2")};
}

/// Constant of motion (or the Lagrangian) as a Poly over vars_of(domain_of(id)).
inline Poly invariant_symbolic(InvariantId id) {
  using detail::P;
  switch (id) {
    case InvariantId::H: return P(state5_vars(), "1/2*(y1^2 + y2^2 + z^2)");
    case InvariantId::C: return P(state5_vars(), "1/2*(x1^2 + x2^2) + z");
    case InvariantId::J: return P(state5_vars(), "x1*y2 - x2*y1");
    case InvariantId::Htilde:
      return P(state6_vars(), "1/2*p1^2 + 1/2*p2^2 + 1/2*(p3 - 1/2*(q1^2 + q2^2))^2");
    case InvariantId::Ctilde: return P(state6_vars(), "p3");
    case InvariantId::Jtilde: return P(state6_vars(), "q1*p2 - q2*p1");
    case InvariantId::L: return P(tangent6_vars(), "1/2*qd1^2 + 1/2*qd2^2 + 1/2*qd3^2 + 1/2*qd3*(q1^2 + q2^2)");
  }
  throw DomainError("unknown InvariantId");
}

inline double invariant(InvariantId id, SystemId system, std::span<const double> state) {
  if (domain_of(id) != system) {
    throw DomainError("invariant " + std::string(to_string(id)) + " is not defined on " +
                      std::string(to_string(system)));
  }
  if (state.size() != dimension(system)) throw DomainError("invariant: state has wrong dimension");
  static const std::array<CompiledPoly, 7> compiled = [] {
    std::array<CompiledPoly, 7> c;
    for (int i = 0; i < 7; ++i) c[i] = CompiledPoly(invariant_symbolic(static_cast<InvariantId>(i)));
    return c;
  }();
  return compiled[static_cast<std::size_t>(id)](state);
}
inline double invariant(InvariantId id, const State5& s) { return invariant(id, SystemId::MB5, s.to_array()); }
inline double invariant(InvariantId id, const State6& s) { return invariant(id, SystemId::HAM6, s.to_array()); }
inline double invariant(InvariantId id, const TangentState6& s) {
  return invariant(id, SystemId::EL6, s.to_array());
}

/// The Poisson map phi: T*R^3 -> R^5 as bindings x_k -> Poly over state6_vars().
inline Bindings phi_symbolic() {
  using detail::P;
  const auto& v = state6_vars();
  return {{"x1", P(v, "q1")},
          {"y1", P(v, "p1")},
          {"x2", P(v, "q2")},
          {"y2", P(v, "p2")},
          {"z", P(v, "p3 - 1/2*(q1^2 + q2^2)")}};
}

namespace detail {
/// Compiles a symbolic map, ordering its outputs by `target`.
inline std::vector<CompiledPoly> compile_map(const Bindings& map, const VarSet& target) {
  std::vector<CompiledPoly> out;
  for (const auto& name : target.names()) out.emplace_back(map.at(name));
  return out;
}
inline std::vector<double> apply_compiled(const std::vector<CompiledPoly>& map, std::span<const double> x) {
  std::vector<double> out;
  out.reserve(map.size());
  for (const auto& c : map) out.push_back(c(x));
  return out;
}
}  // namespace detail

inline State5 phi(const State6& s) {
  static const auto map = detail::compile_map(phi_symbolic(), state5_vars());
  return State5::from(detail::apply_compiled(map, s.to_array()));
}

/// Fibre derivative p_i = dL/dqd_i, derived from L, as bindings p_i -> Poly over tangent6_vars().
inline Bindings legendre_symbolic() {
  const Poly lag = invariant_symbolic(InvariantId::L);
  const auto& t = tangent6_vars();
  Bindings b;
  for (int i = 1; i <= 3; ++i) {
    b.emplace("q" + std::to_string(i), Poly::variable(t, "q" + std::to_string(i)));
    b.emplace("p" + std::to_string(i), diff(lag, "qd" + std::to_string(i)));
  }
  return b;
}

/// Inverse fibre map as bindings qd_i -> Poly over state6_vars().
inline Bindings legendre_inverse_symbolic() {
  using detail::P;
  const auto& v = state6_vars();
  return {{"q1", P(v, "q1")},  {"q2", P(v, "q2")},  {"q3", P(v, "q3")},
          {"qd1", P(v, "p1")}, {"qd2", P(v, "p2")}, {"qd3", P(v, "p3 - 1/2*(q1^2 + q2^2)")}};
}

inline State6 legendre(const TangentState6& ts) {
  static const auto map = detail::compile_map(legendre_symbolic(), state6_vars());
  return State6::from(detail::apply_compiled(map, ts.to_array()));
}

inline TangentState6 legendre_inv(const State6& s) {
  static const auto map = detail::compile_map(legendre_inverse_symbolic(), tangent6_vars());
  return TangentState6::from(detail::apply_compiled(map, s.to_array()));
}

/// Applies a symbolic map given as bindings to a point with exact rational coordinates.
inline std::map<std::string, Rational> apply_map(const Bindings& map, const std::map<std::string, Rational>& point) {
  std::map<std::string, Rational> out;
  for (const auto& [name, poly] : map) out.emplace(name, eval(poly, point));
  return out;
}

/// 5x6 Jacobian of phi as Polys over state6_vars(); rows ordered x1,y1,x2,y2,z.
inline Matrix<Poly> phi_jacobian_symbolic() {
  const auto map = phi_symbolic();
  const auto& src = state6_vars();
  const auto& dst = state5_vars();
  Matrix<Poly> jac(dst.size(), src.size(), Poly(src));
  for (std::size_t r = 0; r < dst.size(); ++r) {
    for (std::size_t c = 0; c < src.size(); ++c) jac(r, c) = diff(map.at(dst.name(r)), src.name(c));
  }
  return jac;
}

/// Exact rank of D(phi) at the sample; doubles are read as their exact binary values.
inline std::size_t jacobian_rank_phi(const State6& sample) {
  const auto jac = phi_jacobian_symbolic();
  const auto values = sample.to_array();
  std::map<std::string, Rational> point;
  for (std::size_t i = 0; i < values.size(); ++i) point.emplace(state6_vars().name(i), Rational::from_double(values[i]));
  RationalMatrix m(jac.rows(), jac.cols(), Rational(0));
  for (std::size_t r = 0; r < jac.rows(); ++r) {
    for (std::size_t c = 0; c < jac.cols(); ++c) m(r, c) = eval(jac(r, c), point);
  }
  return rank(m);
}

/// Derivative of f along the vector field `field` (f and field over the same VarSet).
inline Poly lie_derivative(const Poly& f, const std::vector<Poly>& field) {
  const VarSet& vs = f.vars();
  if (field.size() != vs.size()) throw DomainError("lie_derivative: field dimension != number of variables");
  Poly out(vs);
  for (std::size_t i = 0; i < vs.size(); ++i) out += field[i] * diff(f, vs.name(i));
  return out;
}

}  // namespace mbsym::model
