#pragma once

#include <array>
#include <string>
#include <vector>

#include "mbsym/error.hpp"
#include "mbsym/linear_system.hpp"
#include "mbsym/matrix.hpp"
#include "mbsym/model.hpp"
#include "mbsym/poly.hpp"
#include "mbsym/report.hpp"

// Lie-algebraic and Poisson-geometric structure of the five-dimensional
// system: the nilpotent matrix algebra spanned by E1..E5, its 2-cocycle, and
// the modified Lie-Poisson tensor on R^5 built from both.

namespace mbsym::poisson {

using model::state5_vars;

using RationalMatrix = Matrix<Rational>;

/// A commutator outside the span of the basis.
class NotInSpan : public Error {
 public:
  NotInSpan(const std::string& what, RationalMatrix witness) : Error(what), witness_(std::move(witness)) {}
  [[nodiscard]] const RationalMatrix& witness() const { return witness_; }

 private:
  RationalMatrix witness_;
};

inline std::string to_string(const RationalMatrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    s += r ? "; " : "";
    for (std::size_t c = 0; c < m.cols(); ++c) s += (c ? " " : "") + m(r, c).str();
  }
  return s + "]";
}

inline RationalMatrix matrix_from(std::size_t rows, std::size_t cols, std::initializer_list<long> entries) {
  if (entries.size() != rows * cols) throw DomainError("matrix_from: wrong number of entries");
  RationalMatrix m(rows, cols, Rational(0));
  std::size_t k = 0;
  for (long v : entries) {
    m(k / cols, k % cols) = Rational(v);
    ++k;
  }
  return m;
}

/// E1..E5 spanning the five-dimensional nilpotent algebra g.
inline std::vector<RationalMatrix> e_basis() {
  return {
      matrix_from(4, 4, {0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}),
      matrix_from(4, 4, {0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0}),
      matrix_from(4, 4, {0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}),
      matrix_from(4, 4, {0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0}),
      matrix_from(4, 4, {0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}),
  };
}

/// A1..A4 spanning the four-dimensional matrix algebra s_g.
inline std::vector<RationalMatrix> a_basis() {
  return {
      matrix_from(4, 4, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1}),
      matrix_from(4, 4, {0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}),
      matrix_from(4, 4, {0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}),
      matrix_from(4, 4, {0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}),
  };
}

/// Structure constants c[i][j][k]: [B_i, B_j] = sum_k c[i][j][k] B_k.
class CommutatorTable {
 public:
  explicit CommutatorTable(std::size_t dim) : dim_(dim), c_(dim * dim * dim, Rational(0)) {}

  [[nodiscard]] std::size_t dim() const { return dim_; }
  Rational& at(std::size_t i, std::size_t j, std::size_t k) { return c_[index(i, j, k)]; }
  [[nodiscard]] const Rational& at(std::size_t i, std::size_t j, std::size_t k) const { return c_[index(i, j, k)]; }
  /// Expansion coefficients of [B_i, B_j].
  [[nodiscard]] RationalVector bracket(std::size_t i, std::size_t j) const {
    RationalVector v(dim_);
    for (std::size_t k = 0; k < dim_; ++k) v[k] = at(i, j, k);
    return v;
  }

  friend bool operator==(const CommutatorTable&, const CommutatorTable&) = default;

 private:
  [[nodiscard]] std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    if (i >= dim_ || j >= dim_ || k >= dim_) throw DomainError("CommutatorTable: index out of range");
    return (i * dim_ + j) * dim_ + k;
  }
  std::size_t dim_;
  std::vector<Rational> c_;
};

/// Exact expansion of every [B_i, B_j] in the basis, solving over the matrix entries.
/// Throws NotInSpan, carrying the offending commutator, if some bracket leaves the span.
inline CommutatorTable matrix_commutator_table(const std::vector<RationalMatrix>& basis) {
  const std::size_t n = basis.size();
  if (n == 0) throw DomainError("matrix_commutator_table: empty basis");
  std::vector<RationalVector> columns;
  for (const auto& b : basis) columns.push_back(b.data());
  {
    RationalMatrix stacked(n, basis.front().data().size(), Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < stacked.cols(); ++k) stacked(i, k) = columns[i][k];
    }
    if (rank(stacked) != n) throw DomainError("matrix_commutator_table: basis is linearly dependent");
  }
  CommutatorTable table(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const RationalMatrix br = commutator(basis[i], basis[j]);
      const auto coords = express_in_span(columns, br.data());
      if (!coords) {
        throw NotInSpan("[B" + std::to_string(i + 1) + ",B" + std::to_string(j + 1) +
                            "] is outside the span of the basis: " + to_string(br),
                        br);
      }
      for (std::size_t k = 0; k < n; ++k) table.at(i, j, k) = (*coords)[k];
    }
  }
  return table;
}

/// 5x5 antisymmetric bilinear form on g, given on the E-basis.
struct Cocycle {
  RationalMatrix theta;

  [[nodiscard]] const Rational& operator()(std::size_t i, std::size_t j) const { return theta(i, j); }
};

inline Cocycle paper_cocycle() {
  return {matrix_from(5, 5, {0, 1, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0})};
}

/// Coefficients of the linear bracket {u_i,u_j} = sum_k alpha[i][j][k] u_k + beta[i][j].
struct StructureConstants {
  CommutatorTable alpha{5};
  RationalMatrix beta{5, 5, Rational(0)};

  /// Lie-Poisson part from the algebra, constant part from the cocycle.
  static StructureConstants from(const CommutatorTable& table, const Cocycle& theta) {
    if (table.dim() != 5) throw DomainError("StructureConstants: expected a 5-dimensional algebra");
    StructureConstants sc{table, theta.theta};
    sc.validate();
    return sc;
  }

  void validate() const {
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) {
        if (!(beta(i, j) == -beta(j, i))) throw DomainError("StructureConstants: beta not antisymmetric");
        for (std::size_t k = 0; k < 5; ++k) {
          if (!(alpha.at(i, j, k) == -alpha.at(j, i, k))) {
            throw DomainError("StructureConstants: alpha not antisymmetric");
          }
        }
      }
    }
  }
};

/// 5x5 matrix of Polys over state5_vars() defining {f,g} = grad(f)^T pi grad(g).
struct PoissonTensor {
  Matrix<Poly> entries{5, 5, Poly(state5_vars())};

  Poly& operator()(std::size_t i, std::size_t j) { return entries(i, j); }
  [[nodiscard]] const Poly& operator()(std::size_t i, std::size_t j) const { return entries(i, j); }
  friend bool operator==(const PoissonTensor&, const PoissonTensor&) = default;
};

/// pi_ij = sum_k alpha_ij^k u_k + theta_ij.
inline PoissonTensor assemble_modified_lie_poisson(const StructureConstants& sc, const Cocycle& theta) {
  const VarSet& vs = state5_vars();
  PoissonTensor pi;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      Poly entry = Poly::constant(vs, theta(i, j));
      for (std::size_t k = 0; k < 5; ++k) entry += sc.alpha.at(i, j, k) * Poly::variable(vs, vs.name(k));
      pi(i, j) = entry;
    }
  }
  return pi;
}

/// The tensor as displayed in closed form; used as the reference the assembly must reproduce.
inline PoissonTensor displayed_poisson_tensor() {
  const VarSet& vs = state5_vars();
  const char* rows[5][5] = {{"0", "1", "0", "0", "0"},
                            {"-1", "0", "0", "0", "x1"},
                            {"0", "0", "0", "1", "0"},
                            {"0", "0", "-1", "0", "x2"},
                            {"0", "-x1", "0", "-x2", "0"}};
  PoissonTensor pi;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) pi(i, j) = Poly::parse(vs, rows[i][j]);
  }
  return pi;
}

/// The working tensor: algebra table of E1..E5 plus the cocycle.
inline PoissonTensor standard_poisson_tensor() {
  const auto theta = paper_cocycle();
  return assemble_modified_lie_poisson(StructureConstants::from(matrix_commutator_table(e_basis()), theta), theta);
}

inline void require_state5(const Poly& p) {
  if (!(p.vars() == state5_vars())) throw VarSetMismatch("expected a Poly over " + state5_vars().str());
}

inline Poly poisson_bracket(const Poly& f, const Poly& g, const PoissonTensor& pi) {
  require_state5(f);
  require_state5(g);
  const auto& names = state5_vars().names();
  const auto df = gradient(f, names);
  const auto dg = gradient(g, names);
  Poly out(state5_vars());
  for (std::size_t i = 0; i < 5; ++i) {
    if (df[i].is_zero()) continue;
    for (std::size_t j = 0; j < 5; ++j) {
      if (dg[j].is_zero() || pi(i, j).is_zero()) continue;
      out += df[i] * pi(i, j) * dg[j];
    }
  }
  return out;
}

inline Poly coordinate(std::size_t i) { return Poly::variable(state5_vars(), state5_vars().name(i)); }

/// {{u_i,u_j},u_k} + {{u_j,u_k},u_i} + {{u_k,u_i},u_j}; coordinate indices are 0-based, i < j < k.
inline Poly jacobi_residual(std::size_t i, std::size_t j, std::size_t k, const PoissonTensor& pi) {
  if (!(i < j && j < k && k < 5)) throw DomainError("jacobi_residual: need 0 <= i < j < k < 5");
  const Poly ui = coordinate(i), uj = coordinate(j), uk = coordinate(k);
  return poisson_bracket(poisson_bracket(ui, uj, pi), uk, pi) + poisson_bracket(poisson_bracket(uj, uk, pi), ui, pi) +
         poisson_bracket(poisson_bracket(uk, ui, pi), uj, pi);
}

/// pi * grad(h).
inline std::vector<Poly> ham_vector_field(const PoissonTensor& pi, const Poly& h) {
  require_state5(h);
  const auto dh = gradient(h, state5_vars().names());
  std::vector<Poly> out;
  for (std::size_t i = 0; i < 5; ++i) {
    Poly acc(state5_vars());
    for (std::size_t j = 0; j < 5; ++j) acc += pi(i, j) * dh[j];
    out.push_back(std::move(acc));
  }
  return out;
}

/// pi * grad(C) for C = (x1^2 + x2^2)/2 + z.
inline std::vector<Poly> casimir_residual(const PoissonTensor& pi) {
  return ham_vector_field(pi, model::invariant_symbolic(model::InvariantId::C));
}

/// pi + pi^T, entrywise.
inline std::vector<Poly> antisymmetry_residual(const PoissonTensor& pi) {
  std::vector<Poly> out;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i; j < 5; ++j) out.push_back(pi(i, j) + pi(j, i));
  }
  return out;
}

/// The linear isomorphism R^5 -> g, (alpha, beta, gamma, delta, theta) -> 4x4 matrix.
template <class T>
Matrix<T> iso_Phi(const std::array<T, 5>& v, const T& zero) {
  Matrix<T> m(4, 4, zero);
  m(0, 1) = zero - v[4];
  m(0, 2) = zero - v[0];
  m(0, 3) = v[2];
  m(1, 2) = zero - v[1];
  m(1, 3) = v[3];
  return m;
}

/// The bracket on R^5 transported from g.
template <class T>
std::array<T, 5> cross(const std::array<T, 5>& a, const std::array<T, 5>& b, const T& zero) {
  return {a[1] * b[4] - b[1] * a[4], zero, a[3] * b[4] - b[3] * a[4], zero, zero};
}

/// Phi(a x b) = [Phi(a), Phi(b)] for symbolic a, b, and Phi(e_i) = E_i.
inline VerificationReport iso_check_Phi() {
  return timed("iso_Phi", [](VerificationReport& r) {
    const VarSet vs{"alpha1", "beta1", "gamma1", "delta1", "theta1",
                    "alpha2", "beta2", "gamma2", "delta2", "theta2"};
    const Poly zero(vs);
    std::array<Poly, 5> a, b;
    for (std::size_t i = 0; i < 5; ++i) {
      a[i] = Poly::variable(vs, vs.name(i));
      b[i] = Poly::variable(vs, vs.name(i + 5));
    }
    const auto lhs = iso_Phi(cross(a, b, zero), zero);
    const auto rhs = commutator(iso_Phi(a, zero), iso_Phi(b, zero));
    const auto diff = lhs - rhs;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        r.residual("Phi(a x b) - [Phi(a),Phi(b)] (" + std::to_string(i) + "," + std::to_string(j) + ")",
                   diff(i, j));
      }
    }
    const auto basis = e_basis();
    for (std::size_t i = 0; i < 5; ++i) {
      std::array<Rational, 5> e{};
      e[i] = Rational(1);
      r.require("Phi(e" + std::to_string(i + 1) + ") = E" + std::to_string(i + 1),
                iso_Phi(e, Rational(0)) == basis[i]);
    }
  });
}

/// Cocycle identity on all basis triples, plus the non-coboundary witness.
inline VerificationReport cocycle_check(const Cocycle& theta) {
  return timed("cocycle", [&](VerificationReport& r) {
    const VarSet scalar{"c"};
    const auto table = matrix_commutator_table(e_basis());
    // Theta([E_a, E_b], E_c)
    auto theta_of_bracket = [&](std::size_t a, std::size_t b, std::size_t c) {
      Rational s(0);
      for (std::size_t l = 0; l < 5; ++l) s += table.at(a, b, l) * theta(l, c);
      return s;
    };
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) {
        r.residual("theta+theta^T (" + std::to_string(i) + "," + std::to_string(j) + ")",
                   Poly::constant(scalar, theta(i, j) + theta(j, i)));
      }
    }
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = i + 1; j < 5; ++j) {
        for (std::size_t k = j + 1; k < 5; ++k) {
          const Rational v = theta_of_bracket(i, j, k) + theta_of_bracket(j, k, i) + theta_of_bracket(k, i, j);
          r.residual("cocycle(E" + std::to_string(i + 1) + ",E" + std::to_string(j + 1) + ",E" +
                         std::to_string(k + 1) + ")",
                     Poly::constant(scalar, v));
        }
      }
    }
    const auto basis = e_basis();
    const bool bracket_zero = commutator(basis[0], basis[1]) == RationalMatrix(4, 4, Rational(0));
    r.require("[E1,E2] = 0", bracket_zero);
    r.require("Theta(E1,E2) = 1", theta(0, 1) == Rational(1));
    // A coboundary is f([a,b]) for linear f; no f reproduces theta on basis pairs.
    RationalMatrix a(10, 5, Rational(0));
    RationalVector rhs(10);
    std::size_t row = 0;
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = i + 1; j < 5; ++j, ++row) {
        for (std::size_t k = 0; k < 5; ++k) a(row, k) = table.at(i, j, k);
        rhs[row] = theta(i, j);
      }
    }
    bool coboundary = true;
    try {
      solve_linear(LinearSystem(a, rhs));
    } catch (const InconsistentSystem&) {
      coboundary = false;
    }
    r.require("no linear f with Theta(a,b) = f([a,b])", !coboundary);
  });
}

}  // namespace mbsym::poisson
