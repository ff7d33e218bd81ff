#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mbsym/error.hpp"
#include "mbsym/matrix.hpp"
#include "mbsym/rational.hpp"

namespace mbsym {

using RationalVector = std::vector<Rational>;
using RationalMatrix = Matrix<Rational>;

/// A x = b over the rationals. An empty `rhs` means b = 0.
struct LinearSystem {
  RationalMatrix matrix;
  RationalVector rhs;

  LinearSystem() = default;
  explicit LinearSystem(RationalMatrix a) : matrix(std::move(a)) {}
  LinearSystem(RationalMatrix a, RationalVector b) : matrix(std::move(a)), rhs(std::move(b)) {
    if (!rhs.empty() && rhs.size() != matrix.rows()) throw DomainError("LinearSystem: rhs length != row count");
  }

  [[nodiscard]] bool homogeneous() const {
    for (const auto& r : rhs) {
      if (!r.is_zero()) return false;
    }
    return true;
  }
};

/// Reduced row echelon form with the pivot column of each nonzero row.
struct Echelon {
  RationalMatrix reduced;
  std::vector<std::size_t> pivots;

  [[nodiscard]] std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination; the first nonzero entry in a column is the pivot.
inline Echelon row_reduce(RationalMatrix m) {
  Echelon out;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(m(p, k), m(r, k));
    }
    const Rational inv = Rational(1) / m(r, c);
    for (std::size_t k = c; k < cols; ++k) m(r, k) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Rational f = m(i, c);
      for (std::size_t k = c; k < cols; ++k) {
        if (!m(r, k).is_zero()) m(i, k) -= f * m(r, k);
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const RationalMatrix& m) { return row_reduce(m).rank(); }

/// Solution set of a consistent system: particular + span(nullspace).
struct AffineSolution {
  RationalVector particular;
  std::vector<RationalVector> nullspace;
};

inline AffineSolution solve_linear(const LinearSystem& sys) {
  const std::size_t rows = sys.matrix.rows();
  const std::size_t cols = sys.matrix.cols();
  RationalMatrix aug(rows, cols + 1, Rational(0));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug(i, j) = sys.matrix(i, j);
    if (!sys.rhs.empty()) aug(i, cols) = sys.rhs[i];
  }
  const Echelon e = row_reduce(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == cols) {
    throw InconsistentSystem("linear system is inconsistent (row " + std::to_string(e.rank() - 1) +
                             " reduces to 0 = 1)");
  }
  AffineSolution out;
  out.particular.assign(cols, Rational(0));
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    is_pivot[e.pivots[k]] = true;
    out.particular[e.pivots[k]] = e.reduced(k, cols);
  }
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(cols, Rational(0));
    v[f] = Rational(1);
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.reduced(k, f);
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

/// Exact basis of the solution space of the homogeneous part, after checking
/// that an inhomogeneous system is consistent. Empty for a trivial nullspace.
inline std::vector<RationalVector> solve_nullspace(const LinearSystem& sys) { return solve_linear(sys).nullspace; }

/// Coordinates of `target` in the span of `columns`, if it lies there.
/// Requires the columns to be linearly independent for a unique answer.
inline std::optional<RationalVector> express_in_span(const std::vector<RationalVector>& columns,
                                                     const RationalVector& target) {
  const std::size_t n = target.size();
  RationalMatrix a(n, columns.size(), Rational(0));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != n) throw DomainError("express_in_span: length mismatch");
    for (std::size_t i = 0; i < n; ++i) a(i, j) = columns[j][i];
  }
  try {
    auto sol = solve_linear(LinearSystem(std::move(a), target));
    return sol.particular;
  } catch (const InconsistentSystem&) {
    return std::nullopt;
  }
}

/// Rows of the reduced echelon form of span(vectors); a canonical basis.
inline std::vector<RationalVector> canonical_basis(const std::vector<RationalVector>& vectors) {
  if (vectors.empty()) return {};
  const std::size_t n = vectors.front().size();
  RationalMatrix a(vectors.size(), n, Rational(0));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = vectors[i][j];
  }
  const Echelon e = row_reduce(std::move(a));
  std::vector<RationalVector> out;
  for (std::size_t k = 0; k < e.rank(); ++k) {
    RationalVector row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = e.reduced(k, j);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace mbsym
