#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mbsym/error.hpp"
#include "mbsym/poly.hpp"

namespace mbsym {

/// Floating-point evaluator for a Poly, with the variable order of its VarSet
/// fixed at construction. Coefficients are rounded to double once.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const Poly& p) : arity_(p.vars().size()) {
    terms_.reserve(p.term_count());
    for (const auto& [e, c] : p.terms()) {
      Term t{c.to_double(), {}};
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i]) t.factors.emplace_back(static_cast<std::uint32_t>(i), e[i]);
      }
      terms_.push_back(std::move(t));
    }
  }

  [[nodiscard]] std::size_t arity() const { return arity_; }

  [[nodiscard]] double operator()(std::span<const double> x) const {
    if (x.size() != arity_) throw DomainError("CompiledPoly: expected " + std::to_string(arity_) + " values");
    double sum = 0.0;
    for (const auto& t : terms_) {
      double v = t.coeff;
      for (const auto& [var, power] : t.factors) {
        for (std::uint32_t k = 0; k < power; ++k) v *= x[var];
      }
      sum += v;
    }
    return sum;
  }

 private:
  struct Term {
    double coeff;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;
  };
  std::size_t arity_ = 0;
  std::vector<Term> terms_;
};

/// Polynomial vector field x' = F(x) on R^n with its exact Jacobian, both
/// compiled for double evaluation. Autonomous: F does not depend on t.
class NumericField {
 public:
  NumericField() = default;
  /// `components[i]` is F_i over a VarSet whose variables are exactly the coordinates.
  explicit NumericField(const std::vector<Poly>& components) {
    if (components.empty()) throw DomainError("NumericField: no components");
    const VarSet& vs = components.front().vars();
    if (vs.size() != components.size()) throw DomainError("NumericField: VarSet size must equal dimension");
    for (const auto& c : components) {
      if (!(c.vars() == vs)) throw VarSetMismatch("NumericField: components over different VarSets");
      rhs_.emplace_back(c);
      for (std::size_t j = 0; j < vs.size(); ++j) jac_.emplace_back(diff(c, vs.name(j)));
    }
    names_ = vs.names();
  }

  [[nodiscard]] std::size_t dim() const { return rhs_.size(); }
  [[nodiscard]] const std::vector<std::string>& coordinate_names() const { return names_; }

  [[nodiscard]] std::vector<double> operator()(std::span<const double> x) const {
    std::vector<double> out(dim());
    for (std::size_t i = 0; i < dim(); ++i) out[i] = rhs_[i](x);
    return out;
  }

  /// Row-major dim x dim Jacobian dF/dx.
  [[nodiscard]] std::vector<double> jacobian(std::span<const double> x) const {
    std::vector<double> out(jac_.size());
    for (std::size_t k = 0; k < jac_.size(); ++k) out[k] = jac_[k](x);
    return out;
  }

 private:
  std::vector<CompiledPoly> rhs_;
  std::vector<CompiledPoly> jac_;
  std::vector<std::string> names_;
};

}  // namespace mbsym
