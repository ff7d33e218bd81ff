#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mbsym/error.hpp"
#include "mbsym/rational.hpp"

namespace mbsym {

/// Ordered, immutable list of variable names shared by every Poly built over it.
class VarSet {
 public:
  VarSet() : names_(std::make_shared<const std::vector<std::string>>()) {}
  VarSet(std::initializer_list<std::string> names) : VarSet(std::vector<std::string>(names)) {}
  explicit VarSet(std::vector<std::string> names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i].empty()) throw DomainError("VarSet: empty variable name");
      for (std::size_t j = 0; j < i; ++j) {
        if (names[i] == names[j]) throw DomainError("VarSet: duplicate variable '" + names[i] + "'");
      }
    }
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
  }

  [[nodiscard]] std::size_t size() const { return names_->size(); }
  [[nodiscard]] const std::string& name(std::size_t i) const { return names_->at(i); }
  [[nodiscard]] const std::vector<std::string>& names() const { return *names_; }

  [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const {
    const auto it = std::find(names_->begin(), names_->end(), name);
    if (it == names_->end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_->begin());
  }
  [[nodiscard]] bool contains(std::string_view name) const { return find(name).has_value(); }
  [[nodiscard]] std::size_t index(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw UnknownVariable("unknown variable '" + std::string(name) + "' in " + str());
  }

  /// New set with `extra` appended; the original is unchanged.
  [[nodiscard]] VarSet extended(const std::vector<std::string>& extra) const {
    auto all = *names_;
    all.insert(all.end(), extra.begin(), extra.end());
    return VarSet(std::move(all));
  }

  [[nodiscard]] std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < size(); ++i) s += (i ? "," : "") + name(i);
    return s + "}";
  }

  friend bool operator==(const VarSet& a, const VarSet& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

using Exponents = std::vector<std::uint32_t>;

inline std::uint32_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

/// Graded lexicographic order, leading (highest) monomial first.
struct GradedLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const auto da = total_degree(a);
    const auto db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

/// Exact multivariate polynomial with rational coefficients over a fixed VarSet.
///
/// Terms are kept in canonical form: no zero coefficients, exponent vectors of
/// length |vars|, graded-lex order. Two Polys over the same VarSet are equal
/// as polynomials iff they compare equal with ==.
class Poly {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexGreater>;

  Poly() = default;
  explicit Poly(VarSet vars) : vars_(std::move(vars)) {}

  static Poly constant(const VarSet& vars, const Rational& c) {
    Poly p(vars);
    if (!c.is_zero()) p.terms_.emplace(Exponents(vars.size(), 0), c);
    return p;
  }
  static Poly variable(const VarSet& vars, std::string_view name) {
    Exponents e(vars.size(), 0);
    e[vars.index(name)] = 1;
    return monomial(vars, std::move(e), Rational(1));
  }
  static Poly monomial(const VarSet& vars, Exponents e, const Rational& c) {
    if (e.size() != vars.size()) throw DomainError("Poly: exponent vector length mismatch");
    Poly p(vars);
    if (!c.is_zero()) p.terms_.emplace(std::move(e), c);
    return p;
  }
  /// Parses expressions such as "x1*z - 1/2*q1^2 + (a - b)^2".
  static Poly parse(const VarSet& vars, std::string_view text);

  [[nodiscard]] const VarSet& vars() const { return vars_; }
  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] std::size_t term_count() const { return terms_.size(); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }
  [[nodiscard]] Rational constant_term() const { return coefficient(Exponents(vars_.size(), 0)); }
  [[nodiscard]] Rational coefficient(const Exponents& e) const {
    const auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  /// Total degree; -1 for the zero polynomial.
  [[nodiscard]] int degree() const {
    return terms_.empty() ? -1 : static_cast<int>(total_degree(terms_.begin()->first));
  }
  /// Highest exponent of `name`; -1 for the zero polynomial.
  [[nodiscard]] int degree_in(std::string_view name) const {
    const auto i = vars_.index(name);
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[i]));
    return d;
  }
  [[nodiscard]] bool depends_on(std::string_view name) const { return degree_in(name) > 0; }

  Poly& operator+=(const Poly& o) {
    require_same(o);
    for (const auto& [e, c] : o.terms_) accumulate(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    require_same(o);
    for (const auto& [e, c] : o.terms_) accumulate(e, -c);
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const Rational& c) {
    if (c.is_zero()) {
      terms_.clear();
    } else {
      for (auto& [e, coef] : terms_) coef *= c;
    }
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.require_same(b);
    Poly r(a.vars_);
    Exponents e(a.vars_.size());
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.accumulate(e, ca * cb);
      }
    }
    return r;
  }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator+(Poly a, const Rational& c) { return a += constant(a.vars_, c); }
  friend Poly operator+(const Rational& c, Poly a) { return a += constant(a.vars_, c); }
  friend Poly operator-(Poly a, const Rational& c) { return a -= constant(a.vars_, c); }
  friend Poly operator-(const Rational& c, const Poly& a) { return constant(a.vars_, c) - a; }

  [[nodiscard]] Poly pow(unsigned n) const {
    Poly result = constant(vars_, Rational(1));
    Poly base = *this;
    while (n) {
      if (n & 1U) result *= base;
      n >>= 1U;
      if (n) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  /// Canonical human-readable form, graded-lex leading term first.
  [[nodiscard]] std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      const bool negative = c.sign() < 0;
      const Rational mag = negative ? -c : c;
      if (first) {
        out += negative ? "-" : "";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_.name(i);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) {
        out += mag.str();
      } else if (mag.is_one()) {
        out += mono;
      } else {
        out += mag.str() + "*" + mono;
      }
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

 private:
  void require_same(const Poly& o) const {
    if (!(vars_ == o.vars_)) {
      throw VarSetMismatch("Poly: variable sets differ: " + vars_.str() + " vs " + o.vars_.str());
    }
  }
  void accumulate(const Exponents& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  VarSet vars_;
  TermMap terms_;
};

using Bindings = std::map<std::string, Poly>;

/// Exact partial derivative.
inline Poly diff(const Poly& p, std::string_view var) {
  const auto i = p.vars().index(var);
  Poly r(p.vars());
  for (const auto& [e, c] : p.terms()) {
    if (e[i] == 0) continue;
    Exponents de = e;
    --de[i];
    r += Poly::monomial(p.vars(), std::move(de), c * Rational(static_cast<long>(e[i])));
  }
  return r;
}

inline std::vector<Poly> gradient(const Poly& p, const std::vector<std::string>& wrt) {
  std::vector<Poly> g;
  g.reserve(wrt.size());
  for (const auto& v : wrt) g.push_back(diff(p, v));
  return g;
}

/// Simultaneous substitution of variables of `p` by Polys over `target`.
/// Variables of `p` left unbound are carried over by name and must exist in `target`.
inline Poly compose(const Poly& p, const Bindings& bindings, const VarSet& target) {
  const VarSet& src = p.vars();
  for (const auto& [name, replacement] : bindings) {
    (void)src.index(name);
    if (!(replacement.vars() == target)) {
      throw VarSetMismatch("compose: replacement for '" + name + "' is not over " + target.str());
    }
  }
  std::vector<const Poly*> repl(src.size(), nullptr);
  std::vector<std::optional<std::size_t>> carried(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (auto it = bindings.find(src.name(i)); it != bindings.end()) {
      repl[i] = &it->second;
    } else {
      carried[i] = target.find(src.name(i));
    }
  }
  std::vector<std::vector<Poly>> powers(src.size());
  auto power = [&](std::size_t i, std::uint32_t k) -> const Poly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Poly::constant(target, Rational(1)));
    while (cache.size() <= k) cache.push_back(cache.back() * *repl[i]);
    return cache[k];
  };
  Poly result(target);
  for (const auto& [e, c] : p.terms()) {
    Exponents kept(target.size(), 0);
    Poly factor = Poly::constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (repl[i]) {
        factor = factor * power(i, e[i]);
      } else if (carried[i]) {
        kept[*carried[i]] += e[i];
      } else {
        throw UnknownVariable("compose: variable '" + src.name(i) + "' has no binding and is absent from " +
                              target.str());
      }
    }
    result += factor * Poly::monomial(target, std::move(kept), Rational(1));
  }
  return result;
}

/// Simultaneous substitution within one VarSet.
inline Poly substitute(const Poly& p, const Bindings& bindings) { return compose(p, bindings, p.vars()); }

/// Re-expresses `p` over `target`, matching variables by name.
inline Poly rebase(const Poly& p, const VarSet& target) { return compose(p, {}, target); }

/// Exact evaluation. Every variable `p` actually uses must be bound.
inline Rational eval(const Poly& p, const std::map<std::string, Rational>& point) {
  const VarSet& vs = p.vars();
  std::vector<std::optional<Rational>> values(vs.size());
  for (const auto& [name, value] : point) values[vs.index(name)] = value;
  Rational sum(0);
  for (const auto& [e, c] : p.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!values[i]) throw UnboundVariable("eval: variable '" + vs.name(i) + "' is unbound");
      for (std::uint32_t k = 0; k < e[i]; ++k) term *= *values[i];
    }
    sum += term;
  }
  return sum;
}

/// Floating-point evaluation.
inline double eval(const Poly& p, const std::map<std::string, double>& point) {
  const VarSet& vs = p.vars();
  std::vector<std::optional<double>> values(vs.size());
  for (const auto& [name, value] : point) values[vs.index(name)] = value;
  double sum = 0.0;
  for (const auto& [e, c] : p.terms()) {
    double term = c.to_double();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!values[i]) throw UnboundVariable("eval: variable '" + vs.name(i) + "' is unbound");
      for (std::uint32_t k = 0; k < e[i]; ++k) term *= *values[i];
    }
    sum += term;
  }
  return sum;
}

/// Splits `p` by the monomials of the variables `split_vars`:
/// p = sum over keys m of m * result[m], with result[m] free of split_vars.
/// Keys are exponent vectors over `split_vars` in the given order.
inline std::map<Exponents, Poly, GradedLexGreater> coefficients_in(const Poly& p,
                                                                   const std::vector<std::string>& split_vars) {
  const VarSet& vs = p.vars();
  std::vector<std::size_t> idx;
  idx.reserve(split_vars.size());
  for (const auto& v : split_vars) idx.push_back(vs.index(v));
  std::map<Exponents, Poly, GradedLexGreater> out;
  for (const auto& [e, c] : p.terms()) {
    Exponents key(idx.size());
    Exponents rest = e;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      key[k] = e[idx[k]];
      rest[idx[k]] = 0;
    }
    auto [it, inserted] = out.try_emplace(key, Poly(vs));
    it->second += Poly::monomial(vs, std::move(rest), c);
  }
  return out;
}

/// All exponent vectors over `n` variables with total degree <= max_degree,
/// in graded-lex order starting from the constant monomial.
inline std::vector<Exponents> monomials_up_to(std::size_t n, std::uint32_t max_degree) {
  std::vector<Exponents> out;
  Exponents e(n, 0);
  auto rec = [&](auto&& self, std::size_t pos, std::uint32_t remaining) -> void {
    if (pos == n) {
      out.push_back(e);
      return;
    }
    for (std::uint32_t k = 0; k <= remaining; ++k) {
      e[pos] = k;
      self(self, pos + 1, remaining - k);
    }
    e[pos] = 0;
  };
  rec(rec, 0, max_degree);
  std::sort(out.begin(), out.end(), [](const Exponents& a, const Exponents& b) {
    return GradedLexGreater{}(b, a);
  });
  return out;
}

namespace detail {

class PolyParser {
 public:
  PolyParser(const VarSet& vars, std::string_view text) : vars_(vars), text_(text) {}

  Poly run() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("Poly::parse: " + what + " at offset " + std::to_string(pos_) + " in '" +
                      std::string(text_) + "'");
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (eat('+')) {
        acc += term();
      } else if (eat('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }
  Poly term() {
    Poly acc = unary();
    for (;;) {
      if (eat('*')) {
        acc = acc * unary();
      } else if (eat('/')) {
        skip_ws();
        const Rational d = number();
        acc *= Rational(1) / d;
      } else {
        return acc;
      }
    }
  }
  Poly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    Poly b = base();
    if (eat('^')) {
      skip_ws();
      const Rational k = number();
      if (k.sign() < 0 || !(k.denominator() == 1)) fail("exponent must be a non-negative integer");
      b = b.pow(static_cast<unsigned>(k.numerator().get_ui()));
    }
    return b;
  }
  Rational number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a number");
    return Rational::parse(text_.substr(start, pos_ - start));
  }
  Poly base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Poly::constant(vars_, number());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return Poly::variable(vars_, text_.substr(start, pos_ - start));
    }
    fail("unexpected character");
  }

  const VarSet& vars_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly Poly::parse(const VarSet& vars, std::string_view text) { return detail::PolyParser(vars, text).run(); }

}  // namespace mbsym
