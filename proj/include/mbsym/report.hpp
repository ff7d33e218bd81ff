#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mbsym/poly.hpp"

namespace mbsym {

/// Outcome of one symbolic or numeric check.
///
/// A symbolic check passes iff every residual is the zero polynomial; a
/// numeric check passes iff every measured value is within its tolerance.
struct VerificationReport {
  std::string check;
  bool passed = true;
  std::vector<std::string> residuals;
  std::vector<std::string> witnesses;
  double elapsed_ms = 0.0;

  /// Records a residual that must be the zero polynomial.
  void residual(const std::string& label, const Poly& r) {
    residuals.push_back(label + " = " + r.str());
    if (!r.is_zero()) {
      passed = false;
      ++nonzero_;
    }
  }
  void residuals_of(const std::string& label, const std::vector<Poly>& rs) {
    for (std::size_t i = 0; i < rs.size(); ++i) residual(label + "[" + std::to_string(i) + "]", rs[i]);
  }
  /// Records a numeric quantity that must satisfy |value| <= tolerance.
  void bounded(const std::string& label, double value, double tolerance) {
    char buf[96];
    std::snprintf(buf, sizeof buf, " = %.6e (tol %.1e)", value, tolerance);
    residuals.push_back(label + buf);
    if (!(std::abs(value) <= tolerance)) {
      passed = false;
      ++nonzero_;
    }
  }
  /// Records a boolean condition; a false condition fails the check.
  void require(const std::string& label, bool ok) {
    witnesses.push_back(label + (ok ? " : holds" : " : FAILS"));
    if (!ok) {
      passed = false;
      ++nonzero_;
    }
  }
  void witness(std::string text) { witnesses.push_back(std::move(text)); }

  [[nodiscard]] std::size_t failures() const { return nonzero_; }

 private:
  std::size_t nonzero_ = 0;
};

/// Times a check body and stamps elapsed_ms on the report it returns.
template <class Body>
VerificationReport timed(const std::string& name, Body&& body) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport r;
  r.check = name;
  body(r);
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline void to_json(nlohmann::json& j, const VerificationReport& r) {
  j = nlohmann::json{{"check", r.check},
                     {"status", r.passed ? "pass" : "fail"},
                     {"residuals", r.residuals},
                     {"witnesses", r.witnesses},
                     {"elapsed_ms", r.elapsed_ms}};
}

}  // namespace mbsym
