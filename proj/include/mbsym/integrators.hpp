#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mbsym/compiled.hpp"
#include "mbsym/error.hpp"
#include "mbsym/model.hpp"

namespace mbsym::integrators {

using model::InvariantId;
using model::SystemId;

enum class IntegratorId { RK4, IMPLICIT_MIDPOINT };

inline std::string_view to_string(IntegratorId id) {
  return id == IntegratorId::RK4 ? "rk4" : "midpoint";
}

/// Newton stopping rule for the implicit midpoint solve.
inline constexpr double kNewtonTolerance = 1e-12;
inline constexpr int kNewtonMaxIterations = 50;

class NewtonFailure : public NumericalFailure {
 public:
  NewtonFailure(int iterations, double last_update)
      : NumericalFailure("implicit midpoint: Newton did not converge after " + std::to_string(iterations) +
                         " iterations (last update norm " + std::to_string(last_update) + ")"),
        iterations_(iterations),
        last_update_(last_update) {}
  [[nodiscard]] int iterations() const { return iterations_; }
  [[nodiscard]] double last_update() const { return last_update_; }

 private:
  int iterations_;
  double last_update_;
};

class BlowUp : public NumericalFailure {
 public:
  explicit BlowUp(double time)
      : NumericalFailure("non-finite state at t = " + std::to_string(time)), time_(time) {}
  [[nodiscard]] double time() const { return time_; }

 private:
  double time_;
};

using StateVec = std::vector<double>;

namespace detail {

inline StateVec axpy(std::span<const double> x, double a, std::span<const double> y) {
  StateVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * y[i];
  return out;
}

inline StateVec rk4_step(const NumericField& f, std::span<const double> y, double h) {
  const StateVec k1 = f(y);
  const StateVec k2 = f(axpy(y, 0.5 * h, k1));
  const StateVec k3 = f(axpy(y, 0.5 * h, k2));
  const StateVec k4 = f(axpy(y, h, k3));
  StateVec out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

// Solves Y = y + h F((y + Y)/2) by Newton's method from an explicit Euler guess.
inline StateVec midpoint_step(const NumericField& f, std::span<const double> y, double h) {
  const std::size_t n = y.size();
  StateVec next = axpy(y, h, f(y));
  StateVec mid(n);
  double update = 0.0;
  for (int it = 1; it <= kNewtonMaxIterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (y[i] + next[i]);
    const StateVec fm = f(mid);
    const StateVec dfm = f.jacobian(mid);
    Eigen::MatrixXd jac(n, n);
    Eigen::VectorXd g(n);
    for (std::size_t i = 0; i < n; ++i) {
      g(i) = next[i] - y[i] - h * fm[i];
      for (std::size_t j = 0; j < n; ++j) jac(i, j) = (i == j ? 1.0 : 0.0) - 0.5 * h * dfm[i * n + j];
    }
    const Eigen::VectorXd delta = jac.partialPivLu().solve(-g);
    update = delta.cwiseAbs().maxCoeff();
    for (std::size_t i = 0; i < n; ++i) next[i] += delta(i);
    if (!std::isfinite(update)) break;
    if (update <= kNewtonTolerance) return next;
  }
  throw NewtonFailure(kNewtonMaxIterations, update);
}

}  // namespace detail

/// One step of size h from `state`. A negative h steps backwards in time.
inline StateVec step(IntegratorId method, const NumericField& field, std::span<const double> state, double /*t*/,
                     double h) {
  if (state.size() != field.dim()) throw DomainError("step: state dimension does not match the field");
  if (!(std::isfinite(h) && h != 0.0)) throw DomainError("step: h must be finite and nonzero");
  return method == IntegratorId::RK4 ? detail::rk4_step(field, state, h) : detail::midpoint_step(field, state, h);
}

inline StateVec step(IntegratorId method, SystemId system, std::span<const double> state, double t, double h) {
  return step(method, model::numeric_field(system), state, t, h);
}

struct Trajectory {
  std::optional<SystemId> system;
  double h = 0.0;
  std::vector<double> times;
  std::vector<StateVec> states;
};

/// Fixed-step integration from t0 to t_end; a shorter last step lands exactly on t_end.
inline Trajectory integrate(IntegratorId method, const NumericField& field, std::span<const double> initial,
                            double t0, double t_end, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("integrate: h must be positive");
  if (!(t_end >= t0)) throw DomainError("integrate: t_end must not precede t0");
  if (initial.size() != field.dim()) throw DomainError("integrate: initial state has the wrong dimension");
  Trajectory traj;
  traj.h = h;
  traj.times.push_back(t0);
  traj.states.emplace_back(initial.begin(), initial.end());
  const double span = t_end - t0;
  const auto full = static_cast<long>(std::floor(span / h + 1e-9));
  traj.times.reserve(static_cast<std::size_t>(full) + 2);
  traj.states.reserve(static_cast<std::size_t>(full) + 2);
  auto advance = [&](double t, double dt, double t_next) {
    StateVec next = step(method, field, traj.states.back(), t, dt);
    for (double v : next) {
      if (!std::isfinite(v)) throw BlowUp(t_next);
    }
    traj.times.push_back(t_next);
    traj.states.push_back(std::move(next));
  };
  for (long k = 0; k < full; ++k) {
    const double t = t0 + static_cast<double>(k) * h;
    const double t_next = k + 1 == full ? std::min(t0 + static_cast<double>(k + 1) * h, t_end)
                                        : t0 + static_cast<double>(k + 1) * h;
    advance(t, h, t_next);
  }
  const double reached = traj.times.back();
  const double rest = t_end - reached;
  if (rest > 1e-12 * std::max(1.0, std::abs(t_end))) {
    advance(reached, rest, t_end);
  } else {
    traj.times.back() = t_end;
  }
  return traj;
}

inline Trajectory integrate(IntegratorId method, SystemId system, std::span<const double> initial, double t0,
                            double t_end, double h) {
  if (initial.size() != model::dimension(system)) {
    throw DomainError("integrate: " + std::string(model::to_string(system)) + " expects " +
                      std::to_string(model::dimension(system)) + " initial values");
  }
  Trajectory traj = integrate(method, model::numeric_field(system), initial, t0, t_end, h);
  traj.system = system;
  return traj;
}

struct InvariantDrift {
  InvariantId id;
  double initial = 0.0;
  double max_abs_deviation = 0.0;
  double final_deviation = 0.0;

  /// max |I(t) - I(0)| / |I(0)|; the absolute deviation when I(0) = 0.
  [[nodiscard]] double max_relative_deviation() const {
    return initial == 0.0 ? max_abs_deviation : max_abs_deviation / std::abs(initial);
  }
};

struct DriftReport {
  std::vector<InvariantDrift> drifts;

  [[nodiscard]] const InvariantDrift& at(InvariantId id) const {
    for (const auto& d : drifts) {
      if (d.id == id) return d;
    }
    throw DomainError("DriftReport: invariant not tracked");
  }
};

inline DriftReport drift_report(const Trajectory& traj, const std::vector<InvariantId>& ids) {
  if (!traj.system) throw DomainError("drift_report: trajectory has no associated system");
  if (traj.states.empty()) throw DomainError("drift_report: empty trajectory");
  DriftReport report;
  for (const InvariantId id : ids) {
    if (model::domain_of(id) != *traj.system) {
      throw DomainError("drift_report: " + std::string(model::to_string(id)) + " is not an invariant of " +
                        std::string(model::to_string(*traj.system)));
    }
    InvariantDrift d{id};
    d.initial = model::invariant(id, *traj.system, traj.states.front());
    for (const auto& s : traj.states) {
      const double dev = std::abs(model::invariant(id, *traj.system, s) - d.initial);
      d.max_abs_deviation = std::max(d.max_abs_deviation, dev);
      d.final_deviation = dev;
    }
    report.drifts.push_back(d);
  }
  return report;
}

/// Richardson estimate log2(err(h0) / err(h0/2)), errors measured at t_end in the
/// max-norm against a reference run with step h0/64.
struct ConvergenceStudy {
  double error_h = 0.0;
  double error_half_h = 0.0;
  double order = 0.0;
};

inline ConvergenceStudy convergence_order(IntegratorId method, const NumericField& field,
                                          std::span<const double> initial, double t_end, double h0) {
  auto final_state = [&](double h) { return integrate(method, field, initial, 0.0, t_end, h).states.back(); };
  StateVec reference;
  try {
    reference = final_state(h0 / 64.0);
  } catch (const BlowUp& e) {
    throw NumericalFailure(std::string("convergence_order: reference run blew up: ") + e.what());
  }
  auto error = [&](double h) {
    const StateVec s = final_state(h);
    double e = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) e = std::max(e, std::abs(s[i] - reference[i]));
    return e;
  };
  ConvergenceStudy study;
  study.error_h = error(h0);
  study.error_half_h = error(h0 / 2.0);
  study.order = std::log2(study.error_h / study.error_half_h);
  return study;
}

inline ConvergenceStudy convergence_order(IntegratorId method, SystemId system, std::span<const double> initial,
                                          double t_end, double h0) {
  return convergence_order(method, model::numeric_field(system), initial, t_end, h0);
}

}  // namespace mbsym::integrators
