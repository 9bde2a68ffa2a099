#pragma once

// Fixed-step classical Runge-Kutta integration for any vector-space state.

#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "semidec/errors.hpp"

namespace semidec {

template <class Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& x) {
  return x.allFinite();
}

/// States the integrator can step: closed under + and scalar *, with a
/// finiteness check found by ADL.
template <class S>
concept IntegrableState = std::copy_constructible<S> && requires(const S& a, const S& b, double h) {
  { a + b } -> std::convertible_to<S>;
  { h * a } -> std::convertible_to<S>;
  { all_finite(a) } -> std::convertible_to<bool>;
};

template <class S>
struct Trajectory {
  std::vector<double> times;
  std::vector<S> states;

  std::size_t size() const { return times.size(); }
};

/// One classical four-stage step of x' = f(t, x).
template <IntegrableState S, class Rhs>
S rk4_step(Rhs&& f, double t, const S& x, double dt) {
  if (!(dt > 0.0)) throw ValidationError("rk4 step must be positive");
  auto eval = [&](double ti, const S& xi) {
    S k = f(ti, xi);
    if (!all_finite(k)) throw NumericalError("non-finite derivative at t = " + std::to_string(ti));
    return k;
  };
  const S k1 = eval(t, x);
  const S k2 = eval(t + 0.5 * dt, x + (0.5 * dt) * k1);
  const S k3 = eval(t + 0.5 * dt, x + (0.5 * dt) * k2);
  const S k4 = eval(t + dt, x + dt * k3);
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Number of steps needed to reach t_end with step dt; the last step is
/// shortened when dt does not divide t_end.
inline std::size_t step_count(double t_end, double dt) {
  if (t_end == 0.0) return 0;
  const double n = std::ceil(t_end / dt * (1.0 - 1e-12));
  if (n > 1e8) throw ValidationError("integration would take more than 1e8 steps");
  return static_cast<std::size_t>(n);
}

/// Fixed-step RK4 from t = 0 to t_end. The hook, when given, sees every
/// recorded snapshot (including the initial one) in order.
template <IntegrableState S, class Rhs>
Trajectory<S> integrate(Rhs&& f, const S& x0, double t_end, double dt,
                        const std::function<void(double, const S&)>& hook = {}) {
  if (!(t_end >= 0.0)) throw ValidationError("t_end must be non-negative");
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  const std::size_t n = step_count(t_end, dt);
  Trajectory<S> out;
  out.times.reserve(n + 1);
  out.states.reserve(n + 1);
  out.times.push_back(0.0);
  out.states.push_back(x0);
  if (hook) hook(0.0, x0);
  for (std::size_t i = 1; i <= n; ++i) {
    const double t0 = out.times.back();
    const double t1 = i == n ? t_end : static_cast<double>(i) * dt;
    S next = rk4_step(f, t0, out.states.back(), t1 - t0);
    if (hook) hook(t1, next);
    out.times.push_back(t1);
    out.states.push_back(std::move(next));
  }
  return out;
}

}  // namespace semidec
