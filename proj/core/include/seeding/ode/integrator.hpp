#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>

#include <Eigen/LU>
#include <fmt/format.h>

#include "seeding/errors.hpp"
#include "seeding/model.hpp"
#include "seeding/ode/renewal.hpp"
#include "seeding/ode/trajectory.hpp"

namespace seeding::ode {

/// System y' = f(t, y) on the five-component state, with its Jacobian and
/// explicit time derivative.
struct OdeSystem {
  std::function<StateVector(double, const StateVector&)> rhs;
  std::function<StateMatrix(double, const StateVector&)> jacobian;
  std::function<StateVector(double, const StateVector&)> time_derivative;

  [[nodiscard]] static OdeSystem from_model(const SeedingModel& model);
};

enum class Method {
  kRosenbrock23,   // L-stable linearly implicit 2(3) pair, adaptive
  kImplicitEuler,  // fixed step, Newton on each step
};

struct Tolerances {
  double rel = 1e-6;
  double abs = 1e-9;
};

struct IntegratorSettings {
  Method method = Method::kRosenbrock23;
  Tolerances tol;
  double fixed_step = 0.1;       // h, implicit Euler only
  double output_interval = 0.5;  // h
  double initial_step = 0.0;     // h, 0 selects automatically
  std::size_t max_steps = 50'000'000;

  void validate() const;
};

/// Integrates from t0 to t_end. With a schedule, integration stops exactly at
/// each renewal time, records the event, applies it and restarts.
[[nodiscard]] Trajectory integrate(const OdeSystem& system, const OdeState& y0, double t0,
                                   double t_end, const std::optional<RenewalSchedule>& schedule,
                                   const IntegratorSettings& settings = {});

[[nodiscard]] inline Trajectory integrate(const SeedingModel& model, const OdeState& y0, double t0,
                                          double t_end,
                                          const std::optional<RenewalSchedule>& schedule,
                                          const IntegratorSettings& settings = {}) {
  return integrate(OdeSystem::from_model(model), y0, t0, t_end, schedule, settings);
}

struct NewtonOptions {
  double rel = 1e-13;
  double abs = 1e-25;
  int max_iterations = 50;
};

/// One implicit Euler step y_next = y + dt f(t_next, y_next), solved by Newton
/// from the initial guess y. `System` needs rhs(t, y) and jacobian(t, y) on
/// StateVector. Adds the iteration count to `iterations` when given.
template <class System>
[[nodiscard]] StateVector implicit_euler_step(const System& system, double t_next,
                                              const StateVector& y, double dt,
                                              std::size_t* iterations = nullptr,
                                              const NewtonOptions& opts = {}) {
  StateVector z = y;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    const StateVector residual = z - y - dt * system.rhs(t_next, z);
    const StateMatrix G = StateMatrix::Identity() - dt * system.jacobian(t_next, z);
    const StateVector delta = G.partialPivLu().solve(residual);
    z -= delta;
    if (!z.allFinite()) throw SolverError("implicit Euler Newton iterate is not finite", t_next);
    bool converged = true;
    for (int i = 0; i < 5; ++i) {
      if (std::abs(delta[i]) > opts.rel * std::abs(z[i]) + opts.abs) {
        converged = false;
        break;
      }
    }
    if (converged) {
      if (iterations) *iterations += static_cast<std::size_t>(it);
      return z;
    }
  }
  throw SolverError(fmt::format("implicit Euler Newton did not converge in {} iterations",
                                opts.max_iterations),
                    t_next);
}

}  // namespace seeding::ode
