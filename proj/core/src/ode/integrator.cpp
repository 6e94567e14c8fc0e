#include "seeding/ode/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "seeding/parameters.hpp"

namespace seeding::ode {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Shampine-Reichelt constants of the 2(3) Rosenbrock pair.
const double kGamma = 1.0 / (2.0 + std::sqrt(2.0));
const double kE32 = 6.0 + std::sqrt(2.0);

bool is_multiple(double value, double unit) {
  const double k = std::round(value / unit);
  return k >= 1.0 && std::abs(value - k * unit) <= 1e-9 * std::max(1.0, std::abs(value));
}

/// Merged list of stopping points (outputs, events, t_end) in (t0, t_end].
struct Stop {
  double t;
  bool event;
};

std::vector<Stop> stopping_points(double t0, double t_end, double interval,
                                  const std::vector<double>& events) {
  std::vector<Stop> stops;
  const double span = t_end - t0;
  const auto n_out = static_cast<long long>(std::floor(span / interval * (1.0 + 1e-12)));
  std::size_t e = 0;
  auto push_events_before = [&](double t) {
    while (e < events.size() && events[e] < t - 1e-9) {
      stops.push_back({events[e], true});
      ++e;
    }
  };
  for (long long k = 1; k <= n_out; ++k) {
    double t = t0 + static_cast<double>(k) * interval;
    if (t > t_end || std::abs(t - t_end) <= 1e-9 * std::max(1.0, std::abs(t_end))) t = t_end;
    push_events_before(t);
    bool event = false;
    if (e < events.size() && std::abs(events[e] - t) <= 1e-9) {
      t = events[e];
      event = true;
      ++e;
    }
    stops.push_back({t, event});
  }
  push_events_before(t_end);
  if (stops.empty() || stops.back().t < t_end) stops.push_back({t_end, false});
  return stops;
}

double error_norm(const StateVector& err, const StateVector& y, const StateVector& ynew,
                  const Tolerances& tol) {
  double norm = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double scale = tol.abs + tol.rel * std::max(std::abs(y[i]), std::abs(ynew[i]));
    norm = std::max(norm, std::abs(err[i]) / scale);
  }
  return norm;
}

double initial_step(const StateVector& y, const StateVector& f, const Tolerances& tol,
                    double span) {
  double d0 = 0.0;
  double d1 = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double sc = tol.abs + tol.rel * std::abs(y[i]);
    d0 = std::max(d0, std::abs(y[i]) / sc);
    d1 = std::max(d1, std::abs(f[i]) / sc);
  }
  const double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  return std::min(h, span);
}

class RosenbrockStepper {
 public:
  RosenbrockStepper(const OdeSystem& sys, const IntegratorSettings& s, SolverStats& stats)
      : sys_(sys), settings_(s), stats_(stats) {}

  /// Advances (t, y) to exactly `stop`. `h` carries the step-size proposal
  /// across calls; `f` is the cached rhs at (t, y).
  void advance(double& t, StateVector& y, StateVector& f, double& h, double stop) {
    while (t < stop) {
      if (stats_.steps + stats_.rejected_steps >= settings_.max_steps) {
        throw SolverError("maximum number of steps exceeded", t);
      }
      const double h_min = 16.0 * kEps * std::max(1.0, std::abs(t));
      bool last = false;
      double h_step = h;
      if (t + h_step >= stop - h_min) {
        h_step = stop - t;
        last = true;
      }
      if (h_step < h_min) throw SolverError("step size underflow", t);

      StateVector ynew;
      StateVector fnew;
      const double err = attempt(t, y, f, h_step, ynew, fnew);
      if (err <= 1.0) {
        ++stats_.steps;
        t = last ? stop : t + h_step;
        y = ynew;
        f = fnew;
        const double grow =
            err == 0.0 ? 5.0 : std::clamp(0.8 * std::pow(err, -1.0 / 3.0), 0.2, 5.0);
        const double proposal = h_step * grow;
        h = last ? std::max(h, proposal) : proposal;
      } else {
        ++stats_.rejected_steps;
        const double shrink =
            std::isfinite(err) ? std::max(0.2, 0.8 * std::pow(err, -1.0 / 3.0)) : 0.2;
        h = h_step * shrink;
      }
    }
  }

 private:
  // Returns the scaled error norm, +inf if a stage produced a non-finite value.
  double attempt(double t, const StateVector& y, const StateVector& f0, double h,
                 StateVector& ynew, StateVector& fnew) {
    const StateMatrix J = sys_.jacobian(t, y);
    const StateVector T = sys_.time_derivative(t, y);
    ++stats_.jacobian_evaluations;
    const StateMatrix W = StateMatrix::Identity() - (h * kGamma) * J;
    const Eigen::PartialPivLU<StateMatrix> lu(W);

    const StateVector k1 = lu.solve(f0 + (h * kGamma) * T);
    const StateVector y1 = y + 0.5 * h * k1;
    if (!y1.allFinite()) return std::numeric_limits<double>::infinity();
    const StateVector f1 = sys_.rhs(t + 0.5 * h, y1);
    const StateVector k2 = lu.solve(f1 - k1) + k1;
    ynew = y + h * k2;
    if (!ynew.allFinite()) return std::numeric_limits<double>::infinity();
    fnew = sys_.rhs(t + h, ynew);
    const StateVector k3 = lu.solve(fnew - kE32 * (k2 - f1) - 2.0 * (k1 - f0) + (h * kGamma) * T);
    stats_.rhs_evaluations += 2;
    const StateVector err = (h / 6.0) * (k1 - 2.0 * k2 + k3);
    return error_norm(err, y, ynew, settings_.tol);
  }

  const OdeSystem& sys_;
  const IntegratorSettings& settings_;
  SolverStats& stats_;
};

void require_finite_state(const StateVector& y, double t) {
  if (!y.allFinite()) throw SolverError("non-finite state", t);
}

}  // namespace

OdeSystem OdeSystem::from_model(const SeedingModel& model) {
  return {[model](double t, const StateVector& y) { return model.rhs(t, y); },
          [model](double t, const StateVector& y) { return model.jacobian(t, y); },
          [model](double t, const StateVector& y) { return model.time_derivative(t, y); }};
}

void IntegratorSettings::validate() const {
  if (!(tol.rel > 0.0) || !(tol.abs > 0.0)) throw ConfigError("tolerances must be > 0");
  if (!(output_interval > 0.0)) throw ConfigError("output_interval must be > 0");
  if (method == Method::kImplicitEuler) {
    if (!(fixed_step > 0.0)) throw ConfigError("fixed_step must be > 0");
    if (!is_multiple(output_interval, fixed_step)) {
      throw ConfigError("output_interval must be a multiple of fixed_step");
    }
  }
  if (initial_step < 0.0) throw ConfigError("initial_step must be >= 0");
}

Trajectory integrate(const OdeSystem& system, const OdeState& y0, double t0, double t_end,
                     const std::optional<RenewalSchedule>& schedule,
                     const IntegratorSettings& settings) {
  settings.validate();
  if (!(t_end > t0)) throw ConfigError("t_end must be > t0");
  std::vector<double> event_times;
  if (schedule) {
    schedule->validate();
    event_times = schedule->event_times(t0, t_end);
  }

  Trajectory traj;
  StateVector y = y0.vector();
  require_finite_state(y, t0);
  traj.samples.push_back({t0, y0});
  const std::vector<Stop> stops =
      stopping_points(t0, t_end, settings.output_interval, event_times);

  if (settings.method == Method::kImplicitEuler) {
    const double dt = settings.fixed_step;
    const double n_total = (t_end - t0) / dt;
    if (std::abs(n_total - std::round(n_total)) > 1e-9 * std::max(1.0, n_total)) {
      throw ConfigError("run span must be a multiple of fixed_step");
    }
    for (double te : event_times) {
      if (!is_multiple(te - t0, dt)) throw ConfigError("renewal period must be a multiple of fixed_step");
    }
    long long n = 0;
    for (const Stop& stop : stops) {
      const auto n_stop = static_cast<long long>(std::llround((stop.t - t0) / dt));
      for (; n < n_stop; ++n) {
        const double t_next = t0 + static_cast<double>(n + 1) * dt;
        y = implicit_euler_step(system, t_next, y, dt, &traj.stats.newton_iterations);
        require_finite_state(y, t_next);
        ++traj.stats.steps;
      }
      if (stop.event) {
        const OdeState before = OdeState::from_vector(y);
        const OdeState after = apply_renewal(before, *schedule);
        traj.events.push_back({stop.t, before, after});
        y = after.vector();
      }
      traj.samples.push_back({stop.t, OdeState::from_vector(y)});
    }
    // One Jacobian and one rhs per Newton iteration.
    traj.stats.jacobian_evaluations = traj.stats.newton_iterations;
    traj.stats.rhs_evaluations = traj.stats.newton_iterations;
    return traj;
  }

  RosenbrockStepper stepper(system, settings, traj.stats);
  double t = t0;
  StateVector f = system.rhs(t, y);
  ++traj.stats.rhs_evaluations;
  double h = settings.initial_step > 0.0
                 ? settings.initial_step
                 : initial_step(y, f, settings.tol, t_end - t0);
  for (const Stop& stop : stops) {
    stepper.advance(t, y, f, h, stop.t);
    require_finite_state(y, t);
    if (stop.event) {
      const OdeState before = OdeState::from_vector(y);
      const OdeState after = apply_renewal(before, *schedule);
      traj.events.push_back({stop.t, before, after});
      y = after.vector();
      f = system.rhs(t, y);
      ++traj.stats.rhs_evaluations;
      h = initial_step(y, f, settings.tol, t_end - t);
    }
    traj.samples.push_back({stop.t, OdeState::from_vector(y)});
  }
  return traj;
}

}  // namespace seeding::ode
