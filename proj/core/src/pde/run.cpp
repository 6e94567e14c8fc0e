#include "seeding/pde/run.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "seeding/errors.hpp"

namespace seeding::pde {
namespace {

long long step_index(double t, double t0, double dt, const char* what) {
  const double steps = (t - t0) / dt;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, std::abs(steps))) {
    throw ConfigError(fmt::format("{} = {} h is not a multiple of the time step {} h", what, t, dt));
  }
  return static_cast<long long>(rounded);
}

double field_minimum(const FieldState& s) {
  return std::min({s.c1.minCoeff(), s.c2.minCoeff(), s.chi.minCoeff(), s.h.minCoeff(),
                   s.tau.minCoeff()});
}

}  // namespace

PdeRunResult run(PdeStepper& stepper, const FieldState& initial, const PdeRunSettings& settings) {
  const double dt = stepper.settings().dt;
  const double t0 = initial.t;
  if (!(settings.t_end > t0)) throw ConfigError("t_end must be greater than the initial time");
  const long long n_total = step_index(settings.t_end, t0, dt, "t_end");

  std::vector<long long> snapshot_steps;
  for (double ts : settings.snapshot_times) {
    if (ts < t0 - 1e-9 || ts > settings.t_end + 1e-9) {
      throw ConfigError(fmt::format("snapshot time {} h lies outside the run", ts));
    }
    snapshot_steps.push_back(step_index(ts, t0, dt, "snapshot time"));
  }
  std::sort(snapshot_steps.begin(), snapshot_steps.end());
  snapshot_steps.erase(std::unique(snapshot_steps.begin(), snapshot_steps.end()),
                       snapshot_steps.end());

  std::vector<long long> renewal_steps;
  if (settings.renewal) {
    for (double te : settings.renewal->event_times(t0, settings.t_end)) {
      renewal_steps.push_back(step_index(te, t0, dt, "renewal time"));
    }
  }

  PdeRunResult result;
  const auto probe = stepper.grid().locate(settings.probe);
  if (!probe) throw ConfigError("probe location lies outside the scaffold");
  result.probe_cell = *probe;

  FieldState state = initial;
  result.min_value = field_minimum(state);
  auto record = [&](long long n) {
    result.probe.push_back({state.t, state.at(result.probe_cell)});
    if (std::binary_search(snapshot_steps.begin(), snapshot_steps.end(), n)) {
      result.snapshots.push_back({state.t, state});
    }
  };
  record(0);
  for (long long n = 1; n <= n_total; ++n) {
    stepper.step(state);
    state.t = t0 + static_cast<double>(n) * dt;
    if (std::binary_search(renewal_steps.begin(), renewal_steps.end(), n)) {
      state.chi = state.chi.unaryExpr(
          [&](double chi) { return settings.renewal->renewed_chi(chi); });
    }
    result.min_value = std::min(result.min_value, field_minimum(state));
    record(n);
  }
  result.final_state = std::move(state);
  result.stats = stepper.stats();
  return result;
}

}  // namespace seeding::pde
