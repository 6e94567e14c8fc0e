#pragma once

#include <optional>
#include <vector>

#include "seeding/ode/renewal.hpp"
#include "seeding/pde/fields.hpp"
#include "seeding/pde/stepper.hpp"

namespace seeding::pde {

struct PdeRunSettings {
  double t_end = 144.0;                // h
  std::vector<double> snapshot_times;  // h, multiples of dt in [t0, t_end]
  Point probe{2500.0, 2500.0};         // um
  std::optional<ode::RenewalSchedule> renewal;
};

struct ProbeSample {
  double t;
  OdeState y;
};

struct Snapshot {
  double t;
  FieldState fields;
};

struct PdeRunResult {
  std::vector<ProbeSample> probe;  // every step, starting at t0
  std::vector<Snapshot> snapshots;
  FieldState final_state;
  StepStats stats;
  std::size_t probe_cell = 0;
  double min_value = 0.0;  // smallest field value seen over the run
};

/// Steps `initial` to t_end. Step n ends at exactly t0 + n dt; renewal events
/// are applied to chi at the end of the step that reaches them, before that
/// time is sampled.
[[nodiscard]] PdeRunResult run(PdeStepper& stepper, const FieldState& initial,
                               const PdeRunSettings& settings);

}  // namespace seeding::pde
