#pragma once

#include <cstddef>
#include <vector>

#include "seeding/state.hpp"

namespace seeding::ode {

struct Sample {
  double t = 0.0;
  OdeState y;
};

/// State on both sides of a renewal. The trajectory sample at `t` (if any)
/// is the post-event state.
struct RenewalEvent {
  double t = 0.0;
  OdeState before;
  OdeState after;
};

struct SolverStats {
  std::size_t steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t newton_iterations = 0;
  std::size_t jacobian_evaluations = 0;
  std::size_t rhs_evaluations = 0;
};

/// Dense output of one integration: samples on a fixed cadence plus every
/// event time, strictly increasing in t, from t0 to t_end inclusive.
struct Trajectory {
  std::vector<Sample> samples;
  std::vector<RenewalEvent> events;
  SolverStats stats;

  [[nodiscard]] const Sample& front() const { return samples.front(); }
  [[nodiscard]] const Sample& back() const { return samples.back(); }
};

}  // namespace seeding::ode
