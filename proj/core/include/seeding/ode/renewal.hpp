#pragma once

#include <vector>

#include "seeding/state.hpp"

namespace seeding::ode {

enum class RenewalMode { kResetToValue, kAddValue };

/// Periodic replacement of the differentiation medium. Events fire at every
/// positive multiple of `period` strictly inside the run span.
struct RenewalSchedule {
  double period = 72.0;  // h
  RenewalMode mode = RenewalMode::kResetToValue;
  double value = 1e-3;   // mol/um^2

  /// Throws ConfigError if period <= 0 or value < 0.
  void validate() const;

  /// Event times k * period with t0 < k * period < t_end, ascending.
  [[nodiscard]] std::vector<double> event_times(double t0, double t_end) const;

  [[nodiscard]] double renewed_chi(double chi) const {
    return mode == RenewalMode::kResetToValue ? value : chi + value;
  }
};

/// Replaces or increments chi; every other component is returned untouched.
[[nodiscard]] inline OdeState apply_renewal(const OdeState& y, const RenewalSchedule& schedule) {
  OdeState out = y;
  out.chi = schedule.renewed_chi(y.chi);
  return out;
}

}  // namespace seeding::ode
