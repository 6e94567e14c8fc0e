#pragma once

#include <cmath>

namespace seeding {

/// Prescribed mechanical stimulus S(t) = offset + amplitude * cos(t / period).
struct StimulusSignal {
  double offset = 0.5;
  double amplitude = 1.0;
  double period = 10.0;  // h

  [[nodiscard]] double operator()(double t) const { return offset + amplitude * std::cos(t / period); }

  [[nodiscard]] double derivative(double t) const {
    return -amplitude / period * std::sin(t / period);
  }

  /// Stimulus frozen at a constant value.
  [[nodiscard]] static StimulusSignal constant(double value) { return {value, 0.0, 1.0}; }
};

}  // namespace seeding
