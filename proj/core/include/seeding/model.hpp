#pragma once

#include "seeding/errors.hpp"
#include "seeding/parameters.hpp"
#include "seeding/state.hpp"
#include "seeding/stimulus.hpp"

namespace seeding {

/// Reaction terms of the homogeneous seeding system:
///
///   c1'  = -a1 c1 + a2 (w1/w2) c2 + beta c1 (1 - c1/C1* - c2/C2*)
///   c2'  =  a1 (w2/w1) c1 - a2 c2
///   chi' = -a_chi (c1/C1* + c2/C2*) chi
///   h'   = -g1 (c1/C1*) h - g2 (c2/C2*) h + g3 c2 / (1 + c2/C2*)
///   tau' = -d1 (c1/C1*) tau + d2 c2
///
/// with a1 = alpha1_S(S(t)) alpha1_chi(chi), a2 = alpha2_S(S(t)) alpha2_chi(chi).
/// The rate functions see max(chi, 0); all other terms use the raw state.
[[nodiscard]] OdeState ode_rhs(double t, const OdeState& y, const StimulusSignal& S,
                               const ParameterSet& p);

/// d(ode_rhs)/dy, row = equation, column = component.
[[nodiscard]] StateMatrix ode_jacobian(double t, const OdeState& y, const StimulusSignal& S,
                                       const ParameterSet& p);

/// Explicit time dependence of ode_rhs through S(t).
[[nodiscard]] StateVector ode_time_derivative(double t, const OdeState& y, const StimulusSignal& S,
                                              const ParameterSet& p);

/// Parameters and stimulus bundled into the system integrated by the ODE engine
/// and evaluated cell-wise by the PDE engine.
struct SeedingModel {
  ParameterSet params;
  StimulusSignal stimulus;

  [[nodiscard]] StateVector rhs(double t, const StateVector& y) const {
    return ode_rhs(t, OdeState::from_vector(y), stimulus, params).vector();
  }
  [[nodiscard]] StateMatrix jacobian(double t, const StateVector& y) const {
    return ode_jacobian(t, OdeState::from_vector(y), stimulus, params);
  }
  [[nodiscard]] StateVector time_derivative(double t, const StateVector& y) const {
    return ode_time_derivative(t, OdeState::from_vector(y), stimulus, params);
  }
};

}  // namespace seeding
