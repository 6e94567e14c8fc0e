#pragma once

#include <cstddef>
#include <memory>

#include "seeding/model.hpp"
#include "seeding/pde/fields.hpp"
#include "seeding/pde/grid.hpp"
#include "seeding/pde/operators.hpp"

namespace seeding::pde {

enum class TimeScheme {
  kImex,           // implicit-Euler reactions, explicit upwind taxis, implicit diffusion
  kFullyImplicit,  // one coupled implicit Euler system per step, solved by Newton
};

struct StepperSettings {
  double dt = 0.1;  // h
  TimeScheme scheme = TimeScheme::kImex;
  bool reactions = true;
  double newton_tol = 1e-11;  // relative to each field's max magnitude
  int max_newton_iterations = 30;
  double linear_residual_tol = 1e-10;

  void validate() const;
};

struct StepStats {
  std::size_t steps = 0;
  std::size_t reaction_newton_iterations = 0;
  std::size_t taxis_substeps = 0;
  std::size_t global_newton_iterations = 0;
};

/// Advances the five fields on a scaffold grid by one time step.
///
/// c1 diffuses with D1, c2 with D2 and chi with D_chi I; h and tau are purely
/// local. The diffusion operators are constant, so their implicit-step
/// matrices are factorised once at construction.
class PdeStepper {
 public:
  PdeStepper(ScaffoldGrid grid, SeedingModel model, const Tensor2& D1, const Tensor2& D2,
             TaxisCoefficient taxis, StepperSettings settings);
  ~PdeStepper();
  PdeStepper(PdeStepper&&) noexcept;
  PdeStepper& operator=(PdeStepper&&) noexcept;

  /// Advances `state` from state.t to state.t + dt.
  void step(FieldState& state);

  [[nodiscard]] const ScaffoldGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] const SeedingModel& model() const noexcept { return model_; }
  [[nodiscard]] const StepperSettings& settings() const noexcept { return settings_; }
  [[nodiscard]] const StepStats& stats() const noexcept { return stats_; }

 private:
  struct Solvers;

  void step_imex(FieldState& state, double t_next);
  void step_fully_implicit(FieldState& state, double t_next);
  void solve_diffusion(int species, Field& field, double t_next) const;

  ScaffoldGrid grid_;
  SeedingModel model_;
  TaxisCoefficient taxis_;
  StepperSettings settings_;
  StepStats stats_;
  std::unique_ptr<Solvers> solvers_;
};

}  // namespace seeding::pde
