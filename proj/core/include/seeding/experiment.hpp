#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "seeding/config.hpp"
#include "seeding/fiber/orientation.hpp"
#include "seeding/ode/trajectory.hpp"
#include "seeding/pde/run.hpp"

namespace seeding {

/// Diffusion tensors used by a PDE run. The 3x3 blocks are absent when the
/// configuration supplied a planar (2x2) matrix.
struct ResolvedTensors {
  std::optional<fiber::Matrix3> M;
  std::optional<fiber::Matrix3> D1_3d;
  std::optional<fiber::Matrix3> D2_3d;
  fiber::Matrix2 D1;  // um^2/h, planar block actually simulated
  fiber::Matrix2 D2;
};

/// Applies [tensor] source and scale.
[[nodiscard]] ResolvedTensors resolve_tensors(const RunConfig& config);

/// Scaffold grid described by the [pde] section.
[[nodiscard]] pde::ScaffoldGrid make_grid(const RunConfig& config);

/// Initial fields described by the [pde] and [initial] sections.
[[nodiscard]] pde::FieldState make_initial_fields(const RunConfig& config,
                                                  const pde::ScaffoldGrid& grid);

[[nodiscard]] pde::PdeStepper make_stepper(const RunConfig& config, const pde::ScaffoldGrid& grid,
                                           const ResolvedTensors& tensors);

[[nodiscard]] ode::Trajectory run_ode(const RunConfig& config);
[[nodiscard]] pde::PdeRunResult run_pde(const RunConfig& config);

struct ExperimentReport {
  std::vector<std::filesystem::path> files;  // written artifacts, in writing order
  std::string summary;                       // final state and solver statistics
};

/// Runs the configured model and writes its artifacts below config.output_dir:
/// trajectory.csv (ODE) or probe.csv and snapshots/<field>_t<time>.csv (PDE),
/// plus manifest.ini, which reloads to the same configuration.
[[nodiscard]] ExperimentReport run_experiment(const RunConfig& config);

/// Text of manifest.ini: the configuration echo followed by a [manifest]
/// section with grid, tensor and solver information.
[[nodiscard]] std::string manifest_text(const RunConfig& config,
                                        const std::vector<std::string>& extra_lines);

}  // namespace seeding
