#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "seeding/ode/trajectory.hpp"
#include "seeding/pde/fields.hpp"
#include "seeding/pde/grid.hpp"
#include "seeding/pde/run.hpp"

namespace seeding::io {

/// Shortest decimal representation that round-trips to the same double.
[[nodiscard]] std::string format_double(double value);

/// Header row "t [h],c1 [1/um^2],...,tau [mol/um^2]".
[[nodiscard]] std::string state_header();

/// One row per trajectory sample. At a renewal time two rows share the same
/// t: the pre-event state followed by the post-event state.
void write_trajectory_csv(const std::filesystem::path& path, const ode::Trajectory& trajectory);

/// Probe time series, same columns as the trajectory.
void write_probe_csv(const std::filesystem::path& path,
                     const std::vector<pde::ProbeSample>& samples);

/// One field at one time: x_index, y_index, x [um], y [um], value [unit],
/// one row per interior cell in grid order.
void write_snapshot_csv(const std::filesystem::path& path, const pde::ScaffoldGrid& grid,
                        const pde::Field& field, Component component);

/// Parses a 3x3 matrix written as three whitespace-separated rows; '#'
/// starts a comment. Throws ConfigError with the offending line.
[[nodiscard]] Eigen::Matrix3d read_matrix3(const std::filesystem::path& path);

}  // namespace seeding::io
