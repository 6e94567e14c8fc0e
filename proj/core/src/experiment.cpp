#include "seeding/experiment.hpp"

#include <fstream>

#include <fmt/format.h>

#include "seeding/errors.hpp"
#include "seeding/io/csv.hpp"
#include "seeding/ode/integrator.hpp"

namespace seeding {
namespace {

using io::format_double;

fiber::Matrix3 matrix3_from(const std::vector<double>& v) {
  fiber::Matrix3 m;
  m << v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8];
  return m;
}

fiber::Matrix2 matrix2_from(const std::vector<double>& v) {
  fiber::Matrix2 m;
  m << v[0], v[1], v[2], v[3];
  return m;
}

template <class Matrix>
std::string matrix_line(const Matrix& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (!out.empty()) out += ' ';
      out += format_double(m(r, c));
    }
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
}

std::string state_summary(const OdeState& y) {
  std::string out;
  for (std::size_t c = 0; c < kComponentNames.size(); ++c) {
    out += fmt::format("  {:<4} = {} {}\n", kComponentNames[c],
                       format_double(y[static_cast<Component>(c)]), kComponentUnits[c]);
  }
  return out;
}

SeedingModel model_of(const RunConfig& config) { return {config.params, config.stimulus}; }

}  // namespace

ResolvedTensors resolve_tensors(const RunConfig& config) {
  ResolvedTensors out;
  const ParameterSet& p = config.params;
  const auto from_moment = [&](const fiber::Matrix3& M) {
    const fiber::DiffusionTensors t = fiber::build_tensors(M, p);
    out.M = t.M;
    out.D1_3d = t.D1;
    out.D2_3d = t.D2;
  };
  switch (config.tensor_source) {
    case TensorSource::kScaffold:
      from_moment(fiber::scaffold_moment());
      break;
    case TensorSource::kMoment:
      if (config.tensor_values.size() == 9) {
        from_moment(matrix3_from(config.tensor_values));
      } else {
        const fiber::Matrix2 D1 = (p.s1 * p.s1 / p.lambda10) * matrix2_from(config.tensor_values);
        out.D1 = D1;
        out.D2 = fiber::chondrocyte_factor(p) * D1;
      }
      break;
    case TensorSource::kD1:
      if (config.tensor_values.size() == 9) {
        out.D1_3d = matrix3_from(config.tensor_values);
        out.D2_3d = fiber::chondrocyte_factor(p) * *out.D1_3d;
      } else {
        out.D1 = matrix2_from(config.tensor_values);
        out.D2 = fiber::chondrocyte_factor(p) * out.D1;
      }
      break;
    case TensorSource::kAcg:
      from_moment(fiber::acg_moment(fiber::OrientationMatrix(matrix3_from(config.tensor_values))));
      break;
    case TensorSource::kFile:
      from_moment(fiber::acg_moment(fiber::OrientationMatrix(io::read_matrix3(config.tensor_file))));
      break;
  }
  if (out.D1_3d) {
    out.D1 = fiber::restrict_2d(*out.D1_3d);
    out.D2 = fiber::restrict_2d(*out.D2_3d);
  }
  const double s = config.diffusivity_scale;
  out.D1 *= s;
  out.D2 *= s;
  if (out.D1_3d) {
    *out.D1_3d *= s;
    *out.D2_3d *= s;
  }
  return out;
}

pde::ScaffoldGrid make_grid(const RunConfig& config) {
  return pde::ScaffoldGrid::disk(config.center, config.radius, config.dx);
}

pde::FieldState make_initial_fields(const RunConfig& config, const pde::ScaffoldGrid& grid) {
  if (config.pde_initial == PdeInitial::kUniform) return pde::uniform_fields(grid, config.initial);
  return pde::init_fields(grid, config.seed);
}

pde::PdeStepper make_stepper(const RunConfig& config, const pde::ScaffoldGrid& grid,
                             const ResolvedTensors& tensors) {
  pde::TaxisCoefficient taxis;
  taxis.mode = config.taxis;
  taxis.D1 = tensors.D1;
  return {grid, model_of(config), tensors.D1, tensors.D2, taxis, config.stepper};
}

ode::Trajectory run_ode(const RunConfig& config) {
  return ode::integrate(model_of(config), config.initial, 0.0, config.t_end,
                        config.renewal_schedule(), config.ode);
}

pde::PdeRunResult run_pde(const RunConfig& config) {
  const pde::ScaffoldGrid grid = make_grid(config);
  const ResolvedTensors tensors = resolve_tensors(config);
  pde::PdeStepper stepper = make_stepper(config, grid, tensors);
  pde::PdeRunSettings settings;
  settings.t_end = config.t_end;
  settings.snapshot_times = config.snapshot_times;
  settings.probe = config.probe;
  settings.renewal = config.renewal_schedule();
  return pde::run(stepper, make_initial_fields(config, grid), settings);
}

std::string manifest_text(const RunConfig& config, const std::vector<std::string>& extra_lines) {
  std::string out = echo_config(config);
  out += "\n[manifest]\n";
  out += "; informational; ignored when this file is loaded as a configuration\n";
  for (const std::string& line : extra_lines) out += line + '\n';
  return out;
}

ExperimentReport run_experiment(const RunConfig& config) {
  config.validate();
  ExperimentReport report;
  const std::filesystem::path dir = config.output_dir;
  std::vector<std::string> manifest;
  std::string& summary = report.summary;

  if (config.model == ModelKind::kOde) {
    const ode::Trajectory traj = run_ode(config);
    const auto csv = dir / "trajectory.csv";
    io::write_trajectory_csv(csv, traj);
    report.files.push_back(csv);
    const ode::SolverStats& s = traj.stats;
    manifest.push_back(fmt::format("samples = {}", traj.samples.size()));
    manifest.push_back(fmt::format("renewal_events = {}", traj.events.size()));
    manifest.push_back(fmt::format("steps = {}", s.steps));
    manifest.push_back(fmt::format("rejected_steps = {}", s.rejected_steps));
    summary += fmt::format("{}: ODE run to t = {} h\n", config.name, format_double(traj.samples.back().t));
    summary += "final state:\n" + state_summary(traj.samples.back().y);
    summary += fmt::format(
        "solver: {} accepted steps, {} rejected, {} rhs and {} Jacobian evaluations, {} renewal events\n",
        s.steps, s.rejected_steps, s.rhs_evaluations, s.jacobian_evaluations, traj.events.size());
  } else {
    const pde::ScaffoldGrid grid = make_grid(config);
    const ResolvedTensors tensors = resolve_tensors(config);
    pde::PdeStepper stepper = make_stepper(config, grid, tensors);
    pde::PdeRunSettings settings;
    settings.t_end = config.t_end;
    settings.snapshot_times = config.snapshot_times;
    settings.probe = config.probe;
    settings.renewal = config.renewal_schedule();
    const pde::PdeRunResult result = pde::run(stepper, make_initial_fields(config, grid), settings);

    const auto probe_csv = dir / "probe.csv";
    io::write_probe_csv(probe_csv, result.probe);
    report.files.push_back(probe_csv);
    for (const pde::Snapshot& snap : result.snapshots) {
      for (Component f : config.snapshot_fields) {
        const auto path = dir / "snapshots" /
                          fmt::format("{}_t{}.csv", kComponentNames[f], format_double(snap.t));
        io::write_snapshot_csv(path, grid, snap.fields[f], f);
        report.files.push_back(path);
      }
    }
    const pde::Point probe_center = grid.center(result.probe_cell);
    manifest.push_back(fmt::format("grid_nx = {}", grid.nx()));
    manifest.push_back(fmt::format("grid_ny = {}", grid.ny()));
    manifest.push_back(fmt::format("grid_cells = {}", grid.size()));
    manifest.push_back(fmt::format("grid_origin = {} {}", format_double(grid.origin().x),
                                   format_double(grid.origin().y)));
    manifest.push_back(fmt::format("probe_cell = {} {}", format_double(probe_center.x),
                                   format_double(probe_center.y)));
    if (tensors.M) manifest.push_back("moment = " + matrix_line(*tensors.M));
    if (tensors.D1_3d) manifest.push_back("D1_3d = " + matrix_line(*tensors.D1_3d));
    if (tensors.D2_3d) manifest.push_back("D2_3d = " + matrix_line(*tensors.D2_3d));
    manifest.push_back("D1 = " + matrix_line(tensors.D1));
    manifest.push_back("D2 = " + matrix_line(tensors.D2));
    manifest.push_back(fmt::format("steps = {}", result.stats.steps));
    manifest.push_back(fmt::format("min_value = {}", format_double(result.min_value)));

    summary += fmt::format("{}: PDE run to t = {} h on {} cells (dx = {} um)\n", config.name,
                           format_double(result.final_state.t), grid.size(), format_double(grid.dx()));
    summary += fmt::format("final state at probe ({}, {}) um:\n", format_double(probe_center.x),
                           format_double(probe_center.y));
    summary += state_summary(result.probe.back().y);
    summary += fmt::format("solver: {} steps, {} reaction Newton iterations, {} taxis substeps, {} coupled Newton iterations\n",
                           result.stats.steps, result.stats.reaction_newton_iterations,
                           result.stats.taxis_substeps, result.stats.global_newton_iterations);
    summary += fmt::format("smallest field value seen: {}\n", format_double(result.min_value));
  }

  const auto manifest_path = dir / "manifest.ini";
  write_text(manifest_path, manifest_text(config, manifest));
  report.files.push_back(manifest_path);
  summary += fmt::format("wrote {} files to {}\n", report.files.size(), dir.string());
  return report;
}

}  // namespace seeding
