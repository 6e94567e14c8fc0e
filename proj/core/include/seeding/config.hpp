#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "seeding/ode/integrator.hpp"
#include "seeding/ode/renewal.hpp"
#include "seeding/parameters.hpp"
#include "seeding/pde/grid.hpp"
#include "seeding/pde/operators.hpp"
#include "seeding/pde/stepper.hpp"
#include "seeding/state.hpp"
#include "seeding/stimulus.hpp"

namespace seeding {

enum class ModelKind { kOde, kPde };

enum class Provenance {
  kPaperDefault,  // published value or experiment setting
  kUser,          // set in the loaded configuration
  kAssumed,       // toolkit choice where nothing was published
};

enum class TensorSource {
  kScaffold,  // published second-moment block of the scaffold
  kMoment,    // second-moment matrix literal (2x2 or 3x3)
  kAcg,       // ACG parameter matrix literal
  kD1,        // hMSC diffusion tensor literal (2x2 or 3x3); D2 follows from it
  kFile,      // ACG parameter matrix read from a file
};

enum class PdeInitial {
  kSeeding,  // Gaussian hMSC bump, random hyaluron
  kUniform,  // the [initial] state in every cell
};

/// Fully resolved experiment description. Every field has a default; a
/// configuration file overrides a subset.
struct RunConfig {
  std::string name = "run";
  ModelKind model = ModelKind::kOde;
  double t_end = 144.0;  // h
  std::uint64_t seed = 1;

  ParameterSet params;
  StimulusSignal stimulus;
  OdeState initial = seeding_initial_state();

  bool renewal_enabled = false;
  ode::RenewalSchedule renewal;

  ode::IntegratorSettings ode;

  double dx = 50.0;  // um
  pde::Point center{2500.0, 2500.0};
  double radius = 2500.0;
  pde::StepperSettings stepper;
  pde::TaxisMode taxis = pde::TaxisMode::kIdentity;
  PdeInitial pde_initial = PdeInitial::kSeeding;
  std::vector<double> snapshot_times{0.0, 2.0};
  std::vector<Component> snapshot_fields{kC1, kC2, kChi, kH, kTau};
  pde::Point probe{2500.0, 2500.0};

  TensorSource tensor_source = TensorSource::kScaffold;
  std::vector<double> tensor_values;  // moment, ACG or D1 literal, row-major
  std::filesystem::path tensor_file;
  double diffusivity_scale = 1.0;

  std::filesystem::path output_dir;

  /// "section.key" -> provenance of the effective value.
  std::map<std::string, Provenance> provenance;

  [[nodiscard]] std::optional<ode::RenewalSchedule> renewal_schedule() const {
    if (!renewal_enabled) return std::nullopt;
    return renewal;
  }

  /// Throws ConfigError naming the offending key.
  void validate() const;
};

/// Parses the configuration grammar (see README): INI sections, `key = value`
/// lines, `;` or `#` comments. Unknown sections or keys, malformed values and
/// invalid combinations raise ConfigError. `origin` prefixes error messages.
[[nodiscard]] RunConfig parse_config(std::string_view text, std::string_view origin = "<config>");

/// parse_config on a file; the run name defaults to the file stem.
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

/// Built-in reproductions of the published experiments: fig2, fig3, fig4, fig5.
[[nodiscard]] RunConfig preset(std::string_view name);
[[nodiscard]] std::vector<std::string> preset_names();
[[nodiscard]] std::string preset_text(std::string_view name);

/// Every effective value in the configuration grammar, each annotated with
/// its provenance. Loading the echo yields the same configuration.
[[nodiscard]] std::string echo_config(const RunConfig& config);

[[nodiscard]] std::string_view to_string(Provenance p);

/// Output directory from $SEEDING_OUTPUT_DIR, else "seeding-out".
[[nodiscard]] std::filesystem::path default_output_root();

}  // namespace seeding
