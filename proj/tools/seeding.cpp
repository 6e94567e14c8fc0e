// Command-line front end: run, preset, tensor, validate.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "seeding/config.hpp"
#include "seeding/errors.hpp"
#include "seeding/experiment.hpp"
#include "seeding/fiber/orientation.hpp"
#include "seeding/io/csv.hpp"

namespace {

enum ExitCode {
  kOk = 0,
  kFailure = 1,    // I/O and anything unexpected
  kConfig = 2,     // malformed or invalid configuration
  kSolver = 3,     // integration or linear solve failed
  kQuadrature = 4  // moment quadrature did not reach its tolerance
};

void print_matrix(const std::string& label, const Eigen::MatrixXd& m) {
  fmt::print("{}\n", label);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::string row;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row += fmt::format(" {:>19.12g}", m(r, c));
    }
    fmt::print("{}\n", row);
  }
}

int report(const char* kind, const std::string& message, int code) {
  std::cerr << fmt::format("seeding: error [{}]: {}\n", kind, message);
  return code;
}

int execute(seeding::RunConfig config, const std::string& out_dir) {
  if (!out_dir.empty()) {
    config.output_dir = out_dir;
    config.provenance["output.dir"] = seeding::Provenance::kUser;
  }
  const seeding::ExperimentReport rep = seeding::run_experiment(config);
  std::cout << rep.summary;
  return kOk;
}

int print_tensors(const std::string& a_file, const std::string& config_file) {
  seeding::ParameterSet params;
  if (!config_file.empty()) params = seeding::load_config(config_file).params;
  const seeding::fiber::OrientationMatrix A(seeding::io::read_matrix3(a_file));
  const seeding::fiber::DiffusionTensors t =
      seeding::fiber::build_tensors(seeding::fiber::acg_moment(A), params);
  print_matrix("A", A.matrix());
  print_matrix("M = E[u u^T]", t.M);
  print_matrix("D1 [um^2/h]", t.D1);
  print_matrix("D2 [um^2/h]", t.D2);
  print_matrix("D1, planar block [um^2/h]", seeding::fiber::restrict_2d(t.D1));
  print_matrix("D2, planar block [um^2/h]", seeding::fiber::restrict_2d(t.D2));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation of hMSC seeding, differentiation and matrix production in scaffolds"};
  app.require_subcommand(1);
  app.footer(fmt::format("Default output directory: $SEEDING_OUTPUT_DIR, else seeding-out.\n"
                         "Presets: {}",
                         fmt::join(seeding::preset_names(), ", ")));

  std::string config_path;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run the experiment described by a configuration file");
  run->add_option("config", config_path, "Configuration file")->required();
  run->add_option("--out", out_dir, "Output directory (overrides [output] dir)");

  std::string preset_name;
  bool print_only = false;
  auto* preset = app.add_subcommand("preset", "Run a built-in reproduction of a published experiment");
  preset->add_option("name", preset_name, "Preset name")
      ->required()
      ->check(CLI::IsMember(seeding::preset_names()));
  preset->add_option("--out", out_dir, "Output directory (default: <output root>/<name>)");
  preset->add_flag("--print", print_only, "Print the effective configuration instead of running");

  std::string a_file;
  std::string tensor_config;
  auto* tensor = app.add_subcommand("tensor", "Print the moment and diffusion tensors of an ACG matrix A");
  tensor->add_option("A-file", a_file, "File holding the 3x3 matrix A, one row per line")
      ->required();
  tensor->add_option("--config", tensor_config, "Take s1, s2, lambda10, lambda2 from this configuration");

  auto* validate = app.add_subcommand("validate", "Check a configuration and print its effective values");
  validate->add_option("config", config_path, "Configuration file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return execute(seeding::load_config(config_path), out_dir);
    if (preset->parsed()) {
      if (print_only) {
        std::cout << seeding::echo_config(seeding::preset(preset_name));
        return kOk;
      }
      return execute(seeding::preset(preset_name), out_dir);
    }
    if (tensor->parsed()) return print_tensors(a_file, tensor_config);
    if (validate->parsed()) {
      std::cout << seeding::echo_config(seeding::load_config(config_path));
      return kOk;
    }
  } catch (const seeding::ConfigError& e) {
    return report("config", e.what(), kConfig);
  } catch (const seeding::SolverError& e) {
    return report("solver", e.what(), kSolver);
  } catch (const seeding::EvaluationError& e) {
    return report("solver", fmt::format("{} (t = {} h)", e.what(), e.time()), kSolver);
  } catch (const seeding::fiber::QuadratureError& e) {
    return report("quadrature", fmt::format("{} (error estimate {})", e.what(), e.error_estimate()),
                  kQuadrature);
  } catch (const std::exception& e) {
    return report("failure", e.what(), kFailure);
  }
  return kFailure;
}
