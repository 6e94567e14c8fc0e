#include <doctest.h>

#include <string>

#include "seeding/errors.hpp"
#include "seeding/config.hpp"

using namespace seeding;

namespace {

bool error_contains(const std::string& text, const std::string& needle) {
  try {
    (void)parse_config(text);
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    if (what.find(needle) != std::string::npos) return true;
    MESSAGE("error was: " << what);
    return false;
  }
  MESSAGE("no error raised");
  return false;
}

// Echo text without comment lines, i.e. without provenance annotations.
std::string values_only(const std::string& echo) {
  std::string out;
  std::size_t pos = 0;
  while (pos < echo.size()) {
    const std::size_t end = echo.find('\n', pos);
    const std::string line = echo.substr(pos, end - pos);
    if (!line.empty() && line[0] != ';' && line[0] != '#') out += line + '\n';
    pos = end == std::string::npos ? echo.size() : end + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("empty ODE configuration uses published defaults") {
  const RunConfig c = parse_config("[run]\nmodel = ode\n");
  CHECK(c.model == ModelKind::kOde);
  CHECK(c.t_end == 144.0);
  CHECK(c.params.beta == 0.5 / 3.0);
  CHECK(c.params.lambda2 == 1.44e-4);
  CHECK(c.params.chi_c == 5e-4);
  CHECK(c.initial == seeding_initial_state());
  CHECK(c.stimulus.offset == 0.5);
  CHECK(!c.renewal_enabled);
  CHECK(c.provenance.at("run.model") == Provenance::kUser);
  CHECK(c.provenance.at("run.t_end") == Provenance::kPaperDefault);
  CHECK(c.provenance.at("parameters.chi_c") == Provenance::kAssumed);
  CHECK(c.provenance.at("parameters.beta") == Provenance::kPaperDefault);
}

TEST_CASE("values, lists and comments") {
  const RunConfig c = parse_config(
      "# comment\n"
      "; another comment\n"
      "[run]\n"
      "model = pde\n"
      "t_end = 4\n"
      "seed = 42\n"
      "[parameters]\n"
      "chi_c = 2.5e-4\n"
      "k_minus = 0.5\n"
      "[pde]\n"
      "snapshot_times = 0, 1.5 4\n"
      "snapshot_fields = c2 tau\n"
      "dx = 100\n"
      "[tensor]\n"
      "source = moment\n"
      "values = 0.2 0.1 0.1 0.4\n");
  CHECK(c.model == ModelKind::kPde);
  CHECK(c.seed == 42);
  CHECK(c.params.chi_c == 2.5e-4);
  REQUIRE(c.params.k_minus);
  CHECK(*c.params.k_minus == 0.5);
  CHECK(c.snapshot_times == std::vector<double>{0.0, 1.5, 4.0});
  CHECK(c.snapshot_fields == std::vector<Component>{kC2, kTau});
  CHECK(c.tensor_values.size() == 4);
  CHECK(c.provenance.at("parameters.chi_c") == Provenance::kUser);
}

TEST_CASE("validation errors name the offending key") {
  CHECK(error_contains("[parameters]\nS_min = 3\nS_max = 1\n", "S_min must be < S_max"));
  CHECK(error_contains("[parameters]\ngamma4 = 1\n", "unknown key [parameters] gamma4"));
  CHECK(error_contains("[bogus]\nx = 1\n", "unknown key [bogus] x"));
  CHECK(error_contains("[parameters]\nbeta = fast\n", "[parameters] beta: expected a number"));
  CHECK(error_contains("[parameters]\nbeta = 1.0x\n", "[parameters] beta"));
  CHECK(error_contains("[parameters]\nbeta = -1\n", "beta must be"));
  CHECK(error_contains("[run]\nmodel = sde\n", "expected one of {ode, pde}"));
  CHECK(error_contains("[run]\nseed = -1\n", "non-negative integer"));
  CHECK(error_contains("[run]\nmodel = pde\n[pde]\ntaxis = full\n", "taxis = full requires"));
  CHECK(error_contains("[run]\nmodel = pde\nt_end = 1.05\n", "multiple of [pde] dt"));
  CHECK(error_contains("[run]\nmodel = pde\n[pde]\nsnapshot_times = 500\n", "snapshot_times"));
  CHECK(error_contains("[tensor]\nsource = moment\nvalues = 1 2 3\n", "4 (2x2) or 9 (3x3)"));
  CHECK(error_contains("[tensor]\nsource = file\n", "file is required"));
  CHECK(error_contains("[renewal]\nenabled = true\nperiod = 0\n", "[renewal]"));
  CHECK(error_contains("[pde]\nsnapshot_fields = c3\n", "unknown field 'c3'"));
  CHECK(error_contains("[run\nmodel = ode\n", "<config>:1"));
  CHECK(error_contains("model = ode\n", "inside a [section]"));
  CHECK(error_contains("[run]\nmodel = ode\nmodel = pde\n", "<config>"));
}

TEST_CASE("full taxis is accepted once its constants are given") {
  const RunConfig c = parse_config(
      "[run]\nmodel = pde\nt_end = 1\n[parameters]\nk_minus = 1\nlambda11 = 0.01\n[pde]\ntaxis = full\nsnapshot_times = 0 1\n");
  CHECK(c.taxis == pde::TaxisMode::kFull);
}

TEST_CASE("presets encode the published experiments") {
  CHECK(preset_names() == std::vector<std::string>{"fig2", "fig3", "fig4", "fig5"});
  const RunConfig f2 = preset("fig2");
  CHECK(f2.model == ModelKind::kOde);
  CHECK(f2.t_end == 144.0);
  CHECK(!f2.renewal_enabled);
  const RunConfig f3 = preset("fig3");
  CHECK(f3.t_end == 504.0);
  CHECK(f3.renewal_enabled);
  CHECK(f3.renewal.period == 72.0);
  CHECK(f3.renewal.value == 1e-3);
  CHECK(f3.renewal.mode == ode::RenewalMode::kResetToValue);
  const RunConfig f4 = preset("fig4");
  CHECK(f4.model == ModelKind::kPde);
  CHECK(f4.t_end == 2.0);
  CHECK(f4.stepper.dt == 0.1);
  CHECK(f4.taxis == pde::TaxisMode::kIdentity);
  CHECK(f4.snapshot_times == std::vector<double>{0.0, 2.0});
  const RunConfig f5 = preset("fig5");
  CHECK(f5.t_end == 144.0);
  CHECK(f5.probe.x == 2500.0);
  CHECK(f5.probe.y == 2500.0);
  CHECK(f5.provenance.at("run.t_end") == Provenance::kPaperDefault);
  CHECK_THROWS_AS((void)preset("fig9"), ConfigError);
}

TEST_CASE("echo reloads to the same configuration") {
  for (const std::string& name : preset_names()) {
    const RunConfig c = preset(name);
    const std::string echo = echo_config(c);
    CHECK(echo.find("; paper-default\nt_end =") != std::string::npos);
    CHECK(echo.find("; assumed\nchi_c = 0.0005") != std::string::npos);
    CHECK(echo.find("; k_minus = (unset)") != std::string::npos);
    const RunConfig again = parse_config(echo, "echo");
    CHECK(values_only(echo_config(again)) == values_only(echo));
    CHECK(again.t_end == c.t_end);
    CHECK(again.output_dir == c.output_dir);
    CHECK(again.snapshot_times == c.snapshot_times);
    CHECK(again.params.chi_c == c.params.chi_c);
  }
}

TEST_CASE("output directory defaults below the output root") {
  const RunConfig c = parse_config("[run]\nname = trial\n");
  CHECK(c.output_dir == default_output_root() / "trial");
  const RunConfig d = parse_config("[output]\ndir = /tmp/elsewhere\n");
  CHECK(d.output_dir == "/tmp/elsewhere");
}
