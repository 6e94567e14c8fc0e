#include <doctest.h>

#include <cmath>

#include "seeding/errors.hpp"
#include "seeding/ode/integrator.hpp"
#include "seeding/pde/run.hpp"
#include "seeding/pde/stepper.hpp"

using namespace seeding;
using namespace seeding::pde;

namespace {

Tensor2 table1_D() {
  Tensor2 D;
  D << 0.204e6, 0.189e6, 0.189e6, 0.447e6;
  return D;
}

const SeedingModel kModel{table1_parameters(), StimulusSignal{}};

PdeStepper make(const ScaffoldGrid& g, StepperSettings s = {}, TaxisMode taxis = TaxisMode::kIdentity) {
  return {g, kModel, table1_D(), table1_D(), {taxis, table1_D()}, s};
}

double rel_max_diff(const Field& a, const Field& b) {
  const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  if (scale == 0.0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

TEST_CASE("uniform data reduce to the implicit Euler ODE solution") {
  const ScaffoldGrid g = ScaffoldGrid::scaffold(250.0);
  PdeStepper stepper = make(g);
  FieldState s = uniform_fields(g, seeding_initial_state());
  ode::IntegratorSettings ie;
  ie.method = ode::Method::kImplicitEuler;
  ie.fixed_step = 0.1;
  const ode::Trajectory ref = ode::integrate(kModel, seeding_initial_state(), 0.0, 5.0, std::nullopt, ie);
  for (int n = 1; n <= 50; ++n) {
    stepper.step(s);
    if (n % 5 == 0) {
      const OdeState& y = ref.samples[static_cast<std::size_t>(n / 5)].y;
      CHECK(s.t == doctest::Approx(0.1 * n));
      for (std::size_t c = 0; c < 5; ++c) {
        const Field& f = s[static_cast<Component>(c)];
        CHECK((f.array() - y[c]).abs().maxCoeff() <= 1e-10 * std::max(std::abs(y[c]), 1e-30));
      }
    }
  }
}

TEST_CASE("pure diffusion conserves each species") {
  const ScaffoldGrid g = ScaffoldGrid::scaffold(100.0);
  StepperSettings settings;
  settings.reactions = false;
  PdeStepper stepper = make(g, settings, TaxisMode::kOff);
  FieldState s = init_fields(g, 1);
  s.c2 = s.c1.reverse();
  const double m1 = total_mass(s.c1, g), m2 = total_mass(s.c2, g), m3 = total_mass(s.chi, g);
  const Field h0 = s.h;
  for (int n = 0; n < 100; ++n) stepper.step(s);
  CHECK(total_mass(s.c1, g) == doctest::Approx(m1).epsilon(1e-12));
  CHECK(total_mass(s.c2, g) == doctest::Approx(m2).epsilon(1e-12));
  CHECK(total_mass(s.chi, g) == doctest::Approx(m3).epsilon(1e-12));
  CHECK(s.h == h0);
  CHECK(s.c1.minCoeff() >= 0.0);
}

TEST_CASE("taxis with reactions off conserves c1 and keeps it nonnegative") {
  const ScaffoldGrid g = ScaffoldGrid::scaffold(100.0);
  StepperSettings settings;
  settings.reactions = false;
  PdeStepper stepper = make(g, settings);
  FieldState s = init_fields(g, 9);
  // A steep hyaluron ramp (taxis speed ~5000 um/h) forces several substeps per step.
  for (std::size_t k = 0; k < g.size(); ++k) s.h[static_cast<Eigen::Index>(k)] = 1000.0 * g.center(k).x;
  const double m = total_mass(s.c1, g);
  for (int n = 0; n < 10; ++n) stepper.step(s);
  CHECK(total_mass(s.c1, g) == doctest::Approx(m).epsilon(1e-12));
  CHECK(s.c1.minCoeff() >= 0.0);
  CHECK(stepper.stats().taxis_substeps > 10);
}

TEST_CASE("mirror symmetry is preserved for isotropic diffusion") {
  const ScaffoldGrid g = ScaffoldGrid::scaffold(100.0);
  PdeStepper stepper(g, kModel, 2e5 * Tensor2::Identity(), 2e5 * Tensor2::Identity(), {}, {});
  FieldState s = init_fields(g, 1);
  s.h.setConstant(995.5);
  for (int n = 0; n < 10; ++n) stepper.step(s);
  const int n = g.nx();
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto [i, j] = g.cells()[k];
    const auto m = static_cast<Eigen::Index>(g.index(n - 1 - i, j));
    const auto t = static_cast<Eigen::Index>(g.index(j, i));
    CHECK(s.c1[static_cast<Eigen::Index>(k)] == doctest::Approx(s.c1[m]).epsilon(1e-10));
    CHECK(s.c2[static_cast<Eigen::Index>(k)] == doctest::Approx(s.c2[t]).epsilon(1e-10));
  }
}

TEST_CASE("fully implicit and IMEX schemes agree to first order") {
  const ScaffoldGrid g = ScaffoldGrid::scaffold(250.0);
  StepperSettings imex;
  imex.dt = 0.01;
  StepperSettings impl = imex;
  impl.scheme = TimeScheme::kFullyImplicit;
  PdeStepper a = make(g, imex);
  PdeStepper b = make(g, impl);
  FieldState sa = init_fields(g, 4);
  FieldState sb = sa;
  for (int n = 0; n < 50; ++n) {
    a.step(sa);
    b.step(sb);
  }
  CHECK(rel_max_diff(sa.c1, sb.c1) < 2e-2);
  CHECK(rel_max_diff(sa.c2, sb.c2) < 2e-2);
  CHECK(rel_max_diff(sa.h, sb.h) < 2e-2);
  CHECK(b.stats().global_newton_iterations > 0);
}

TEST_CASE("fully implicit scheme reduces to the ODE for uniform data") {
  const ScaffoldGrid g = ScaffoldGrid::scaffold(500.0);
  StepperSettings impl;
  impl.scheme = TimeScheme::kFullyImplicit;
  PdeStepper stepper = make(g, impl);
  FieldState s = uniform_fields(g, seeding_initial_state());
  ode::IntegratorSettings ie;
  ie.method = ode::Method::kImplicitEuler;
  const ode::Trajectory ref = ode::integrate(kModel, seeding_initial_state(), 0.0, 1.0, std::nullopt, ie);
  for (int n = 0; n < 10; ++n) stepper.step(s);
  const OdeState& y = ref.back().y;
  for (std::size_t c = 0; c < 5; ++c) {
    const Field& f = s[static_cast<Component>(c)];
    CHECK((f.array() - y[c]).abs().maxCoeff() <= 1e-9 * std::max(std::abs(y[c]), 1e-30));
  }
}

TEST_CASE("run driver: exact times, snapshots, probe and renewal") {
  const ScaffoldGrid g = ScaffoldGrid::scaffold(250.0);
  PdeStepper stepper = make(g);
  PdeRunSettings settings;
  settings.t_end = 3.0;
  settings.snapshot_times = {0.0, 1.5, 3.0};
  settings.renewal = ode::RenewalSchedule{1.0, ode::RenewalMode::kResetToValue, 2e-3};
  const PdeRunResult r = run(stepper, init_fields(g, 1), settings);
  REQUIRE(r.probe.size() == 31);
  for (std::size_t n = 0; n < r.probe.size(); ++n) CHECK(r.probe[n].t == 0.1 * static_cast<double>(n));
  REQUIRE(r.snapshots.size() == 3);
  CHECK(r.snapshots[1].t == 1.5);
  CHECK(r.probe[0].y.c1 == 0.001);
  CHECK(r.probe[10].y.chi == 2e-3);  // renewed at t = 1
  CHECK(r.probe[20].y.chi == 2e-3);
  CHECK(r.probe[30].y.chi < 2e-3);  // no event at t_end
  CHECK(r.final_state.t == 3.0);
  CHECK(r.min_value >= 0.0);

  PdeRunSettings bad = settings;
  bad.snapshot_times = {0.05};
  CHECK_THROWS_AS((void)run(stepper, init_fields(g, 1), bad), ConfigError);
  bad = settings;
  bad.probe = {-100.0, 0.0};
  CHECK_THROWS_AS((void)run(stepper, init_fields(g, 1), bad), ConfigError);
}

TEST_CASE("stepper settings validation") {
  const ScaffoldGrid g = ScaffoldGrid::scaffold(500.0);
  StepperSettings s;
  s.dt = 0.0;
  CHECK_THROWS_AS((void)make(g, s), ConfigError);
  s = {};
  CHECK_THROWS_AS((void)make(g, s, TaxisMode::kFull), ConfigError);
  PdeStepper ok = make(g);
  FieldState wrong = uniform_fields(ScaffoldGrid::scaffold(250.0), seeding_initial_state());
  CHECK_THROWS_AS(ok.step(wrong), ConfigError);
}
