#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "seeding/ode/integrator.hpp"

using namespace seeding;
using namespace seeding::ode;

namespace {

// y' = -y on every component.
OdeSystem decay() {
  return {[](double, const StateVector& y) -> StateVector { return -y; },
          [](double, const StateVector&) -> StateMatrix { return -StateMatrix::Identity(); },
          [](double, const StateVector&) -> StateVector { return StateVector::Zero(); }};
}

// y' = -k (y - cos t), stiff for large k; the slow solution tracks cos t.
OdeSystem stiff_tracking(double k) {
  return {[k](double t, const StateVector& y) -> StateVector {
            return -k * (y - StateVector::Constant(std::cos(t)));
          },
          [k](double, const StateVector&) -> StateMatrix { return -k * StateMatrix::Identity(); },
          [k](double t, const StateVector&) -> StateVector {
            return StateVector::Constant(-k * std::sin(t));
          }};
}

const SeedingModel kModel{table1_parameters(), StimulusSignal{}};

}  // namespace

TEST_CASE("exponential decay reaches exp(-1)") {
  const OdeState y0{1.0, 1.0, 1.0, 1.0, 1.0};
  IntegratorSettings s;
  s.tol = {1e-8, 1e-12};
  const Trajectory tr = integrate(decay(), y0, 0.0, 1.0, std::nullopt, s);
  CHECK(tr.back().t == 1.0);
  CHECK(tr.back().y.c1 == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
  CHECK(tr.samples.size() == 3);  // 0, 0.5, 1
}

TEST_CASE("Rosenbrock error shrinks with the tolerance") {
  const OdeState y0{1.0, 1.0, 1.0, 1.0, 1.0};
  // Per-step control of a second-order pair: global error ~ tol^(2/3), so a
  // factor 100 in tolerance buys a factor of about 21.5.
  double previous = 0.0;
  for (double rel : {1e-4, 1e-6, 1e-8}) {
    IntegratorSettings s;
    s.tol = {rel, rel * 1e-3};
    const Trajectory tr = integrate(decay(), y0, 0.0, 5.0, std::nullopt, s);
    const double err = std::abs(tr.back().y.h - std::exp(-5.0)) / std::exp(-5.0);
    CHECK(err < 1e3 * rel);
    if (previous > 0.0) {
      CHECK(previous / err > 10.0);
      CHECK(previous / err < 50.0);
    }
    previous = err;
  }
}

TEST_CASE("implicit Euler is first order") {
  const OdeState y0{1.0, 1.0, 1.0, 1.0, 1.0};
  double errors[2];
  int i = 0;
  for (double dt : {0.01, 0.005}) {
    IntegratorSettings s;
    s.method = Method::kImplicitEuler;
    s.fixed_step = dt;
    const Trajectory tr = integrate(decay(), y0, 0.0, 1.0, std::nullopt, s);
    errors[i++] = std::abs(tr.back().y.c1 - std::exp(-1.0));
    // Closed form of the implicit Euler recursion.
    CHECK(tr.back().y.c1 == doctest::Approx(std::pow(1.0 / (1.0 + dt), std::round(1.0 / dt))).epsilon(1e-12));
  }
  CHECK(errors[0] / errors[1] == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("stiff problem takes large steps") {
  const OdeState y0{0.0, 0.0, 0.0, 0.0, 0.0};
  const Trajectory tr = integrate(stiff_tracking(1e6), y0, 0.0, 20.0, std::nullopt, {});
  // The slow manifold is cos t + sin t / k to first order in 1/k.
  CHECK(tr.back().y.c1 == doctest::Approx(std::cos(20.0) + std::sin(20.0) / 1e6).epsilon(1e-6));
  // An explicit method would need ~k t / 2 = 1e7 steps for stability alone.
  CHECK(tr.stats.steps < 50'000);
}

TEST_CASE("output cadence and sample layout") {
  const Trajectory tr = integrate(kModel, seeding_initial_state(), 0.0, 144.0, std::nullopt);
  REQUIRE(tr.samples.size() == 289);
  for (std::size_t k = 0; k < tr.samples.size(); ++k) {
    CHECK(tr.samples[k].t == 0.5 * static_cast<double>(k));
  }
  CHECK(tr.events.empty());
  for (const Sample& s : tr.samples) {
    for (std::size_t c = 0; c < 5; ++c) CHECK(s.y[c] >= -1e-9);
  }
}

TEST_CASE("renewal events are exact") {
  RenewalSchedule schedule;
  CHECK(schedule.event_times(0.0, 504.0) == std::vector<double>{72, 144, 216, 288, 360, 432});
  CHECK(schedule.event_times(0.0, 505.0).size() == 7);

  const Trajectory tr = integrate(kModel, seeding_initial_state(), 0.0, 504.0, schedule);
  REQUIRE(tr.events.size() == 6);
  for (std::size_t k = 0; k < 6; ++k) {
    const RenewalEvent& e = tr.events[k];
    CHECK(e.t == 72.0 * static_cast<double>(k + 1));
    CHECK(e.after.chi == 1e-3);
    CHECK(e.before.c1 == e.after.c1);
    CHECK(e.before.c2 == e.after.c2);
    CHECK(e.before.h == e.after.h);
    CHECK(e.before.tau == e.after.tau);
  }
  // The sample at each event time is the post-event state.
  for (const Sample& s : tr.samples) {
    for (const RenewalEvent& e : tr.events) {
      if (s.t == e.t) CHECK(s.y == e.after);
    }
  }
  // chi never increases between events.
  for (std::size_t k = 1; k < tr.samples.size(); ++k) {
    const bool crossed = std::any_of(tr.events.begin(), tr.events.end(), [&](const RenewalEvent& e) {
      return e.t > tr.samples[k - 1].t && e.t <= tr.samples[k].t;
    });
    if (!crossed) CHECK(tr.samples[k].y.chi <= tr.samples[k - 1].y.chi);
    CHECK(tr.samples[k].t > tr.samples[k - 1].t);
  }
}

TEST_CASE("renewal modes") {
  const OdeState y{1.0, 2.0, 2e-4, 3.0, 4.0};
  RenewalSchedule reset;
  CHECK(apply_renewal(y, reset).chi == 1e-3);
  RenewalSchedule add;
  add.mode = RenewalMode::kAddValue;
  CHECK(apply_renewal(y, add).chi == doctest::Approx(1.2e-3));
  const OdeState r = apply_renewal(y, reset);
  CHECK(r.c1 == y.c1);
  CHECK(r.c2 == y.c2);
  CHECK(r.h == y.h);
  CHECK(r.tau == y.tau);
  RenewalSchedule bad;
  bad.period = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("integration is deterministic") {
  const RenewalSchedule schedule;
  const Trajectory a = integrate(kModel, seeding_initial_state(), 0.0, 200.0, schedule);
  const Trajectory b = integrate(kModel, seeding_initial_state(), 0.0, 200.0, schedule);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t k = 0; k < a.samples.size(); ++k) CHECK(a.samples[k].y == b.samples[k].y);
}

TEST_CASE("agrees with an RK4 oracle over the first day") {
  const Trajectory tr = integrate(kModel, seeding_initial_state(), 0.0, 24.0, std::nullopt);
  const auto ref = oracle::rk4({1e-3, 0.0, 1e-3, 1000.0, 0.0}, 0.0, 1e-3, 24000, 500, {});
  REQUIRE(ref.size() == tr.samples.size());
  for (std::size_t c = 0; c < 5; ++c) {
    double scale = 0.0;
    double err = 0.0;
    for (std::size_t k = 0; k < ref.size(); ++k) {
      scale = std::max(scale, std::abs(ref[k][c]));
      err = std::max(err, std::abs(tr.samples[k].y[c] - ref[k][c]));
    }
    CHECK(err / scale < 1e-4);
  }
}

TEST_CASE("failures carry the model time") {
  IntegratorSettings s;
  s.max_steps = 3;
  try {
    (void)integrate(kModel, seeding_initial_state(), 0.0, 144.0, std::nullopt, s);
    FAIL("expected a solver error");
  } catch (const SolverError& e) {
    CHECK(e.time() >= 0.0);
    CHECK(std::string(e.what()).find("maximum number of steps") != std::string::npos);
  }
  IntegratorSettings bad;
  bad.tol.rel = 0.0;
  CHECK_THROWS_AS((void)integrate(kModel, seeding_initial_state(), 0.0, 1.0, std::nullopt, bad),
                  ConfigError);
  CHECK_THROWS_AS((void)integrate(kModel, seeding_initial_state(), 1.0, 1.0, std::nullopt),
                  ConfigError);
  OdeState nan = seeding_initial_state();
  nan.c1 = std::nan("");
  CHECK_THROWS((void)integrate(kModel, nan, 0.0, 1.0, std::nullopt));
}
