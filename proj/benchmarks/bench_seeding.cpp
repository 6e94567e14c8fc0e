#include <benchmark/benchmark.h>

#include "seeding/experiment.hpp"
#include "seeding/fiber/orientation.hpp"
#include "seeding/model.hpp"
#include "seeding/ode/integrator.hpp"
#include "seeding/pde/operators.hpp"
#include "seeding/pde/stepper.hpp"

namespace {

using namespace seeding;

const SeedingModel kModel{table1_parameters(), StimulusSignal{}};

void BM_OdeRhs(benchmark::State& state) {
  const StateVector y = seeding_initial_state().vector();
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kModel.rhs(t, y));
    t += 1e-3;
  }
}
BENCHMARK(BM_OdeRhs);

void BM_OdeJacobian(benchmark::State& state) {
  const StateVector y = seeding_initial_state().vector();
  for (auto _ : state) benchmark::DoNotOptimize(kModel.jacobian(1.0, y));
}
BENCHMARK(BM_OdeJacobian);

void BM_Rosenbrock144h(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ode::integrate(kModel, seeding_initial_state(), 0.0, 144.0, std::nullopt));
  }
}
BENCHMARK(BM_Rosenbrock144h)->Unit(benchmark::kMillisecond);

void BM_AcgMoment(benchmark::State& state) {
  fiber::Matrix3 A;
  A << 2.0, 0.3, 0.1, 0.3, 1.0, 0.2, 0.1, 0.2, 0.5;
  const fiber::OrientationMatrix orientation(A);
  for (auto _ : state) benchmark::DoNotOptimize(fiber::acg_moment(orientation));
}
BENCHMARK(BM_AcgMoment)->Unit(benchmark::kMicrosecond);

void BM_DiffusionApply(benchmark::State& state) {
  const pde::ScaffoldGrid grid = pde::ScaffoldGrid::scaffold(static_cast<double>(state.range(0)));
  const pde::SparseMatrix L = pde::diffusion_operator(grid, fiber::restrict_2d(
      fiber::build_tensors(fiber::scaffold_moment(), table1_parameters()).D1));
  const pde::Field c = pde::init_fields(grid, 1).c1;
  for (auto _ : state) benchmark::DoNotOptimize(pde::Field(L * c));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}
BENCHMARK(BM_DiffusionApply)->Arg(100)->Arg(50)->Arg(25);

void BM_PdeStep(benchmark::State& state) {
  RunConfig config = preset("fig4");
  config.dx = static_cast<double>(state.range(0));
  const pde::ScaffoldGrid grid = make_grid(config);
  pde::PdeStepper stepper = make_stepper(config, grid, resolve_tensors(config));
  pde::FieldState fields = make_initial_fields(config, grid);
  for (auto _ : state) stepper.step(fields);
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}
BENCHMARK(BM_PdeStep)->Arg(100)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
