#include <benchmark/benchmark.h>

#include "stpa/assembly.hpp"
#include "stpa/experiment.hpp"
#include "stpa/parareal.hpp"
#include "stpa/problem.hpp"
#include "stpa/propagators.hpp"
#include "stpa/registry.hpp"
#include "stpa/schwarz.hpp"

using namespace stpa;

static void BM_Assemble(benchmark::State& state) {
  const FeSpace space(SpatialMesh::make_uniform(0, 1, static_cast<int>(state.range(0))), 2);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_operators(space));
}
BENCHMARK(BM_Assemble)->Arg(20)->Arg(80)->Arg(320);

static void BM_ImplicitEulerSerial(benchmark::State& state) {
  const auto prob = build_manufactured(4, 1, 2);
  const FeSpace space(SpatialMesh::make_uniform(0, 1, 20), 2);
  const ImplicitEuler be(space, prob.source);
  const auto grid = TimeGrid::uniform(0, 2, 320);
  const NodalField u0 = project_field(prob.initial, space, ProjectionMode::nodal_interpolation);
  for (auto _ : state) benchmark::DoNotOptimize(be.propagate(grid, u0));
}
BENCHMARK(BM_ImplicitEulerSerial);

static void BM_PararealIterations(benchmark::State& state) {
  const auto prob = build_manufactured(4, 1, 2);
  const auto mesh = SpatialMesh::make_uniform(0, 1, 20);
  const FeSpace cs(mesh, 1), fs(mesh, 2);
  const auto part = TimePartition::uniform(2.0, 20, 16, 10);
  const ImplicitEuler g(cs, prob.source), f(fs, prob.source);
  Propagator coarse = [&](int p, const NodalField& ic) { return g.propagate(part.coarse_grid(p), ic); };
  Propagator fine = [&](int p, const NodalField& ic) { return f.propagate(part.fine_grid(p), ic); };
  PararealOptions opt;
  opt.threads = static_cast<int>(state.range(1));
  const NodalField u0 = project_field(prob.initial, cs, ProjectionMode::nodal_interpolation);
  for (auto _ : state) benchmark::DoNotOptimize(vpar(part, static_cast<int>(state.range(0)), u0, fine, coarse, opt));
}
BENCHMARK(BM_PararealIterations)->Args({1, 1})->Args({3, 1})->Args({3, 4});

static void BM_SchwarzSolve(benchmark::State& state) {
  const FeSpace space(SpatialMesh::make_uniform(0, 1, 80), 2);
  const auto ops = assemble_operators(space);
  const auto system = ops.mass.matrix.combined(1.0, ops.stiffness.matrix, 0.05);
  const auto dd = decompose_domain(space.mesh(), static_cast<int>(state.range(0)), 0.2);
  const AdditiveSchwarz solver(space, system, dd);
  const Vector rhs = Vector::Ones(space.dof_count());
  const Vector zero = Vector::Zero(space.dof_count());
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(rhs, zero, 8));
}
BENCHMARK(BM_SchwarzSolve)->Arg(2)->Arg(4)->Arg(8);

static void BM_TableRow(benchmark::State& state) {
  const std::string name = state.range(0) == 0 ? "par_iterations" : "pardd_iterations";
  const ExperimentConfig c = find_table(name).base;
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(c));
  state.SetLabel(name);
}
BENCHMARK(BM_TableRow)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
