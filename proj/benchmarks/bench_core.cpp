#include <benchmark/benchmark.h>

#include "mnm/analysis.hpp"

using namespace mnm;

namespace {

MnmProblem bi_objective_problem(int n, int order, double sigma,
                                std::uint64_t seed) {
  return make_bi_objective(generate_landscape(n, order, sigma, seed), order,
                           order);
}

void BM_GenerateLandscape(benchmark::State& state) {
  const int n = 10;
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_landscape(n, order, 1.0, 7));
  }
}
BENCHMARK(BM_GenerateLandscape)->Arg(1)->Arg(2)->Arg(9);

void BM_FullTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MnmProblem problem = bi_objective_problem(n, 2, 1.0, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(full_table(problem, true, 1));
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n) * 2);
}
BENCHMARK(BM_FullTable)->Arg(8)->Arg(10)->Arg(12)->Arg(14)->Arg(16);

void BM_FullTableWorkers(benchmark::State& state) {
  const MnmProblem problem = bi_objective_problem(16, 2, 1.0, 7);
  const auto workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(full_table(problem, true, workers));
  }
}
BENCHMARK(BM_FullTableWorkers)->Arg(1)->Arg(2)->Arg(4);

void BM_Boltzmann(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MnmProblem problem = bi_objective_problem(n, 2, 1.0, 7);
  const std::vector<double> values = full_table(problem, true, 1).values.column(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(boltzmann(values, 1.0));
  }
}
BENCHMARK(BM_Boltzmann)->Arg(10)->Arg(14)->Arg(18);

void BM_ParetoPairwise(benchmark::State& state) {
  const MnmProblem problem = bi_objective_problem(10, 2, 19.0, 7);
  const ObjectiveTable table = full_table(problem, true, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        pareto_front(table.values, FrontAlgorithm::kPairwise));
  }
}
BENCHMARK(BM_ParetoPairwise);

void BM_ParetoSortSweep(benchmark::State& state) {
  const MnmProblem problem = bi_objective_problem(10, 2, 19.0, 7);
  const ObjectiveTable table = full_table(problem, true, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        pareto_front(table.values, FrontAlgorithm::kSortSweep));
  }
}
BENCHMARK(BM_ParetoSortSweep);

void BM_MiMatrix(benchmark::State& state) {
  const MnmProblem problem = bi_objective_problem(10, 2, 19.0, 7);
  const DistributionTable dist =
      boltzmann(full_table(problem, true, 1).values.column(1), 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mi_matrix(dist));
  }
}
BENCHMARK(BM_MiMatrix);

void BM_Simulation(benchmark::State& state) {
  const MnmProblem problem = bi_objective_problem(10, 2, 19.0, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_simulation(problem, 1.0, true, 1));
  }
}
BENCHMARK(BM_Simulation);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
