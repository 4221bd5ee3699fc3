// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "mtvrp/harness.hpp"

using namespace mtvrp;

namespace {

const fs::path kInstances = fs::path(MTVRP_DATA_DIR) / "instances";

const TaskSet& tc12() {
    static const TaskSet tasks = load_task_set(find_test_case("TC_12").instances, kInstances);
    return tasks;
}

void distance_matrix(benchmark::State& state, bool parallel) {
    const auto inst = load_instance(kInstances / "P-n60-k15.vrp");
    for (auto _ : state) {
        auto dm = parallel ? build_distance_matrix_parallel(inst) : build_distance_matrix(inst);
        benchmark::DoNotOptimize(dm);
    }
}

void evaluate_population(benchmark::State& state, bool parallel) {
    const auto& tasks = tc12();
    RngStream rng(1);
    Population pop(200);
    for (auto& m : pop) m.genome = random_genome(rng, tasks.d_max());
    for (auto _ : state) {
        EvalCounter counter;
        if (parallel) full_evaluate_parallel(pop, tasks, counter);
        else full_evaluate(pop, tasks, counter);
        benchmark::DoNotOptimize(pop.front().factorial_costs.data());
    }
    state.SetItemsProcessed(state.iterations() * 200 * tasks.k());
}

void experiment(benchmark::State& state, Execution execution) {
    const auto& tasks = tc12();
    ExperimentConfig cfg;
    cfg.runs = 4;
    cfg.instance_dir = kInstances;
    cfg.mfea.evaluation_budget = 10000;
    cfg.mfcga.evaluation_budget = 10000;
    for (auto _ : state) {
        auto out = run_experiment(cfg, tasks, execution);
        benchmark::DoNotOptimize(out.runs.data());
    }
}

}  // namespace

BENCHMARK_CAPTURE(distance_matrix, serial, false);
BENCHMARK_CAPTURE(distance_matrix, parallel, true);
BENCHMARK_CAPTURE(evaluate_population, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(evaluate_population, parallel, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(experiment, serial, Execution::serial)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_CAPTURE(experiment, parallel, Execution::parallel)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
