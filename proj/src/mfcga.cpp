#include "mtvrp/mfcga.hpp"

#include <numeric>
#include <string>

namespace mtvrp {

MooreGrid::MooreGrid(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw ConfigError("grid dimensions must be positive");
}

std::array<int, 8> MooreGrid::neighbors(int cell) const {
    const int r = cell / cols_;
    const int c = cell % cols_;
    std::array<int, 8> out{};
    int n = 0;
    for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) continue;
            out[n++] = this->cell((r + dr + rows_) % rows_, (c + dc + cols_) % cols_);
        }
    // row-scan order above is NW N NE W E SW S SE; rotate W to the end for clockwise order
    return {out[0], out[1], out[2], out[4], out[7], out[6], out[5], out[3]};
}

std::vector<int> MooreGrid::sweep_order() const {
    std::vector<int> order(size());
    std::iota(order.begin(), order.end(), 0);
    return order;
}

std::int64_t TransferLedger::total_crossover() const {
    std::int64_t total = 0;
    for (const auto& row : crossover_events) total = std::accumulate(row.begin(), row.end(), total);
    return total;
}

std::int64_t TransferLedger::total_mutation() const {
    return std::accumulate(mutation_improvements.begin(), mutation_improvements.end(), std::int64_t{0});
}

void validate(const MfcgaConfig& config, int k) {
    if (config.grid_rows < 3 || config.grid_cols < 3)
        throw ConfigError("grid must be at least 3x3 so that every cell has 8 distinct neighbours");
    if (config.grid_rows * config.grid_cols != config.population_size)
        throw ConfigError("grid " + std::to_string(config.grid_rows) + "x" + std::to_string(config.grid_cols) +
                          " does not tile a population of " + std::to_string(config.population_size));
    if (config.population_size < k) throw ConfigError("population size must be at least the number of tasks");
    const auto initial = static_cast<std::int64_t>(config.population_size) * k;
    if (config.evaluation_budget <= initial)
        throw ConfigError("evaluation budget " + std::to_string(config.evaluation_budget) +
                          " does not exceed the initial full evaluation (" + std::to_string(initial) + ")");
}

MfcgaResult run_mfcga(const TaskSet& tasks, const MfcgaConfig& config, RngStream& rng,
                      const GenerationObserver& observer) {
    const int k = tasks.k();
    validate(config, k);

    EvalCounter counter;
    Population population(config.population_size);
    for (auto& m : population) m.genome = random_genome(rng, tasks.d_max());
    const MooreGrid grid(config.grid_rows, config.grid_cols);
    full_evaluate(population, tasks, counter);
    update_multifactorial_fitness(population, k);
    balanced_skill_assignment(population, k);

    MfcgaResult out;
    out.ledger = TransferLedger(k);
    out.skill_census.assign(k, 0);
    for (const auto& m : population) ++out.skill_census[m.skill_factor];

    auto& result = out.solver;
    // best-so-far archive; a replaced cell drops its costs on other tasks
    collect_best(population, k, result);
    result.best_cost_history.push_back(result.best_cost_per_task);
    if (observer) observer(0, population, counter);

    auto accept = [&](PopulationMember& cell, int task, UnifiedGenome&& genome, double cost) {
        cell.genome = std::move(genome);
        cell.factorial_costs.assign(k, kUnevaluated);
        cell.factorial_costs[task] = cost;
        const auto c = static_cast<std::int64_t>(cost);
        if (c < result.best_cost_per_task[task]) {
            result.best_cost_per_task[task] = c;
            result.best_genome_per_task[task] = cell.genome;
        }
    };

    const auto order = grid.sweep_order();
    bool budget_left = true;
    for (int generation = 1; budget_left; ++generation) {
        std::int64_t updates_this_sweep = 0;
        for (int i : order) {
            if (counter.count + 2 > config.evaluation_budget) {
                budget_left = false;
                break;
            }
            auto& cell = population[i];
            const int task = cell.skill_factor;
            const auto neighbors = grid.neighbors(i);
            const auto& mate = population[neighbors[rng.index(8)]];
            const int source_task = mate.skill_factor;

            auto crossed = order_crossover(cell.genome, mate.genome, rng);
            auto mutated = two_opt_mutation(cell.genome, rng);
            const auto crossed_cost = static_cast<double>(unified_evaluate(crossed, tasks[task], counter));
            const auto mutated_cost = static_cast<double>(unified_evaluate(mutated, tasks[task], counter));
            ++out.cell_updates;
            ++updates_this_sweep;

            const double incumbent = cell.factorial_costs[task];
            // strict improvement only; the crossover child wins a tie between children
            if (crossed_cost < incumbent && crossed_cost <= mutated_cost) {
                accept(cell, task, std::move(crossed), crossed_cost);
                ++out.ledger.crossover_events[task][source_task];
                ++out.crossover_wins;
            } else if (mutated_cost < incumbent) {
                accept(cell, task, std::move(mutated), mutated_cost);
                ++out.ledger.mutation_improvements[task];
            }
        }
        if (updates_this_sweep > 0) {
            result.best_cost_history.push_back(result.best_cost_per_task);
            if (observer) observer(generation, population, counter);
        }
    }

    result.evaluations_used = counter.count;
    return out;
}

}  // namespace mtvrp
