#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mtvrp/multitask.hpp"

namespace mtvrp {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SolverResult {
    std::vector<std::int64_t> best_cost_per_task;
    std::vector<UnifiedGenome> best_genome_per_task;
    std::int64_t evaluations_used = 0;
    /// best_cost_history[g][k]: best cost on task k after generation g (entry 0 is the initial population).
    std::vector<std::vector<std::int64_t>> best_cost_history;
};

/// Called after initialisation (generation 0) and after every generation or grid sweep.
using GenerationObserver = std::function<void(int generation, const Population&, const EvalCounter&)>;

/// Best finite cost per task over the population; INT64_MAX where no member has one.
std::vector<std::int64_t> best_costs(const Population& population, int k);

/// Fills best costs and genomes from the final population.
void collect_best(const Population& population, int k, SolverResult& result);

}  // namespace mtvrp
