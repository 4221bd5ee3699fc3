#include "mtvrp/solver.hpp"

#include <limits>

namespace mtvrp {

std::vector<std::int64_t> best_costs(const Population& population, int k) {
    std::vector<std::int64_t> best(k, std::numeric_limits<std::int64_t>::max());
    for (const auto& m : population)
        for (int t = 0; t < k; ++t)
            if (m.factorial_costs[t] != kUnevaluated)
                best[t] = std::min(best[t], static_cast<std::int64_t>(m.factorial_costs[t]));
    return best;
}

void collect_best(const Population& population, int k, SolverResult& result) {
    result.best_cost_per_task.assign(k, std::numeric_limits<std::int64_t>::max());
    result.best_genome_per_task.assign(k, UnifiedGenome{});
    for (const auto& m : population)
        for (int t = 0; t < k; ++t) {
            if (m.factorial_costs[t] == kUnevaluated) continue;
            const auto c = static_cast<std::int64_t>(m.factorial_costs[t]);
            if (c < result.best_cost_per_task[t]) {
                result.best_cost_per_task[t] = c;
                result.best_genome_per_task[t] = m.genome;
            }
        }
}

}  // namespace mtvrp
