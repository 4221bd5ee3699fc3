#include "mtvrp/mfea.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace mtvrp {

void validate(const MfeaConfig& config, int k) {
    auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in_unit(config.crossover_prob) || !in_unit(config.mutation_prob) || !in_unit(config.rmp))
        throw ConfigError("MFEA probabilities must lie in [0, 1]");
    if (config.population_size < 2 || config.population_size % 2 != 0)
        throw ConfigError("MFEA population size must be even and at least 2");
    if (config.population_size < k)
        throw ConfigError("MFEA population size must be at least the number of tasks");
    const auto initial = static_cast<std::int64_t>(config.population_size) * k;
    if (config.evaluation_budget <= initial)
        throw ConfigError("evaluation budget " + std::to_string(config.evaluation_budget) +
                          " does not exceed the initial full evaluation (" + std::to_string(initial) + ")");
}

std::array<Offspring, 2> mate(const PopulationMember& a, const PopulationMember& b, const MfeaConfig& config,
                              RngStream& rng) {
    const bool crossover = rng.bernoulli(config.crossover_prob) &&
                           (a.skill_factor == b.skill_factor || rng.bernoulli(config.rmp));
    if (crossover) {
        std::array<Offspring, 2> kids{
            Offspring{order_crossover(a.genome, b.genome, rng), 0},
            Offspring{order_crossover(b.genome, a.genome, rng), 0},
        };
        for (auto& kid : kids) {
            kid.skill_factor = rng.bernoulli(0.5) ? a.skill_factor : b.skill_factor;
            if (rng.bernoulli(config.mutation_prob)) kid.genome = two_opt_mutation(kid.genome, rng);
        }
        return kids;
    }
    return {Offspring{two_opt_mutation(a.genome, rng), a.skill_factor},
            Offspring{two_opt_mutation(b.genome, rng), b.skill_factor}};
}

namespace {

// Keeps the best `n` of `pool` by scalar fitness; ties go to the lower cost on the member's
// skill task, then to the lower pool index.
void select_survivors(Population& pool, std::size_t n) {
    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const auto& a = pool[x];
        const auto& b = pool[y];
        if (a.scalar_fitness != b.scalar_fitness) return a.scalar_fitness > b.scalar_fitness;
        return a.skill_cost() < b.skill_cost();
    });
    Population next;
    next.reserve(n);
    for (std::size_t i = 0; i < n; ++i) next.push_back(std::move(pool[order[i]]));
    pool = std::move(next);
}

}  // namespace

SolverResult run_mfea(const TaskSet& tasks, const MfeaConfig& config, RngStream& rng,
                      const GenerationObserver& observer) {
    const int k = tasks.k();
    validate(config, k);
    const auto n = static_cast<std::size_t>(config.population_size);

    EvalCounter counter;
    Population population(n);
    for (auto& m : population) m.genome = random_genome(rng, tasks.d_max());
    full_evaluate(population, tasks, counter);
    update_multifactorial_fitness(population, k);

    SolverResult result;
    result.best_cost_history.push_back(best_costs(population, k));
    if (observer) observer(0, population, counter);

    std::vector<std::size_t> pairing(n);
    std::iota(pairing.begin(), pairing.end(), 0);
    for (int generation = 1; counter.count + static_cast<std::int64_t>(n) <= config.evaluation_budget;
         ++generation) {
        rng.shuffle(pairing.begin(), pairing.end());

        Population pool = population;
        pool.reserve(2 * n);
        for (std::size_t p = 0; p + 1 < n; p += 2) {
            auto kids = mate(population[pairing[p]], population[pairing[p + 1]], config, rng);
            for (auto& kid : kids) {
                PopulationMember child;
                child.genome = std::move(kid.genome);
                child.skill_factor = kid.skill_factor;
                child.factorial_costs.assign(k, kUnevaluated);
                child.factorial_costs[kid.skill_factor] =
                    static_cast<double>(unified_evaluate(child.genome, tasks[kid.skill_factor], counter));
                pool.push_back(std::move(child));
            }
        }

        update_multifactorial_fitness(pool, k);
        select_survivors(pool, n);
        population = std::move(pool);

        result.best_cost_history.push_back(best_costs(population, k));
        if (observer) observer(generation, population, counter);
    }

    collect_best(population, k, result);
    result.evaluations_used = counter.count;
    return result;
}

}  // namespace mtvrp
