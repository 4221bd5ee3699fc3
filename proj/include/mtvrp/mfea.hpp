#pragma once

#include <array>

#include "mtvrp/operators.hpp"
#include "mtvrp/solver.hpp"

namespace mtvrp {

struct MfeaConfig {
    int population_size = 200;
    double crossover_prob = 0.9;
    double mutation_prob = 0.1;
    double rmp = 0.3;  // random mating probability
    std::int64_t evaluation_budget = 50000;
};

void validate(const MfeaConfig& config, int k);

/// Offspring of one mating pair, before evaluation.
struct Offspring {
    UnifiedGenome genome;
    int skill_factor;
};

/// Assortative mating for one pair: crossover happens with probability crossover_prob when
/// the parents share a skill factor, or otherwise when an extra draw falls below rmp. Crossover
/// yields two OX children (each takes a random parent's skill and is mutated with probability
/// mutation_prob); without crossover each parent yields one 2-opt mutant with its own skill.
std::array<Offspring, 2> mate(const PopulationMember& a, const PopulationMember& b, const MfeaConfig& config,
                              RngStream& rng);

/// Canonical multifactorial evolutionary algorithm with selective evaluation and
/// scalar-fitness elitist survival.
SolverResult run_mfea(const TaskSet& tasks, const MfeaConfig& config, RngStream& rng,
                      const GenerationObserver& observer = {});

}  // namespace mtvrp
