#pragma once

#include <limits>
#include <span>
#include <vector>

#include "mtvrp/encoding.hpp"

namespace mtvrp {

inline constexpr double kUnevaluated = std::numeric_limits<double>::infinity();

/// Genome plus the per-task multifactorial bookkeeping.
struct PopulationMember {
    UnifiedGenome genome;
    std::vector<double> factorial_costs;  // infinity where not evaluated
    std::vector<int> factorial_ranks;     // 1-based
    double scalar_fitness = 0.0;
    int skill_factor = 0;

    double skill_cost() const { return factorial_costs[skill_factor]; }
};

using Population = std::vector<PopulationMember>;

class TaskSet {
public:
    TaskSet() = default;
    explicit TaskSet(std::vector<Task> tasks);

    int k() const noexcept { return static_cast<int>(tasks_.size()); }
    int d_max() const noexcept { return d_max_; }
    const Task& operator[](int i) const { return tasks_[i]; }
    const std::vector<Task>& tasks() const noexcept { return tasks_; }

private:
    std::vector<Task> tasks_;
    int d_max_ = 0;
};

/// Evaluates every member on every task (N*K evaluations).
void full_evaluate(Population& population, const TaskSet& tasks, EvalCounter& counter);

/// Same as full_evaluate, members spread over OpenMP threads.
void full_evaluate_parallel(Population& population, const TaskSet& tasks, EvalCounter& counter);

/// Ranks 1..N by ascending cost; ties keep index order; infinity ranks last.
std::vector<int> ranks_from_costs(std::span<const double> costs);

void compute_factorial_ranks(Population& population, int task_index);

/// phi = 1 / min rank; tau = lowest task index attaining that minimum.
void compute_scalar_fitness_and_skill(PopulationMember& member);

/// Ranks on every task, then phi and tau for every member.
void update_multifactorial_fitness(Population& population, int k);

/// Round-robin over tasks in index order; each task takes its best-ranked member not yet
/// claimed. Needs factorial ranks. Overwrites skill factors; per-task counts differ by <= 1.
void balanced_skill_assignment(Population& population, int k);

}  // namespace mtvrp
