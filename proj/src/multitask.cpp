#include "mtvrp/multitask.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mtvrp {

TaskSet::TaskSet(std::vector<Task> tasks) : tasks_(std::move(tasks)) {
    if (tasks_.empty()) throw std::invalid_argument("a task set needs at least one task");
    for (const auto& t : tasks_) d_max_ = std::max(d_max_, t.size());
}

void full_evaluate(Population& population, const TaskSet& tasks, EvalCounter& counter) {
    for (auto& m : population) {
        m.factorial_costs.assign(tasks.k(), kUnevaluated);
        for (int t = 0; t < tasks.k(); ++t)
            m.factorial_costs[t] = static_cast<double>(unified_evaluate(m.genome, tasks[t], counter));
    }
}

void full_evaluate_parallel(Population& population, const TaskSet& tasks, EvalCounter& counter) {
    const auto n = static_cast<std::ptrdiff_t>(population.size());
    std::int64_t evaluations = 0;
#pragma omp parallel for schedule(static) reduction(+ : evaluations)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        EvalCounter local;
        auto& m = population[i];
        m.factorial_costs.assign(tasks.k(), kUnevaluated);
        for (int t = 0; t < tasks.k(); ++t)
            m.factorial_costs[t] = static_cast<double>(unified_evaluate(m.genome, tasks[t], local));
        evaluations += local.count;
    }
    counter.count += evaluations;
}

std::vector<int> ranks_from_costs(std::span<const double> costs) {
    std::vector<int> order(costs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return costs[a] < costs[b]; });
    std::vector<int> ranks(costs.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) ranks[order[pos]] = static_cast<int>(pos) + 1;
    return ranks;
}

void compute_factorial_ranks(Population& population, int task_index) {
    std::vector<double> costs;
    costs.reserve(population.size());
    for (const auto& m : population) costs.push_back(m.factorial_costs[task_index]);
    const auto ranks = ranks_from_costs(costs);
    for (std::size_t i = 0; i < population.size(); ++i) {
        auto& r = population[i].factorial_ranks;
        if (r.size() <= static_cast<std::size_t>(task_index)) r.resize(task_index + 1, 0);
        r[task_index] = ranks[i];
    }
}

void compute_scalar_fitness_and_skill(PopulationMember& member) {
    const auto& r = member.factorial_ranks;
    const auto best = std::min_element(r.begin(), r.end());  // first minimum: lowest task index
    member.skill_factor = static_cast<int>(best - r.begin());
    member.scalar_fitness = 1.0 / *best;
}

void update_multifactorial_fitness(Population& population, int k) {
    for (auto& m : population) m.factorial_ranks.assign(k, 0);
    for (int t = 0; t < k; ++t) compute_factorial_ranks(population, t);
    for (auto& m : population) compute_scalar_fitness_and_skill(m);
}

void balanced_skill_assignment(Population& population, int k) {
    const auto n = population.size();
    // by_rank[t][r-1] = member holding rank r on task t
    std::vector<std::vector<int>> by_rank(k, std::vector<int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (int t = 0; t < k; ++t) by_rank[t][population[i].factorial_ranks[t] - 1] = static_cast<int>(i);

    std::vector<char> claimed(n, 0);
    std::vector<std::size_t> cursor(k, 0);
    std::size_t assigned = 0;
    for (int t = 0; assigned < n; t = (t + 1) % k) {
        auto& c = cursor[t];
        while (claimed[by_rank[t][c]]) ++c;
        const int member = by_rank[t][c];
        claimed[member] = 1;
        population[member].skill_factor = t;
        ++assigned;
    }
}

}  // namespace mtvrp
