#include "properties.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "mtvrp/analysis.hpp"
#include "oracles.hpp"

namespace props {

using namespace mtvrp;

Outcome operator_closure(int trials_per_length, std::uint64_t seed) {
    Outcome out{"operator closure"};
    RngStream rng(seed);
    for (int length : {5, 16, 60}) {
        for (int t = 0; t < trials_per_length; ++t) {
            const auto a = random_genome(rng, length);
            const auto b = random_genome(rng, length);
            const auto child = order_crossover(a, b, rng);
            const auto mutant = two_opt_mutation(a, rng);
            out.trials += 2;
            if (child.size() != a.size() || !is_valid_permutation(child.perm)) ++out.violations;
            if (mutant.size() != a.size() || !is_valid_permutation(mutant.perm)) ++out.violations;
        }
    }
    return out;
}

Outcome split_feasibility(int trials, std::uint64_t seed) {
    Outcome out{"split feasibility and flatten identity"};
    std::mt19937_64 gen(seed);
    RngStream rng(seed);
    for (int t = 0; t < trials; ++t) {
        const int n = 1 + static_cast<int>(gen() % 30);
        const std::int64_t capacity = 1 + static_cast<std::int64_t>(gen() % 100);
        CvrpInstance inst;
        inst.n_nodes = n + 1;
        inst.n_clients = n;
        inst.capacity = capacity;
        inst.coords.assign(n + 1, Point{});
        inst.demands.assign(n + 1, 0);
        for (int c = 1; c <= n; ++c) inst.demands[c] = 1 + static_cast<std::int64_t>(gen() % capacity);
        const auto perm = random_genome(rng, n).perm;
        const auto plan = split_decode(perm, inst);
        ++out.trials;

        bool bad = plan.routes.size() != plan.loads.size();
        std::vector<int> flat;
        for (std::size_t r = 0; r < plan.routes.size() && !bad; ++r) {
            std::int64_t load = 0;
            for (int c : plan.routes[r]) load += inst.demands[c];
            bad = plan.routes[r].empty() || load != plan.loads[r] || load > capacity;
            flat.insert(flat.end(), plan.routes[r].begin(), plan.routes[r].end());
        }
        if (bad || flat != perm) ++out.violations;
    }
    return out;
}

Outcome rank_agreement(int trials, std::uint64_t seed) {
    Outcome out{"factorial rank, scalar fitness and skill agreement"};
    std::mt19937_64 gen(seed);
    constexpr int n = 6, k = 3;
    for (int t = 0; t < trials; ++t) {
        Population pop(n);
        for (auto& m : pop) {
            m.factorial_costs.resize(k);
            // small cost range forces ties; roughly one cost in six is unevaluated
            for (auto& c : m.factorial_costs) c = gen() % 6 == 0 ? kUnevaluated : static_cast<double>(gen() % 5);
        }
        update_multifactorial_fitness(pop, k);
        ++out.trials;

        bool bad = false;
        for (int p = 0; p < n; ++p) {
            int best_rank = n + 1, best_task = -1;
            for (int task = 0; task < k; ++task) {
                const double cp = pop[p].factorial_costs[task];
                int rank = 1;
                for (int q = 0; q < n; ++q) {
                    const double cq = pop[q].factorial_costs[task];
                    if (cq < cp || (cq == cp && q < p)) ++rank;
                }
                bad |= pop[p].factorial_ranks[task] != rank;
                if (rank < best_rank) best_rank = rank, best_task = task;
            }
            bad |= pop[p].skill_factor != best_task;
            bad |= std::abs(pop[p].scalar_fitness - 1.0 / best_rank) > 1e-15;
        }
        if (bad) ++out.violations;
    }
    return out;
}

Outcome rank_sum_agreement(int trials, int n, std::uint64_t seed) {
    Outcome out{"rank-sum exact vs normal"};
    std::mt19937_64 gen(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        // distinct values, random split into two samples of n
        std::vector<double> pool(2 * n);
        std::iota(pool.begin(), pool.end(), 1.0);
        std::shuffle(pool.begin(), pool.end(), gen);
        const std::vector<double> xs(pool.begin(), pool.begin() + n), ys(pool.begin() + n, pool.end());
        const auto exact = wilcoxon_rank_sum(xs, ys, RankSumMethod::exact);
        const auto normal = wilcoxon_rank_sum(xs, ys, RankSumMethod::normal);
        const double diff = std::abs(exact.p_value - normal.p_value);
        worst = std::max(worst, diff);
        ++out.trials;
        if (diff > 0.03) ++out.violations;
    }
    out.detail = "max |dp| = " + std::to_string(worst);
    return out;
}

TaskSet toy_pair(std::uint64_t seed) {
    std::vector<Task> tasks;
    tasks.emplace_back(oracle::toy_instance(seed, 5, 10, 5, "toy-a"));
    tasks.emplace_back(oracle::toy_instance(seed + 1000003, 5, 10, 5, "toy-b"));
    return TaskSet(std::move(tasks));
}

Outcome mfcga_cell_monotonicity(std::uint64_t seed) {
    Outcome out{"MFCGA per-cell monotonicity and skill census"};
    const auto tasks = toy_pair(seed);
    MfcgaConfig cfg;
    cfg.population_size = 20;
    cfg.grid_rows = 4;
    cfg.grid_cols = 5;
    cfg.evaluation_budget = 4000;
    RngStream rng(seed);

    std::vector<double> last;
    std::vector<int> skills;
    auto observe = [&](int, const Population& pop, const EvalCounter&) {
        if (last.empty()) {
            for (const auto& m : pop) last.push_back(m.skill_cost()), skills.push_back(m.skill_factor);
            return;
        }
        for (std::size_t i = 0; i < pop.size(); ++i) {
            ++out.trials;
            if (pop[i].skill_factor != skills[i] || pop[i].skill_cost() > last[i]) ++out.violations;
            last[i] = pop[i].skill_cost();
        }
    };
    const auto result = run_mfcga(tasks, cfg, rng, observe);
    std::vector<int> census(tasks.k(), 0);
    for (int s : skills) ++census[s];
    if (census != result.skill_census) ++out.violations;
    const auto& history = result.solver.best_cost_history;
    for (std::size_t g = 1; g < history.size(); ++g)
        for (int t = 0; t < tasks.k(); ++t) out.violations += history[g][t] > history[g - 1][t] ? 1 : 0;
    return out;
}

Outcome budget_accounting(std::uint64_t seed) {
    Outcome out{"budget accounting"};
    const auto tasks = toy_pair(seed);
    for (std::int64_t budget : {41, 42, 43, 100, 1001, 2000}) {
        MfcgaConfig cg;
        cg.population_size = 20;
        cg.grid_rows = 4;
        cg.grid_cols = 5;
        cg.evaluation_budget = budget;
        RngStream r1(seed);
        const auto c = run_mfcga(tasks, cg, r1);
        ++out.trials;
        const auto expected = 20 * tasks.k() + 2 * c.cell_updates;
        if (c.solver.evaluations_used != expected || c.solver.evaluations_used > budget ||
            c.solver.evaluations_used + 2 <= budget)
            ++out.violations;

        MfeaConfig fe;
        fe.population_size = 20;
        fe.evaluation_budget = budget;
        RngStream r2(seed);
        const auto f = run_mfea(tasks, fe, r2);
        ++out.trials;
        const auto generations = static_cast<std::int64_t>(f.best_cost_history.size()) - 1;
        if (f.evaluations_used != 20 * tasks.k() + 20 * generations || f.evaluations_used > budget ||
            f.evaluations_used + 20 <= budget)
            ++out.violations;
    }
    return out;
}

namespace {

template <typename Run>
ToyRun timed(const std::vector<std::int64_t>& optima, Run run) {
    const auto start = std::chrono::steady_clock::now();
    const auto best = run();
    const auto stop = std::chrono::steady_clock::now();
    ToyRun out;
    out.seconds = std::chrono::duration<double>(stop - start).count();
    out.found_both = best == optima;
    return out;
}

}  // namespace

ToyRun toy_mfea_run(const TaskSet& tasks, const std::vector<std::int64_t>& optima, std::uint64_t seed) {
    return timed(optima, [&] {
        MfeaConfig cfg;
        cfg.population_size = kToyPopulation;
        cfg.evaluation_budget = kToyBudget;
        RngStream rng(seed);
        return run_mfea(tasks, cfg, rng).best_cost_per_task;
    });
}

ToyRun toy_mfcga_run(const TaskSet& tasks, const std::vector<std::int64_t>& optima, std::uint64_t seed) {
    return timed(optima, [&] {
        MfcgaConfig cfg;
        cfg.population_size = kToyPopulation;
        cfg.grid_rows = 4;
        cfg.grid_cols = 5;
        cfg.evaluation_budget = kToyBudget;
        RngStream rng(seed);
        return run_mfcga(tasks, cfg, rng).solver.best_cost_per_task;
    });
}

}  // namespace props
