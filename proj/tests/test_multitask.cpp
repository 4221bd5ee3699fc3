#include <random>

#include "doctest.h"
#include "mtvrp/operators.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

using namespace mtvrp;

namespace {

PopulationMember with_ranks(std::vector<int> ranks) {
    PopulationMember m;
    m.factorial_ranks = std::move(ranks);
    return m;
}

Population with_costs(const std::vector<std::vector<double>>& costs) {
    Population pop(costs.size());
    for (std::size_t i = 0; i < costs.size(); ++i) pop[i].factorial_costs = costs[i];
    return pop;
}

std::vector<int> counts(const Population& pop, int k) {
    std::vector<int> c(k, 0);
    for (const auto& m : pop) ++c[m.skill_factor];
    return c;
}

}  // namespace

TEST_CASE("factorial ranks") {
    const double inf = kUnevaluated;
    CHECK(ranks_from_costs(std::vector<double>{5, 3, 9}) == std::vector<int>{2, 1, 3});
    CHECK(ranks_from_costs(std::vector<double>{4, 4}) == std::vector<int>{1, 2});
    CHECK(ranks_from_costs(std::vector<double>{7, inf, 2}) == std::vector<int>{2, 3, 1});
}

TEST_CASE("scalar fitness and skill factor") {
    auto a = with_ranks({1, 4});
    compute_scalar_fitness_and_skill(a);
    CHECK(a.scalar_fitness == 1.0);
    CHECK(a.skill_factor == 0);

    auto b = with_ranks({3, 3});
    compute_scalar_fitness_and_skill(b);
    CHECK(b.scalar_fitness == doctest::Approx(1.0 / 3));
    CHECK(b.skill_factor == 0);

    auto c = with_ranks({5, 2, 8});
    compute_scalar_fitness_and_skill(c);
    CHECK(c.scalar_fitness == 0.5);
    CHECK(c.skill_factor == 1);
}

TEST_CASE("full evaluation counts N*K and matches direct calls") {
    std::vector<Task> tasks;
    tasks.emplace_back(oracle::toy_instance(1, 4, 10, 5));
    tasks.emplace_back(oracle::toy_instance(2, 6, 10, 5));
    const TaskSet set(std::move(tasks));
    CHECK(set.d_max() == 6);

    RngStream rng(1);
    Population pop(2);
    pop[0].genome = random_genome(rng, 6);
    pop[1].genome = pop[0].genome;
    EvalCounter counter;
    full_evaluate(pop, set, counter);
    CHECK(counter.count == 4);
    CHECK(pop[0].factorial_costs == pop[1].factorial_costs);

    Population three(3);
    for (auto& m : three) m.genome = random_genome(rng, 6);
    EvalCounter c2, c3;
    full_evaluate(three, set, c2);
    auto parallel = three;
    for (auto& m : parallel) m.factorial_costs.clear();
    full_evaluate_parallel(parallel, set, c3);
    CHECK(c3.count == c2.count);
    for (const auto& m : three) {
        CHECK(m.factorial_costs[1] ==
              static_cast<double>(oracle::greedy_cost(project(m.genome, 6), set[1].instance)));
    }
    for (std::size_t i = 0; i < three.size(); ++i) CHECK(parallel[i].factorial_costs == three[i].factorial_costs);
}

TEST_CASE("every task has exactly one rank-1 member") {
    std::mt19937_64 gen(3);
    for (int t = 0; t < 100; ++t) {
        std::vector<std::vector<double>> costs(8, std::vector<double>(3));
        for (auto& row : costs)
            for (auto& c : row) c = static_cast<double>(gen() % 4);
        auto pop = with_costs(costs);
        update_multifactorial_fitness(pop, 3);
        int phi_one = 0;
        for (int k = 0; k < 3; ++k) {
            int rank_one = 0;
            for (const auto& m : pop) rank_one += m.factorial_ranks[k] == 1;
            REQUIRE(rank_one == 1);
        }
        for (const auto& m : pop) phi_one += m.scalar_fitness == 1.0;
        REQUIRE(phi_one >= 1);
    }
}

TEST_CASE("fitness is invariant under a monotone cost transform on one task") {
    std::mt19937_64 gen(4);
    for (int t = 0; t < 200; ++t) {
        std::vector<std::vector<double>> costs(6, std::vector<double>(3));
        for (auto& row : costs)
            for (auto& c : row) c = static_cast<double>(gen() % 10);
        auto before = with_costs(costs);
        const int task = static_cast<int>(gen() % 3);
        for (auto& row : costs) row[task] = 2 * row[task] + 7;
        auto after = with_costs(costs);
        update_multifactorial_fitness(before, 3);
        update_multifactorial_fitness(after, 3);
        for (std::size_t i = 0; i < before.size(); ++i) {
            REQUIRE(before[i].factorial_ranks == after[i].factorial_ranks);
            REQUIRE(before[i].scalar_fitness == after[i].scalar_fitness);
            REQUIRE(before[i].skill_factor == after[i].skill_factor);
        }
    }
}

TEST_CASE("brute-force agreement on random 6-member 3-task populations") {
    const auto outcome = props::rank_agreement(1000, 23);
    CHECK(outcome.trials == 1000);
    CHECK(outcome.violations == 0);
}

TEST_CASE("balanced skill assignment") {
    SUBCASE("N=4, K=2") {
        auto pop = with_costs({{1, 5}, {2, 6}, {3, 7}, {4, 8}});
        update_multifactorial_fitness(pop, 2);
        balanced_skill_assignment(pop, 2);
        CHECK(counts(pop, 2) == std::vector<int>{2, 2});
    }
    SUBCASE("N=5, K=2 gives the extra member to task 0") {
        auto pop = with_costs({{1, 5}, {2, 6}, {3, 7}, {4, 8}, {5, 9}});
        update_multifactorial_fitness(pop, 2);
        balanced_skill_assignment(pop, 2);
        CHECK(counts(pop, 2) == std::vector<int>{3, 2});
    }
    SUBCASE("a member ranked first on both tasks goes to task 0") {
        // member 0 ranks 1 on both tasks; member 2 ranks 2 on task 1
        auto pop = with_costs({{1, 1}, {2, 9}, {3, 2}, {4, 8}});
        update_multifactorial_fitness(pop, 2);
        balanced_skill_assignment(pop, 2);
        // round robin: task 0 takes 0, task 1 takes 2, task 0 takes 1, task 1 takes 3
        CHECK(pop[0].skill_factor == 0);
        CHECK(pop[2].skill_factor == 1);
        CHECK(pop[1].skill_factor == 0);
        CHECK(pop[3].skill_factor == 1);
    }
    SUBCASE("partition property") {
        std::mt19937_64 gen(8);
        for (int t = 0; t < 200; ++t) {
            const int n = 3 + static_cast<int>(gen() % 20);
            const int k = 1 + static_cast<int>(gen() % 3);
            std::vector<std::vector<double>> costs(n, std::vector<double>(k));
            for (auto& row : costs)
                for (auto& c : row) c = static_cast<double>(gen() % 7);
            auto pop = with_costs(costs);
            update_multifactorial_fitness(pop, k);
            balanced_skill_assignment(pop, k);
            const auto c = counts(pop, k);
            REQUIRE(*std::max_element(c.begin(), c.end()) - *std::min_element(c.begin(), c.end()) <= 1);
            for (int task = 0; task < k; ++task) REQUIRE(c[task] == n / k + (task < n % k ? 1 : 0));
        }
    }
}

TEST_CASE("empty task set is rejected") { CHECK_THROWS(TaskSet(std::vector<Task>{})); }
