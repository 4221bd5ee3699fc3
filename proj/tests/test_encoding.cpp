#include <fstream>
#include <random>

#include "doctest.h"
#include "mtvrp/harness.hpp"
#include "mtvrp/operators.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

using namespace mtvrp;

namespace {

CvrpInstance line_instance(std::vector<std::int64_t> demands, std::int64_t capacity) {
    CvrpInstance inst;
    inst.n_nodes = static_cast<int>(demands.size());
    inst.n_clients = inst.n_nodes - 1;
    inst.capacity = capacity;
    inst.demands = std::move(demands);
    for (int i = 0; i < inst.n_nodes; ++i) inst.coords.push_back({i, 0});
    return inst;
}

UnifiedGenome genome(std::vector<int> v) { return UnifiedGenome{std::move(v)}; }

}  // namespace

TEST_CASE("projection keeps the first D_k clients in genome order") {
    const auto g = genome({3, 1, 5, 2, 4});
    CHECK(project(g, 3) == std::vector<int>{3, 1, 2});
    CHECK(project(g, 5) == g.perm);
    CHECK(project(g, 1) == std::vector<int>{1});
}

TEST_CASE("projection equals deleting larger values") {
    RngStream rng(11);
    for (int t = 0; t < 500; ++t) {
        const auto g = random_genome(rng, 30);
        const int dk = 1 + rng.index(30);
        std::vector<int> expected;
        for (int v : g.perm)
            if (v <= dk) expected.push_back(v);
        REQUIRE(project(g, dk) == expected);
        REQUIRE(is_valid_permutation(expected));
    }
}

TEST_CASE("greedy split") {
    SUBCASE("forced split at capacity") {
        const auto plan = split_decode(std::vector<int>{1, 2, 3}, line_instance({0, 4, 4, 4}, 10));
        CHECK(plan.routes == std::vector<std::vector<int>>{{1, 2}, {3}});
        CHECK(plan.loads == std::vector<std::int64_t>{8, 4});
    }
    SUBCASE("exact capacity") {
        const auto plan = split_decode(std::vector<int>{1, 2, 3}, line_instance({0, 4, 4, 4}, 12));
        CHECK(plan.routes == std::vector<std::vector<int>>{{1, 2, 3}});
        CHECK(plan.loads == std::vector<std::int64_t>{12});
    }
    SUBCASE("infeasible client") {
        auto inst = line_instance({0, 4, 11}, 10);
        CHECK_THROWS_AS(split_decode(std::vector<int>{1, 2}, inst), EncodingError);
    }
}

TEST_CASE("greedy split against exhaustive splits on 8 clients") {
    // greedy is not an optimal split; it must stay feasible and order preserving and may
    // only cost more than the best split
    std::mt19937_64 gen(5);
    RngStream rng(5);
    int greedy_optimal = 0;
    std::int64_t worst_gap = 0;
    constexpr int kTrials = 200;
    for (int t = 0; t < kTrials; ++t) {
        const auto inst = oracle::toy_instance(gen(), 8, 15, 8);
        const Task task(inst);
        const auto perm = random_genome(rng, 8).perm;
        const auto plan = split_decode(perm, inst);
        std::vector<int> flat;
        for (std::size_t r = 0; r < plan.routes.size(); ++r) {
            REQUIRE(plan.loads[r] <= inst.capacity);
            flat.insert(flat.end(), plan.routes[r].begin(), plan.routes[r].end());
        }
        REQUIRE(flat == perm);
        const auto greedy = evaluate(plan, task.distances);
        const auto best = oracle::best_split_cost(perm, inst);
        REQUIRE(greedy >= best);
        greedy_optimal += greedy == best;
        worst_gap = std::max(worst_gap, greedy - best);
    }
    MESSAGE("greedy split optimal in " << greedy_optimal << "/" << kTrials << " trials, worst gap " << worst_gap);
}

TEST_CASE("split feasibility property") {
    const auto outcome = props::split_feasibility(10000, 17);
    CHECK(outcome.trials == 10000);
    CHECK(outcome.violations == 0);
}

TEST_CASE("route cost") {
    CvrpInstance inst;
    inst.n_nodes = 2;
    inst.n_clients = 1;
    inst.capacity = 5;
    inst.coords = {{0, 0}, {7, 0}};
    inst.demands = {0, 1};
    const auto dm = build_distance_matrix(inst);
    CHECK(evaluate(RoutePlan{{{1}}, {1}}, dm) == 14);
    CHECK(evaluate(RoutePlan{}, dm) == 0);
    CHECK_THROWS_AS(evaluate(RoutePlan{{{2}}, {1}}, dm), EncodingError);
}

TEST_CASE("the stored P-n16-k8 solution costs the known optimum") {
    const auto inst = load_instance(std::string(MTVRP_DATA_DIR) + "/instances/P-n16-k8.vrp");
    std::ifstream is(std::string(MTVRP_DATA_DIR) + "/solutions/P-n16-k8.sol");
    REQUIRE(is);
    const auto plan = read_solution(is, inst);
    std::vector<int> seen(inst.n_nodes, 0);
    for (std::size_t r = 0; r < plan.routes.size(); ++r) {
        CHECK(plan.loads[r] <= inst.capacity);
        for (int c : plan.routes[r]) ++seen[c];
    }
    for (int c = 1; c < inst.n_nodes; ++c) CHECK(seen[c] == 1);
    CHECK(evaluate(plan, build_distance_matrix(inst)) == 450);
}

TEST_CASE("unified evaluation") {
    const Task task(oracle::toy_instance(3, 6, 12, 6));
    RngStream rng(3);

    SUBCASE("identity projection on the largest task") {
        const auto g = random_genome(rng, 6);
        EvalCounter counter;
        CHECK(unified_evaluate(g, task, counter) == evaluate(split_decode(g.perm, task.instance), task.distances));
        CHECK(counter.count == 1);
    }
    SUBCASE("deterministic and counted once per call") {
        const auto g = random_genome(rng, 6);
        EvalCounter counter;
        const auto a = unified_evaluate(g, task, counter);
        const auto b = unified_evaluate(g, task, counter);
        CHECK(a == b);
        CHECK(counter.count == 2);
    }
    SUBCASE("matches an independent greedy decode") {
        for (int t = 0; t < 500; ++t) {
            const auto g = random_genome(rng, 6);
            EvalCounter counter;
            REQUIRE(unified_evaluate(g, task, counter) == oracle::greedy_cost(g.perm, task.instance));
        }
    }
    SUBCASE("depends only on the projection") {
        for (int t = 0; t < 200; ++t) {
            auto a = random_genome(rng, 10);
            auto b = a;
            // shuffle the positions holding values above 6, leaving the projection alone
            std::vector<std::size_t> slots;
            for (std::size_t i = 0; i < b.perm.size(); ++i)
                if (b.perm[i] > 6) slots.push_back(i);
            std::vector<int> big;
            for (auto i : slots) big.push_back(b.perm[i]);
            rng.shuffle(big.begin(), big.end());
            for (std::size_t s = 0; s < slots.size(); ++s) b.perm[slots[s]] = big[s];
            EvalCounter counter;
            REQUIRE(unified_evaluate(a, task, counter) == unified_evaluate(b, task, counter));
        }
    }
}
