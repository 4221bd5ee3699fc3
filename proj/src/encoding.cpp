#include "mtvrp/encoding.hpp"

#include <string>

namespace mtvrp {

bool is_valid_permutation(std::span<const int> perm) {
    std::vector<char> seen(perm.size() + 1, 0);
    for (int v : perm) {
        if (v < 1 || static_cast<std::size_t>(v) > perm.size() || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

Task::Task(CvrpInstance inst) : instance(std::move(inst)), distances(build_distance_matrix(instance)) {}

std::vector<int> project(const UnifiedGenome& genome, int task_size) {
    std::vector<int> out;
    out.reserve(task_size);
    for (int v : genome.perm)
        if (v <= task_size) out.push_back(v);
    return out;
}

RoutePlan split_decode(std::span<const int> task_perm, const CvrpInstance& instance) {
    RoutePlan plan;
    std::vector<int> current;
    std::int64_t load = 0;
    for (int client : task_perm) {
        if (client < 1 || client > instance.n_clients)
            throw EncodingError("client id " + std::to_string(client) + " out of range for " + instance.name);
        const auto demand = instance.demands[client];
        if (demand > instance.capacity)
            throw EncodingError("client " + std::to_string(client) + " demand exceeds vehicle capacity");
        if (!current.empty() && load + demand > instance.capacity) {
            plan.routes.push_back(std::move(current));
            plan.loads.push_back(load);
            current.clear();
            load = 0;
        }
        current.push_back(client);
        load += demand;
    }
    if (!current.empty()) {
        plan.routes.push_back(std::move(current));
        plan.loads.push_back(load);
    }
    return plan;
}

std::int64_t evaluate(const RoutePlan& plan, const DistanceMatrix& dm) {
    std::int64_t cost = 0;
    for (const auto& route : plan.routes) {
        int prev = 0;
        for (int c : route) {
            if (c < 1 || c >= dm.size())
                throw EncodingError("client id " + std::to_string(c) + " out of range in route plan");
            cost += dm(prev, c);
            prev = c;
        }
        cost += dm(prev, 0);
    }
    return cost;
}

std::int64_t unified_evaluate(const UnifiedGenome& genome, const Task& task, EvalCounter& counter) {
    ++counter.count;
    const auto perm = project(genome, task.size());
    return evaluate(split_decode(perm, task.instance), task.distances);
}

}  // namespace mtvrp
