#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "mtvrp/instance.hpp"

namespace mtvrp {

/// A permutation of {1, ..., D_max}; the one representation every task decodes from.
struct UnifiedGenome {
    std::vector<int> perm;

    std::size_t size() const noexcept { return perm.size(); }
    friend bool operator==(const UnifiedGenome&, const UnifiedGenome&) = default;
};

bool is_valid_permutation(std::span<const int> perm);

struct RoutePlan {
    std::vector<std::vector<int>> routes;
    std::vector<std::int64_t> loads;
};

class EncodingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One task as the solvers see it.
struct Task {
    CvrpInstance instance;
    DistanceMatrix distances;

    explicit Task(CvrpInstance inst);
    int size() const noexcept { return instance.n_clients; }
};

/// Counts objective evaluations for one solver run.
struct EvalCounter {
    std::int64_t count = 0;
};

/// Keeps the values 1..task_size of `genome`, in genome order.
std::vector<int> project(const UnifiedGenome& genome, int task_size);

/// Greedy left-to-right split: a route closes when the next client would overflow capacity.
RoutePlan split_decode(std::span<const int> task_perm, const CvrpInstance& instance);

std::int64_t evaluate(const RoutePlan& plan, const DistanceMatrix& dm);

/// project, split_decode, evaluate; bumps `counter` by one.
std::int64_t unified_evaluate(const UnifiedGenome& genome, const Task& task, EvalCounter& counter);

}  // namespace mtvrp
