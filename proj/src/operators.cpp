#include "mtvrp/operators.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace mtvrp {

UnifiedGenome random_genome(RngStream& rng, int d_max) {
    if (d_max < 1) throw OperatorError("genome length must be at least 1");
    UnifiedGenome g;
    g.perm.resize(d_max);
    std::iota(g.perm.begin(), g.perm.end(), 1);
    rng.shuffle(g.perm.begin(), g.perm.end());
    return g;
}

UnifiedGenome order_crossover(const UnifiedGenome& p1, const UnifiedGenome& p2, std::size_t first_cut,
                              std::size_t second_cut) {
    const std::size_t len = p1.size();
    if (p2.size() != len)
        throw OperatorError("order_crossover: parent lengths differ (" + std::to_string(len) + " vs " +
                            std::to_string(p2.size()) + ")");
    if (first_cut > second_cut || second_cut > len) throw OperatorError("order_crossover: bad cut points");

    UnifiedGenome child;
    child.perm.assign(len, 0);
    std::vector<char> used(len + 1, 0);
    for (std::size_t k = first_cut; k < second_cut; ++k) {
        child.perm[k] = p1.perm[k];
        used[p1.perm[k]] = 1;
    }
    const std::size_t to_fill = len - (second_cut - first_cut);
    std::size_t write = second_cut % (len == 0 ? 1 : len);
    std::size_t read = write;
    for (std::size_t filled = 0; filled < to_fill; read = (read + 1) % len) {
        const int v = p2.perm[read];
        if (used[v]) continue;
        child.perm[write] = v;
        used[v] = 1;
        write = (write + 1) % len;
        ++filled;
    }
    return child;
}

UnifiedGenome order_crossover(const UnifiedGenome& p1, const UnifiedGenome& p2, RngStream& rng) {
    const auto len = p1.size();
    if (p2.size() != len)
        throw OperatorError("order_crossover: parent lengths differ (" + std::to_string(len) + " vs " +
                            std::to_string(p2.size()) + ")");
    auto a = static_cast<std::size_t>(rng.below(len + 1));
    auto b = static_cast<std::size_t>(rng.below(len + 1));
    if (a > b) std::swap(a, b);
    return order_crossover(p1, p2, a, b);
}

UnifiedGenome two_opt_mutation(const UnifiedGenome& p, std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    if (j >= p.size()) throw OperatorError("two_opt_mutation: position out of range");
    UnifiedGenome out = p;
    std::reverse(out.perm.begin() + static_cast<std::ptrdiff_t>(i), out.perm.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    return out;
}

UnifiedGenome two_opt_mutation(const UnifiedGenome& p, RngStream& rng) {
    const auto len = p.size();
    if (len < 2) throw OperatorError("two_opt_mutation needs at least two positions");
    auto i = static_cast<std::size_t>(rng.below(len));
    auto j = static_cast<std::size_t>(rng.below(len - 1));
    if (j >= i) ++j;
    return two_opt_mutation(p, i, j);
}

}  // namespace mtvrp
