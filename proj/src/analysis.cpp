#include "mtvrp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace mtvrp {

namespace {

// Midranks of the pooled sample, doubled so that they are integers.
std::vector<std::int64_t> doubled_midranks(std::span<const double> pooled, double& tie_term) {
    const auto n = pooled.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return pooled[a] < pooled[b]; });
    std::vector<std::int64_t> ranks(n);
    tie_term = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && pooled[order[j]] == pooled[order[i]]) ++j;
        // positions i..j-1 hold ranks i+1..j; doubled midrank is i+1+j
        for (std::size_t m = i; m < j; ++m) ranks[order[m]] = static_cast<std::int64_t>(i + 1 + j);
        const double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }
    return ranks;
}

// P(W <= w) and P(W >= w) where W is the sum of a uniformly random `m`-subset of `scores`.
std::pair<double, double> exact_tails(const std::vector<std::int64_t>& scores, std::size_t m, std::int64_t w) {
    const std::int64_t max_sum = std::accumulate(scores.begin(), scores.end(), std::int64_t{0});
    // ways[size][sum]
    std::vector<std::vector<double>> ways(m + 1, std::vector<double>(max_sum + 1, 0.0));
    ways[0][0] = 1.0;
    std::int64_t reach = 0;
    for (auto s : scores) {
        reach += s;
        for (std::size_t size = m; size >= 1; --size) {
            auto& dst = ways[size];
            const auto& src = ways[size - 1];
            for (std::int64_t sum = reach; sum >= s; --sum) dst[sum] += src[sum - s];
        }
    }
    double total = 0.0, lower = 0.0, upper = 0.0;
    for (std::int64_t sum = 0; sum <= max_sum; ++sum) {
        const double c = ways[m][sum];
        total += c;
        if (sum <= w) lower += c;
        if (sum >= w) upper += c;
    }
    return {lower / total, upper / total};
}

}  // namespace

SignificanceVerdict wilcoxon_rank_sum(std::span<const double> xs, std::span<const double> ys, RankSumMethod method) {
    if (xs.size() < 3 || ys.size() < 3) throw std::invalid_argument("rank-sum test needs at least 3 values per sample");
    const auto n1 = xs.size();
    const auto n2 = ys.size();
    const auto n = n1 + n2;

    std::vector<double> pooled(xs.begin(), xs.end());
    pooled.insert(pooled.end(), ys.begin(), ys.end());
    double tie_term = 0.0;
    const auto ranks2 = doubled_midranks(pooled, tie_term);

    const std::int64_t r1_doubled = std::accumulate(ranks2.begin(), ranks2.begin() + n1, std::int64_t{0});
    const std::int64_t r2_doubled = std::accumulate(ranks2.begin() + n1, ranks2.end(), std::int64_t{0});

    SignificanceVerdict v;
    v.statistic = static_cast<double>(r1_doubled) / 2.0;
    const double mean_rank1 = static_cast<double>(r1_doubled) / (2.0 * n1);
    const double mean_rank2 = static_cast<double>(r2_doubled) / (2.0 * n2);
    if (mean_rank1 < mean_rank2) v.direction = Better::first;
    else if (mean_rank2 < mean_rank1) v.direction = Better::second;

    const bool all_equal = std::all_of(pooled.begin(), pooled.end(), [&](double x) { return x == pooled[0]; });
    if (all_equal) {
        v.p_value = 1.0;
        v.direction = Better::neither;
        return v;
    }

    const bool has_ties = tie_term > 0.0;
    const bool use_exact = method == RankSumMethod::exact ||
                           (method == RankSumMethod::automatic && std::min(n1, n2) <= 10 && !has_ties);

    if (use_exact) {
        // enumerate over the smaller sample's rank sum; the two-sided p-value is symmetric
        const bool first_small = n1 <= n2;
        const auto m = first_small ? n1 : n2;
        const auto w = first_small ? r1_doubled : r2_doubled;
        const auto [lower, upper] = exact_tails(ranks2, m, w);
        v.p_value = std::min(1.0, 2.0 * std::min(lower, upper));
        v.exact = true;
    } else {
        const double u1 = v.statistic - n1 * (n1 + 1.0) / 2.0;
        const double mu = n1 * n2 / 2.0;
        const double var = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (static_cast<double>(n) * (n - 1.0)));
        const double z = std::max(0.0, std::abs(u1 - mu) - 0.5) / std::sqrt(var);
        v.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    }
    v.significant = v.p_value < kSignificanceLevel;
    return v;
}

std::string to_string(Sign s) {
    switch (s) {
        case Sign::better: return "better";
        case Sign::similar: return "similar";
        case Sign::worse: return "worse";
    }
    return "?";
}

Sign compare_means(double first_mean, double second_mean) {
    const double tol = 1e-9 * std::max({1.0, std::abs(first_mean), std::abs(second_mean)});
    if (std::abs(first_mean - second_mean) <= tol) return Sign::similar;
    return first_mean < second_mean ? Sign::better : Sign::worse;
}

std::vector<Sign> compare_signs(std::span<const double> first_means, std::span<const double> second_means) {
    if (first_means.size() != second_means.size()) throw std::invalid_argument("compare_signs: unpaired inputs");
    std::vector<Sign> out;
    out.reserve(first_means.size());
    for (std::size_t i = 0; i < first_means.size(); ++i) out.push_back(compare_means(first_means[i], second_means[i]));
    return out;
}

SampleStats summarize(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("summarize: empty sample");
    SampleStats s;
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    s.best = *std::min_element(values.begin(), values.end());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / (values.size() - 1));
    }
    return s;
}

double client_overlap(const CvrpInstance& row, const CvrpInstance& column) {
    if (column.n_clients == 0) return 0.0;
    const std::set<Point> row_clients(row.coords.begin() + 1, row.coords.end());
    int common = 0;
    for (int c = 1; c < column.n_nodes; ++c) common += row_clients.count(column.coords[c]) ? 1 : 0;
    return 100.0 * common / column.n_clients;
}

namespace {

using Arc = std::pair<int, int>;

Arc undirected(int a, int b) { return a < b ? Arc{a, b} : Arc{b, a}; }

std::set<Arc> arcs_of(const RoutePlan& plan) {
    std::set<Arc> arcs;
    for (const auto& route : plan.routes) {
        int prev = 0;
        for (int c : route) {
            arcs.insert(undirected(prev, c));
            prev = c;
        }
        arcs.insert(undirected(prev, 0));
    }
    return arcs;
}

}  // namespace

int solution_overlap(const RoutePlan& plan_a, const CvrpInstance& inst_a, const RoutePlan& plan_b,
                     const CvrpInstance& inst_b) {
    const auto arcs_a = arcs_of(plan_a);
    const auto arcs_b = arcs_of(plan_b);
    if (arcs_b.empty()) return 0;

    // node of b -> node of a with the same coordinates (depot to depot, client to client)
    std::map<Point, int> a_clients;
    for (int i = 1; i < inst_a.n_nodes; ++i) a_clients.emplace(inst_a.coords[i], i);
    std::vector<int> to_a(inst_b.n_nodes, -1);
    if (inst_a.coords[0] == inst_b.coords[0]) to_a[0] = 0;
    for (int i = 1; i < inst_b.n_nodes; ++i)
        if (auto it = a_clients.find(inst_b.coords[i]); it != a_clients.end()) to_a[i] = it->second;

    std::size_t shared = 0;
    for (const auto& [u, v] : arcs_b) {
        const int mu = to_a[u], mv = to_a[v];
        if (mu < 0 || mv < 0) continue;
        shared += arcs_a.count(undirected(mu, mv));
    }
    return static_cast<int>(100 * shared / arcs_b.size());
}

TransferSummary aggregate_transfer(std::span<const TransferLedger> ledgers) {
    if (ledgers.empty()) throw std::invalid_argument("aggregate_transfer: no ledgers");
    const int k = ledgers.front().k();
    TransferSummary s;
    s.crossover_mean.assign(k, std::vector<double>(k, 0.0));
    s.mutation_mean.assign(k, 0.0);
    for (const auto& l : ledgers) {
        if (l.k() != k) throw std::invalid_argument("aggregate_transfer: ledgers of different sizes");
        for (int t = 0; t < k; ++t) {
            for (int u = 0; u < k; ++u) s.crossover_mean[t][u] += static_cast<double>(l.crossover_events[t][u]);
            s.mutation_mean[t] += static_cast<double>(l.mutation_improvements[t]);
        }
    }
    const double runs = static_cast<double>(ledgers.size());
    for (int t = 0; t < k; ++t) {
        for (auto& x : s.crossover_mean[t]) x /= runs;
        s.mutation_mean[t] /= runs;
    }
    return s;
}

}  // namespace mtvrp
