#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mtvrp/encoding.hpp"
#include "mtvrp/instance.hpp"
#include "mtvrp/mfcga.hpp"

namespace mtvrp {

// ---------------------------------------------------------------------------
// Rank-sum test
// ---------------------------------------------------------------------------

enum class Better { first, second, neither };

struct SignificanceVerdict {
    double statistic = 0.0;  // rank sum of the first sample
    double p_value = 1.0;    // two-sided
    bool significant = false;
    Better direction = Better::neither;  // sample with the lower mean rank
    bool exact = false;
};

enum class RankSumMethod { automatic, exact, normal };

inline constexpr double kSignificanceLevel = 0.05;

/// Two-sided Wilcoxon rank-sum (Mann-Whitney) test with midranks for ties.
/// `automatic` enumerates the exact null distribution when the smaller sample has at most 10
/// values and there are no ties, and otherwise uses the tie-corrected normal approximation
/// with continuity correction. Both samples need at least 3 values.
SignificanceVerdict wilcoxon_rank_sum(std::span<const double> xs, std::span<const double> ys,
                                      RankSumMethod method = RankSumMethod::automatic);

// ---------------------------------------------------------------------------
// Mean comparison
// ---------------------------------------------------------------------------

enum class Sign { better, similar, worse };

std::string to_string(Sign s);

/// Minimisation: `better` when the first mean is lower.
Sign compare_means(double first_mean, double second_mean);

std::vector<Sign> compare_signs(std::span<const double> first_means, std::span<const double> second_means);

struct SampleStats {
    double mean = 0.0;
    double best = 0.0;
    double stddev = 0.0;  // sample (n - 1) standard deviation; 0 for a single value
};

SampleStats summarize(std::span<const double> values);

// ---------------------------------------------------------------------------
// Instance and solution similarity
// ---------------------------------------------------------------------------

/// Percentage of `column`'s clients whose coordinates appear among `row`'s client coordinates.
double client_overlap(const CvrpInstance& row, const CvrpInstance& column);

/// Percentage (floored) of the undirected arcs of `plan_b`, depot arcs included, that also occur
/// in `plan_a` once nodes are matched by coordinates. Unmatched nodes never share an arc.
int solution_overlap(const RoutePlan& plan_a, const CvrpInstance& inst_a, const RoutePlan& plan_b,
                     const CvrpInstance& inst_b);

// ---------------------------------------------------------------------------
// Transfer ledgers
// ---------------------------------------------------------------------------

struct TransferSummary {
    std::vector<std::vector<double>> crossover_mean;  // [target][source]
    std::vector<double> mutation_mean;

    int k() const noexcept { return static_cast<int>(mutation_mean.size()); }
};

/// Element-wise mean over runs.
TransferSummary aggregate_transfer(std::span<const TransferLedger> ledgers);

}  // namespace mtvrp
