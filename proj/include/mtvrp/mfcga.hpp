#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mtvrp/operators.hpp"
#include "mtvrp/solver.hpp"

namespace mtvrp {

/// Toroidal grid, cells in row-major order, Moore neighbourhood of radius 1.
class MooreGrid {
public:
    MooreGrid(int rows, int cols);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    int size() const noexcept { return rows_ * cols_; }

    int cell(int r, int c) const noexcept { return r * cols_ + c; }

    /// The 8 surrounding cells, clockwise from north-west.
    std::array<int, 8> neighbors(int cell) const;

    /// Asynchronous sweep order: 0, 1, ..., size-1.
    std::vector<int> sweep_order() const;

private:
    int rows_;
    int cols_;
};

/// Counts of improving replacements. crossover_events[t][s]: a crossover child replaced an
/// incumbent of skill t using a neighbour of skill s.
struct TransferLedger {
    std::vector<std::vector<std::int64_t>> crossover_events;
    std::vector<std::int64_t> mutation_improvements;

    explicit TransferLedger(int k = 0)
        : crossover_events(k, std::vector<std::int64_t>(k, 0)), mutation_improvements(k, 0) {}

    int k() const noexcept { return static_cast<int>(mutation_improvements.size()); }
    std::int64_t total_crossover() const;
    std::int64_t total_mutation() const;
};

struct MfcgaConfig {
    int population_size = 200;
    int grid_rows = 10;
    int grid_cols = 20;
    std::int64_t evaluation_budget = 50000;
};

void validate(const MfcgaConfig& config, int k);

struct MfcgaResult {
    SolverResult solver;
    TransferLedger ledger;
    std::int64_t cell_updates = 0;
    std::int64_t crossover_wins = 0;  // counted separately from the ledger, for cross-checks
    std::vector<int> skill_census;    // members per task after initialisation
};

/// Multifactorial cellular GA: every cell crosses with a random Moore neighbour and mutates,
/// both children are evaluated on the cell's task only, and a child replaces the cell only
/// when strictly better. Skill factors are fixed after the balanced initial assignment.
MfcgaResult run_mfcga(const TaskSet& tasks, const MfcgaConfig& config, RngStream& rng,
                      const GenerationObserver& observer = {});

}  // namespace mtvrp
