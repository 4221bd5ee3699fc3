#pragma once

#include <stdexcept>

#include "mtvrp/encoding.hpp"
#include "mtvrp/rng.hpp"

namespace mtvrp {

class OperatorError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Fisher-Yates shuffle of 1..d_max.
UnifiedGenome random_genome(RngStream& rng, int d_max);

/// Classical order crossover (OX). Positions [first_cut, second_cut) come from `p1`; the rest
/// are filled from `p2` in p2's order, both starting at `second_cut` and wrapping around.
UnifiedGenome order_crossover(const UnifiedGenome& p1, const UnifiedGenome& p2, std::size_t first_cut,
                              std::size_t second_cut);

/// OX with cut points a <= b drawn uniformly from 0..L.
UnifiedGenome order_crossover(const UnifiedGenome& p1, const UnifiedGenome& p2, RngStream& rng);

/// Reverses positions i..j (inclusive) on a copy.
UnifiedGenome two_opt_mutation(const UnifiedGenome& p, std::size_t i, std::size_t j);

/// One random 2-opt move: i < j drawn uniformly among distinct position pairs.
UnifiedGenome two_opt_mutation(const UnifiedGenome& p, RngStream& rng);

}  // namespace mtvrp
