#pragma once

// Rank-based level kernels shared by the text driver and the grammar-side
// builder's final phase.

#include <span>
#include <vector>

#include "radix_sort.hpp"
#include "rlce/recompress.hpp"

namespace rlce::detail {

struct LevelOutcome {
  std::vector<SymbolId> output;
  std::vector<SymbolId> alphabet;  // alphabet of output, sorted
  std::vector<BlockRule> block_rules;
  std::vector<SymbolId> block_letters;
  std::vector<PairRule> pair_rules;
  std::uint64_t replaced = 0;
};

std::vector<SymbolId> sorted_alphabet(std::span<const SymbolId> letters);

LevelOutcome block_level(const std::vector<SymbolId>& w, const LetterRanks& ranks, RlslpBuilder& out, Level h);
AdjacencyList adjacency(const std::vector<SymbolId>& w, const LetterRanks& ranks);
/// Greedy pass plus the final switch; side[r] = 1 for left.
std::vector<char> partition_sides(const AdjacencyList& adj, const LetterRanks& ranks);
Partition to_partition(const std::vector<char>& side, const LetterRanks& ranks);
std::vector<char> sides_from(const Partition& p, const LetterRanks& ranks);
LevelOutcome pair_level(const std::vector<SymbolId>& w, const std::vector<char>& side, const LetterRanks& ranks,
                        RlslpBuilder& out, Level h);

}  // namespace rlce::detail
