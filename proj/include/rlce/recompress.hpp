#pragma once

// Recompression of an uncompressed text (TtoG): block compression and pair
// compression applied by turns until one letter remains.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "rlce/grammar.hpp"

namespace rlce {

/// The current string T_h over letters.
struct LetterString {
  std::vector<SymbolId> letters;
  Level level = 0;
};

/// One entry of an adjacency list. `first` > `second`; dir 0 counts
/// occurrences of first·second, dir 1 counts second·first.
struct AdjacencyEntry {
  SymbolId first;
  SymbolId second;
  std::uint8_t dir;
  std::uint64_t weight;

  friend bool operator==(const AdjacencyEntry&, const AdjacencyEntry&) = default;
};

/// Sorted by (first, second, dir), weights summed.
using AdjacencyList = std::vector<AdjacencyEntry>;

struct Partition {
  std::vector<SymbolId> left;   // sorted
  std::vector<SymbolId> right;  // sorted

  bool is_left(SymbolId c) const;
  bool is_right(SymbolId c) const;
  friend bool operator==(const Partition&, const Partition&) = default;
};

struct BlockRule {
  SymbolId letter;
  Length exponent;
  SymbolId id;
  friend bool operator==(const BlockRule&, const BlockRule&) = default;
};

struct PairRule {
  SymbolId left;
  SymbolId right;
  SymbolId id;
  friend bool operator==(const PairRule&, const PairRule&) = default;
};

enum class LevelKind : std::uint8_t { Block, Pair };

/// What one level of recompression did. Block levels run at even h, pair
/// levels at odd h. Rule lists are sorted by key, which is also id order.
struct LevelContext {
  Level h = 0;
  LevelKind kind = LevelKind::Block;
  std::vector<SymbolId> block_letters;  // Σ_B^h, sorted
  Partition partition;                  // pair levels only
  std::vector<BlockRule> block_rules;
  std::vector<PairRule> pair_rules;

  /// Id introduced for c^d (or (l, r)) at this level; 0 when none.
  SymbolId block_id(SymbolId letter, Length exponent) const;
  SymbolId pair_id(SymbolId left, SymbolId right) const;
};

/// Per-level sizes recorded by the builders.
struct LevelStat {
  Level h = 0;
  LevelKind kind = LevelKind::Block;
  std::uint64_t length_before = 0;  // |T_h|
  std::uint64_t length_after = 0;   // |T_{h+1}|
  std::uint64_t replaced = 0;       // pair occurrences (pair levels) or blocks
  std::uint64_t cfg_size_before = 0;  // grammar-side levels only
  std::uint64_t cfg_size_after = 0;
  std::uint64_t live_variables = 0;
  bool on_grammar = false;
};

/// Optional build instrumentation. Contexts are recorded only when
/// record_contexts is set; stats are always cheap and always recorded.
struct BuildLog {
  bool record_contexts = false;
  std::vector<LevelContext> contexts;
  std::vector<LevelStat> stats;
  std::uint64_t long_blocks = 0;       // grammar-side builds only
  std::uint64_t max_cfg_size = 0;      // grammar-side builds only
  std::uint64_t cutover_level = 0;     // level at which the text driver took over
  Level final_level = 0;               // ĥ
};

struct BlockCompression {
  LetterString output;
  std::vector<BlockRule> rules;
  std::vector<SymbolId> block_letters;
};

struct PairCompression {
  LetterString output;
  std::vector<PairRule> rules;
  std::uint64_t replaced = 0;
};

/// Assigns Terminal letters 1..σ in ascending code order. Requires an empty
/// builder and a non-empty text.
LetterString letterize(std::span<const Code> text, RlslpBuilder& out);
LetterString letterize(std::string_view text, RlslpBuilder& out);

/// Replaces every maximal block c^d (d >= 2) by a fresh letter; ids follow
/// the rank of (c, d).
BlockCompression bcomp(const LetterString& w, RlslpBuilder& out);

/// Requires w to be block-free.
AdjacencyList adjacency_list(const LetterString& w);

/// Greedy 1/4-approximate directed cut over the given alphabet (sorted,
/// must contain every letter of adj).
Partition choose_partition(const AdjacencyList& adj, std::span<const SymbolId> alphabet);

/// Replaces every occurrence of a pair from left·right by a fresh letter;
/// ids follow the rank of (left, right). Requires w to be block-free.
PairCompression pcomp(const LetterString& w, const Partition& p, RlslpBuilder& out);

/// Full text build.
Rlslp ttog(std::span<const Code> text, BuildLog* log = nullptr);
Rlslp ttog(std::string_view text, BuildLog* log = nullptr);

/// Continues recompression of an intermediate string at level w.level with
/// an existing builder; used when a grammar-side build switches to the text.
SymbolId run_text_levels(LetterString w, RlslpBuilder& out, BuildLog* log);

/// Popped sequence of w0 (a substring of the recorded T_0) as (letter,
/// exponent) blocks: left pops by ascending level, residue, right pops by
/// descending level.
std::vector<std::pair<SymbolId, Length>> pseq(std::span<const SymbolId> w0,
                                               std::span<const LevelContext> contexts);

/// `B h: c1 c2 ...` or `P h: L= c... | R= c...`, one line per level.
void write_level_log(std::ostream& os, std::span<const LevelContext> contexts);

}  // namespace rlce
