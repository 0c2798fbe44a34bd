#pragma once

// Recompression driven directly on a straight-line program, without
// decompressing it: the intermediate grammars keep every righthand side as a
// string of letters with at most two variable occurrences.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rlce/grammar.hpp"
#include "rlce/recompress.hpp"

namespace rlce {

using VarId = std::uint32_t;

/// Chomsky-normal-form SLP; variable k is rules[k-1]; the last variable is
/// the start.
struct SlpRule {
  bool terminal = true;
  Code code = 0;
  VarId left = 0;
  VarId right = 0;
  friend bool operator==(const SlpRule&, const SlpRule&) = default;
};

struct Slp {
  std::vector<SlpRule> rules;
  std::vector<Length> lengths;  // charLen per variable (index k-1)
  Length text_length = 0;

  std::uint32_t size() const { return static_cast<std::uint32_t>(rules.size()); }
  VarId start() const { return size(); }
  const SlpRule& rule(VarId v) const { return rules[v - 1]; }
  Length length(VarId v) const { return lengths[v - 1]; }
};

/// Checks operand order and computes lengths. Throws InvalidInput naming
/// the variable, Overflow when N exceeds 64 bits.
Slp make_slp(std::vector<SlpRule> rules);

/// `SLP <n>` then one `T <code>` or `P <left> <right>` line per variable.
Slp read_slp(std::istream& is);
Slp parse_slp(const std::string& text);
void write_slp(std::ostream& os, const Slp& slp);

std::vector<Code> expand_slp(const Slp& slp, Length max_len = Length{1} << 26);

/// Number of derivation-tree nodes per variable (index = variable id,
/// entry 0 unused). Unreachable variables get 0.
using VoccMap = std::vector<std::uint64_t>;
VoccMap compute_vocc(const Slp& slp);

/// A righthand-side atom: a letter with a repetition count (counts above 1
/// appear only between block uncrossing and block compression), or a
/// variable occurrence.
struct Atom {
  bool is_var = false;
  std::uint32_t id = 0;
  Length count = 1;

  static Atom letter(SymbolId c, Length count = 1) { return {false, c, count}; }
  static Atom var(VarId v) { return {true, v, 1}; }
  friend bool operator==(const Atom&, const Atom&) = default;
};

struct BoundaryRun {
  SymbolId letter = 0;
  Length exponent = 0;
  friend bool operator==(const BoundaryRun&, const BoundaryRun&) = default;
};

class ShapedCfg {
 public:
  /// rhs[v] for v in [1..n]; rhs[0] is unused. Removed variables have an
  /// empty righthand side and live[v] == false.
  std::vector<std::vector<Atom>> rhs;
  std::vector<char> live;
  VarId start = 0;
  Level level = 0;

  // Derived by refresh(); indexed by variable.
  std::vector<SymbolId> lml, rml;
  std::vector<BoundaryRun> left_run, right_run;
  std::vector<Length> letter_len;
  std::vector<char> unary;

  std::uint32_t variable_count() const { return static_cast<std::uint32_t>(rhs.size() - 1); }
  std::uint64_t size() const;          // total atoms over live righthand sides
  std::uint32_t live_count() const;
  bool empty() const { return start == 0; }

  /// Recomputes the derived per-variable fields bottom-up.
  void refresh();

  /// Shape violations (empty when the grammar is well formed).
  std::vector<std::string> shape_violations() const;

  /// Letters occurring in T_h, sorted.
  std::vector<SymbolId> alphabet() const;

  /// val(v) as letters; throws OutOfRange beyond max_len.
  std::vector<SymbolId> expand_letters(VarId v, Length max_len = Length{1} << 26) const;

  /// charLen per variable given the letters' expansion lengths.
  std::vector<Length> char_lengths(const RlslpBuilder& letters) const;
};

/// G_0: terminal variables replaced by Terminal letters (ascending code
/// order); unreachable variables are dropped. If the start variable is a
/// terminal the result is empty() and `out` holds its single letter.
ShapedCfg init_cfg(const Slp& slp, RlslpBuilder& out);

enum class PairWeighting { ByVocc, Unit };

/// Adjacency list of T_h (ByVocc) or of the righthand-side strings (Unit),
/// counting explicit and boundary-crossing pairs. Requires refresh().
AdjacencyList cfg_adjacency_list(const ShapedCfg& cfg, PairWeighting weighting, const VoccMap& vocc);

/// Pops boundary letters that could form a left·right pair across a
/// variable boundary out of the variables and into their occurrence sites.
/// Returns a refreshed grammar.
ShapedCfg uncross_pairs(ShapedCfg cfg, const Partition& p);

/// Compresses every explicit left·right pair (requires uncross_pairs).
ShapedCfg cfg_pcomp(ShapedCfg cfg, const Partition& p, RlslpBuilder& out,
                    std::vector<PairRule>* rules = nullptr);

/// Pops boundary blocks whose letter has a block of length >= 2 in T_h
/// (Σ_B) out of the variables; unary variables of such letters vanish.
ShapedCfg uncross_blocks(ShapedCfg cfg, std::vector<SymbolId>* block_letters = nullptr);

struct CfgBlockStats {
  std::vector<BlockRule> rules;
  std::uint64_t short_blocks = 0;  // explicit occurrences, radix-sorted
  std::uint64_t long_blocks = 0;   // explicit occurrences, comparison-sorted
};

/// Replaces every explicit block (count >= 2) by a fresh letter. Blocks with
/// exponent <= 2|G| are radix-sorted, longer ones comparison-sorted; ids
/// follow the global (letter, exponent) rank.
ShapedCfg cfg_bcomp(ShapedCfg cfg, RlslpBuilder& out, CfgBlockStats* stats = nullptr);

enum class Schedule { SimTtoG, GtoG };

/// Builds the RLSLP of val(start) from the SLP. SimTtoG reproduces the text
/// build exactly; GtoG alternates string- and grammar-shrinking partitions.
Rlslp build_from_slp(const Slp& slp, Schedule schedule, BuildLog* log = nullptr);

}  // namespace rlce
