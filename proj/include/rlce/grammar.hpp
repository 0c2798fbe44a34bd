#pragma once

// Run-length straight-line programs (RLSLPs): the data model shared by the
// builders and the query engine, plus random access through derivation-tree
// cursors.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rlce/error.hpp"

namespace rlce {

/// Symbol ids are 1-based and dense in [1..g].
using SymbolId = std::uint32_t;
/// Text positions are 1-based; lengths and exponents share the type.
using Length = std::uint64_t;
using Position = std::uint64_t;
/// Character code of a terminal. Byte texts use [0..255].
using Code = std::uint32_t;
using Level = std::uint32_t;

enum class RuleKind : std::uint8_t { Terminal, Pair, Run };

struct Rule {
  RuleKind kind = RuleKind::Terminal;
  std::uint32_t first = 0;   // code | left | base
  std::uint64_t second = 0;  // unused | right | exponent

  static Rule terminal(Code code) { return {RuleKind::Terminal, code, 0}; }
  static Rule pair(SymbolId left, SymbolId right) { return {RuleKind::Pair, left, right}; }
  static Rule run(SymbolId base, Length exponent) { return {RuleKind::Run, base, exponent}; }

  Code code() const { return first; }
  SymbolId left() const { return first; }
  SymbolId right() const { return static_cast<SymbolId>(second); }
  SymbolId base() const { return first; }
  Length exponent() const { return second; }

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Immutable after construction; safe to share between concurrent readers.
class Rlslp {
 public:
  Rlslp() = default;

  /// Stores the fields verbatim without checking them. Use validate() to
  /// inspect the result; from_rules() for the checked path.
  Rlslp(std::vector<Rule> rules, SymbolId start, Length text_len, std::vector<Length> exp_len,
        std::vector<Level> levels);

  /// Computes expansion lengths from the rules. Throws InvalidInput on
  /// forward references and Overflow when a length exceeds 64 bits.
  /// Missing levels are filled with the derivation height of each symbol.
  static Rlslp from_rules(std::vector<Rule> rules, SymbolId start, std::vector<Level> levels = {});

  std::size_t size() const { return rules_.size(); }
  SymbolId start() const { return start_; }
  Length text_length() const { return text_len_; }
  bool contains(SymbolId s) const { return s >= 1 && s <= rules_.size(); }

  const Rule& rule(SymbolId s) const { return rules_[s - 1]; }
  Length length(SymbolId s) const { return exp_len_[s - 1]; }
  Level level(SymbolId s) const { return levels_[s - 1]; }

  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<Length>& lengths() const { return exp_len_; }
  const std::vector<Level>& levels() const { return levels_; }

  friend bool operator==(const Rlslp&, const Rlslp&) = default;

 private:
  std::vector<Rule> rules_;
  SymbolId start_ = 0;
  Length text_len_ = 0;
  std::vector<Length> exp_len_;
  std::vector<Level> levels_;
};

/// Incremental construction used by the recompression builders; also the
/// fresh-letter allocator (ids are handed out in call order).
class RlslpBuilder {
 public:
  SymbolId add_terminal(Code code, Level level = 0);
  SymbolId add_pair(SymbolId left, SymbolId right, Level level);
  SymbolId add_run(SymbolId base, Length exponent, Level level);

  SymbolId next_id() const { return static_cast<SymbolId>(rules_.size() + 1); }
  std::size_t size() const { return rules_.size(); }
  Length length(SymbolId s) const { return exp_len_[s - 1]; }
  const Rule& rule(SymbolId s) const { return rules_[s - 1]; }

  Rlslp finish(SymbolId start) &&;

 private:
  SymbolId push(Rule r, Length len, Level level);

  std::vector<Rule> rules_;
  std::vector<Length> exp_len_;
  std::vector<Level> levels_;
};

// ---------------------------------------------------------------------------
// Validation and expansion

struct Violation {
  enum class Kind { DanglingReference, NonIncreasingId, WrongLength, SmallExponent, StartLength, BadStart };
  Kind kind;
  SymbolId symbol;  // 0 when the violation is not tied to one symbol
  std::string message;
};

std::vector<Violation> validate(const Rlslp& g);

/// Derivation-tree height with terminal rules as level-0 leaves.
std::size_t height(const Rlslp& g);

/// val(s) as codes. Throws OutOfRange when expLen(s) exceeds max_len.
std::vector<Code> expand_codes(const Rlslp& g, SymbolId s, Length max_len = Length{1} << 26);
/// val(s) as bytes; every code reached must fit in a byte.
std::string expand(const Rlslp& g, SymbolId s, Length max_len = Length{1} << 26);

/// T[i..i+len-1] in O(height + len) node visits.
std::vector<Code> extract_codes(const Rlslp& g, Position i, Length len);
std::string extract(const Rlslp& g, Position i, Length len);

// ---------------------------------------------------------------------------
// Cursors

struct Frame {
  SymbolId symbol;
  /// Pair: 0 = left child, 1 = right child. Run: 1-based copy index.
  /// Terminal: unused (0).
  Length child;
  /// Absolute start of this node's expansion.
  Position start;

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// One node (or run suffix) whose expansion begins at the cursor position.
struct AlignedSymbol {
  SymbolId symbol;       // the node label, or the run base for a remainder
  Length count;          // 1 for a plain node, d-k+1 for a run remainder
  bool run_remainder;
  std::size_t depth;     // frame index (0 = root)

  friend bool operator==(const AlignedSymbol&, const AlignedSymbol&) = default;
};

/// Root-to-leaf path to one text position. Private per query; not for
/// sharing across threads. Position N+1 is the end sentinel (empty path).
class Cursor {
 public:
  static Cursor seek(const Rlslp& g, Position pos);

  /// Moves forward by delta characters; amortized O(height).
  void advance(Length delta);

  Position position() const { return pos_; }
  bool at_end() const { return frames_.empty(); }
  const std::vector<Frame>& frames() const { return frames_; }

  /// Aligned entries ordered from the deepest frame upward; lengths are
  /// non-decreasing along the result. Appends into out (cleared first).
  void aligned_symbols(std::vector<AlignedSymbol>& out) const;
  std::vector<AlignedSymbol> aligned_symbols() const;

  /// Terminal code at the current position.
  Code current_code() const;

  friend bool operator==(const Cursor& a, const Cursor& b) {
    return a.g_ == b.g_ && a.pos_ == b.pos_ && a.frames_ == b.frames_;
  }

 private:
  explicit Cursor(const Rlslp& g) : g_(&g) {}
  void descend();

  const Rlslp* g_;
  Position pos_ = 0;
  std::vector<Frame> frames_;
};

// ---------------------------------------------------------------------------
// Grammar file format
//
//   RLSLP <g> <start> <N>
//   T <code> | P <left> <right> | R <base> <exponent>     (one line per symbol)
//   L <level_1> ... <level_g>                             (optional)

void write_rlslp(std::ostream& os, const Rlslp& g);
std::string to_text(const Rlslp& g);
/// Rejects syntax errors and operands that do not precede their rule, naming
/// the offending line. Semantic problems (exponent < 2, N mismatch) are left
/// for validate().
Rlslp read_rlslp(std::istream& is);
Rlslp parse_rlslp(const std::string& text);

}  // namespace rlce
