#pragma once

#include <span>
#include <string_view>

#include "rlce/grammar.hpp"

namespace rlce {

struct LceStats {
  std::uint64_t steps = 0;
  std::uint64_t max_stack_depth = 0;
};

/// Length of the longest common prefix of T[i..N] and T[j..N], computed by
/// walking two cursors and matching equal symbols (or equal run bases) that
/// start at both positions. Never touches the text itself.
Length lce(const Rlslp& g, Position i, Position j, LceStats* stats = nullptr);

/// Character-by-character reference scan.
Length naive_lce(std::span<const Code> text, Position i, Position j);
Length naive_lce(std::string_view text, Position i, Position j);

}  // namespace rlce
