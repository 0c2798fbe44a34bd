#include "rlce/lce.hpp"

#include <algorithm>

namespace rlce {

Length lce(const Rlslp& g, Position i, Position j, LceStats* stats) {
  const Length n = g.text_length();
  if (i < 1 || i > n || j < 1 || j > n)
    fail(ErrorCode::OutOfRange, "lce(" + std::to_string(i) + ", " + std::to_string(j) + ") outside [1.." +
                                    std::to_string(n) + "]");
  Cursor a = Cursor::seek(g, i);
  Cursor b = Cursor::seek(g, j);
  LceStats local;
  local.max_stack_depth = std::max(a.frames().size(), b.frames().size());
  std::vector<AlignedSymbol> la, lb;
  Length matched = 0;
  while (!a.at_end() && !b.at_end()) {
    a.aligned_symbols(la);
    b.aligned_symbols(lb);
    // Largest advance over equal labels (run remainders compare by base).
    // Both lists start at the terminal, so equal first characters always
    // yield at least 1; entries are scanned deepest first and only a strictly
    // longer match replaces the current one.
    Length best = 0;
    for (const AlignedSymbol& x : la) {
      const Length unit = g.length(x.symbol);
      if (x.count * unit <= best) continue;
      for (const AlignedSymbol& y : lb) {
        if (y.symbol != x.symbol) continue;
        const Length adv = std::min(x.count, y.count) * unit;
        if (adv > best) best = adv;
      }
    }
    if (best == 0) break;
    a.advance(best);
    b.advance(best);
    matched += best;
    ++local.steps;
    local.max_stack_depth = std::max<std::uint64_t>(local.max_stack_depth, std::max(a.frames().size(), b.frames().size()));
  }
  if (stats) *stats = local;
  return matched;
}

Length naive_lce(std::span<const Code> text, Position i, Position j) {
  const Length n = text.size();
  if (i < 1 || i > n || j < 1 || j > n) fail(ErrorCode::OutOfRange, "naive_lce position outside the text");
  Length k = 0;
  while (i + k <= n && j + k <= n && text[i + k - 1] == text[j + k - 1]) ++k;
  return k;
}

Length naive_lce(std::string_view text, Position i, Position j) {
  const Length n = text.size();
  if (i < 1 || i > n || j < 1 || j > n) fail(ErrorCode::OutOfRange, "naive_lce position outside the text");
  Length k = 0;
  while (i + k <= n && j + k <= n && text[i + k - 1] == text[j + k - 1]) ++k;
  return k;
}

}  // namespace rlce
