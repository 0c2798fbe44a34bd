#include <algorithm>

#include "rlce/recompress.hpp"

namespace rlce {

namespace {

using Block = std::pair<SymbolId, Length>;

[[noreturn]] void unknown(SymbolId c, Level h) {
  fail(ErrorCode::InvalidInput, "letter " + std::to_string(c) + " is unknown to level " + std::to_string(h));
}

void append_blocks(std::vector<Block>& out, std::span<const SymbolId> letters) {
  for (SymbolId c : letters) {
    if (!out.empty() && out.back().first == c)
      ++out.back().second;
    else
      out.emplace_back(c, 1);
  }
}

}  // namespace

std::vector<Block> pseq(std::span<const SymbolId> w0, std::span<const LevelContext> contexts) {
  std::vector<SymbolId> w(w0.begin(), w0.end());
  std::vector<Block> left_pops, right_pops;  // right_pops in ascending level

  for (const LevelContext& ctx : contexts) {
    if (w.empty()) break;
    std::vector<SymbolId> next;
    if (ctx.kind == LevelKind::Block) {
      auto in_sigma_b = [&](SymbolId c) {
        return std::binary_search(ctx.block_letters.begin(), ctx.block_letters.end(), c);
      };
      std::size_t lo = 0, hi = w.size();
      std::size_t k = 1;
      while (k < hi && w[k] == w[0]) ++k;
      if (in_sigma_b(w[0])) {
        left_pops.emplace_back(w[0], k);
        lo = k;
      }
      if (lo < hi) {
        std::size_t m = hi - 1;
        while (m > lo && w[m - 1] == w[hi - 1]) --m;
        if (in_sigma_b(w[hi - 1])) {
          right_pops.emplace_back(w[hi - 1], hi - m);
          hi = m;
        }
      }
      for (std::size_t i = lo; i < hi;) {
        std::size_t j = i + 1;
        while (j < hi && w[j] == w[i]) ++j;
        if (j - i >= 2) {
          const SymbolId id = ctx.block_id(w[i], j - i);
          if (id == 0) unknown(w[i], ctx.h);
          next.push_back(id);
        } else {
          next.push_back(w[i]);
        }
        i = j;
      }
    } else {
      const Partition& p = ctx.partition;
      auto side = [&](SymbolId c) {
        if (p.is_left(c)) return true;
        if (p.is_right(c)) return false;
        unknown(c, ctx.h);
      };
      std::size_t lo = 0, hi = w.size();
      if (!side(w[lo])) left_pops.emplace_back(w[lo++], 1);
      if (lo < hi && side(w[hi - 1])) right_pops.emplace_back(w[--hi], 1);
      for (std::size_t i = lo; i < hi;) {
        if (i + 1 < hi && side(w[i]) && !side(w[i + 1])) {
          const SymbolId id = ctx.pair_id(w[i], w[i + 1]);
          if (id == 0) unknown(w[i], ctx.h);
          next.push_back(id);
          i += 2;
        } else {
          next.push_back(w[i++]);
        }
      }
    }
    w = std::move(next);
  }

  std::vector<Block> out = std::move(left_pops);
  append_blocks(out, w);
  out.insert(out.end(), right_pops.rbegin(), right_pops.rend());
  return out;
}

}  // namespace rlce
