#include "rlce/recompress.hpp"

#include <algorithm>
#include <ostream>

#include "radix_sort.hpp"
#include "recompress_detail.hpp"

namespace rlce {

using detail::counting_sort;
using detail::LetterRanks;

bool Partition::is_left(SymbolId c) const { return std::binary_search(left.begin(), left.end(), c); }
bool Partition::is_right(SymbolId c) const { return std::binary_search(right.begin(), right.end(), c); }

SymbolId LevelContext::block_id(SymbolId letter, Length exponent) const {
  auto it = std::lower_bound(block_rules.begin(), block_rules.end(), std::pair{letter, exponent},
                             [](const BlockRule& r, const std::pair<SymbolId, Length>& key) {
                               return std::pair{r.letter, r.exponent} < key;
                             });
  return (it != block_rules.end() && it->letter == letter && it->exponent == exponent) ? it->id : 0;
}

SymbolId LevelContext::pair_id(SymbolId left, SymbolId right) const {
  auto it = std::lower_bound(pair_rules.begin(), pair_rules.end(), std::pair{left, right},
                             [](const PairRule& r, const std::pair<SymbolId, SymbolId>& key) {
                               return std::pair{r.left, r.right} < key;
                             });
  return (it != pair_rules.end() && it->left == left && it->right == right) ? it->id : 0;
}

namespace detail {

std::vector<SymbolId> sorted_alphabet(std::span<const SymbolId> letters) {
  std::vector<SymbolId> a(letters.begin(), letters.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

namespace {

// Surviving old letters in rank order, then the fresh ones (already in id
// order, and larger than every old letter).
std::vector<SymbolId> next_alphabet(const LetterRanks& ranks, const std::vector<char>& survives,
                                    SymbolId first_fresh, SymbolId end_fresh) {
  std::vector<SymbolId> a;
  for (std::size_t r = 0; r < ranks.size(); ++r)
    if (survives[r]) a.push_back(ranks.alphabet()[r]);
  for (SymbolId id = first_fresh; id < end_fresh; ++id) a.push_back(id);
  return a;
}

}  // namespace

LevelOutcome block_level(const std::vector<SymbolId>& w, const LetterRanks& ranks, RlslpBuilder& out, Level h) {
  struct Block {
    std::uint32_t rank;
    Length exponent;
    std::size_t index;  // into `blocks`
  };
  const std::size_t n = w.size();
  std::vector<std::pair<std::size_t, Length>> blocks;  // (start, length) of blocks >= 2
  std::vector<Block> recs;
  std::vector<char> survives(ranks.size(), 0);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && w[j] == w[i]) ++j;
    if (j - i >= 2) {
      recs.push_back({ranks(w[i]), j - i, blocks.size()});
      blocks.emplace_back(i, j - i);
    } else {
      survives[ranks(w[i])] = 1;
    }
    i = j;
  }
  counting_sort(recs, n + 1, [](const Block& b) { return b.exponent; });
  counting_sort(recs, ranks.size(), [](const Block& b) { return b.rank; });

  LevelOutcome res;
  const SymbolId first_fresh = out.next_id();
  std::vector<SymbolId> id_of(blocks.size());
  for (std::size_t k = 0; k < recs.size(); ++k) {
    const Block& b = recs[k];
    const SymbolId c = ranks.alphabet()[b.rank];
    if (k == 0 || recs[k - 1].rank != b.rank || recs[k - 1].exponent != b.exponent) {
      const SymbolId id = out.add_run(c, b.exponent, h + 1);
      res.block_rules.push_back({c, b.exponent, id});
      if (res.block_letters.empty() || res.block_letters.back() != c) res.block_letters.push_back(c);
    }
    id_of[b.index] = res.block_rules.back().id;
  }
  res.replaced = blocks.size();

  res.output.reserve(n);
  std::size_t next_block = 0;
  for (std::size_t i = 0; i < n;) {
    if (next_block < blocks.size() && blocks[next_block].first == i) {
      res.output.push_back(id_of[next_block]);
      i += blocks[next_block].second;
      ++next_block;
    } else {
      res.output.push_back(w[i++]);
    }
  }
  res.alphabet = next_alphabet(ranks, survives, first_fresh, out.next_id());
  return res;
}

AdjacencyList adjacency(const std::vector<SymbolId>& w, const LetterRanks& ranks) {
  struct Occ {
    std::uint32_t first, second;  // ranks, first > second
    std::uint8_t dir;
  };
  std::vector<Occ> occ;
  occ.reserve(w.size());
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const SymbolId x = w[i], y = w[i + 1];
    RLCE_ENSURE(x != y, "adjacency list requested on a string with a block");
    if (x > y)
      occ.push_back({ranks(x), ranks(y), 0});
    else
      occ.push_back({ranks(y), ranks(x), 1});
  }
  counting_sort(occ, 2, [](const Occ& o) { return o.dir; });
  counting_sort(occ, ranks.size(), [](const Occ& o) { return o.second; });
  counting_sort(occ, ranks.size(), [](const Occ& o) { return o.first; });

  AdjacencyList adj;
  for (const Occ& o : occ) {
    const SymbolId a = ranks.alphabet()[o.first], b = ranks.alphabet()[o.second];
    if (!adj.empty() && adj.back().first == a && adj.back().second == b && adj.back().dir == o.dir)
      ++adj.back().weight;
    else
      adj.push_back({a, b, o.dir, 1});
  }
  return adj;
}

std::vector<char> partition_sides(const AdjacencyList& adj, const LetterRanks& ranks) {
  // side[r]: 1 = left, 0 = right.
  std::vector<char> side(ranks.size(), 1);
  std::size_t e = 0;
  for (std::size_t r = 0; r < ranks.size(); ++r) {
    const SymbolId c = ranks.alphabet()[r];
    std::uint64_t to_left = 0, to_right = 0;
    for (; e < adj.size() && adj[e].first == c; ++e) {
      (side[ranks(adj[e].second)] ? to_left : to_right) += adj[e].weight;
    }
    side[r] = to_right >= to_left ? 1 : 0;
  }
  RLCE_ENSURE(e == adj.size(), "adjacency list is not sorted by its first letter");

  std::uint64_t lr = 0, rl = 0;
  for (const AdjacencyEntry& a : adj) {
    const bool first_left = side[ranks(a.first)], second_left = side[ranks(a.second)];
    const bool left_then_right = a.dir == 0 ? (first_left && !second_left) : (second_left && !first_left);
    const bool right_then_left = a.dir == 0 ? (!first_left && second_left) : (!second_left && first_left);
    if (left_then_right) lr += a.weight;
    if (right_then_left) rl += a.weight;
  }
  if (lr < rl)
    for (char& s : side) s = !s;
  return side;
}

Partition to_partition(const std::vector<char>& side, const LetterRanks& ranks) {
  Partition p;
  for (std::size_t r = 0; r < ranks.size(); ++r) (side[r] ? p.left : p.right).push_back(ranks.alphabet()[r]);
  return p;
}

LevelOutcome pair_level(const std::vector<SymbolId>& w, const std::vector<char>& side, const LetterRanks& ranks,
                        RlslpBuilder& out, Level h) {
  struct Occ {
    std::uint32_t left, right;  // ranks
    std::size_t pos;
  };
  const std::size_t n = w.size();
  std::vector<Occ> occ;
  std::vector<char> survives(ranks.size(), 0);
  for (std::size_t i = 0; i < n;) {
    if (i + 1 < n) RLCE_ENSURE(w[i] != w[i + 1], "pair compression requested on a string with a block");
    const auto a = ranks(w[i]);
    if (i + 1 < n && side[a] && !side[ranks(w[i + 1])]) {
      occ.push_back({a, ranks(w[i + 1]), i});
      i += 2;
    } else {
      survives[a] = 1;
      ++i;
    }
  }
  // Occurrences are collected in position order; remember where each one
  // lands before sorting by (left, right).
  std::vector<std::size_t> order(occ.size());
  for (std::size_t k = 0; k < occ.size(); ++k) order[k] = k;
  counting_sort(order, ranks.size(), [&](std::size_t k) { return occ[k].right; });
  counting_sort(order, ranks.size(), [&](std::size_t k) { return occ[k].left; });

  LevelOutcome res;
  const SymbolId first_fresh = out.next_id();
  std::vector<SymbolId> id_of(occ.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Occ& o = occ[order[k]];
    if (k == 0 || occ[order[k - 1]].left != o.left || occ[order[k - 1]].right != o.right) {
      const SymbolId l = ranks.alphabet()[o.left], r = ranks.alphabet()[o.right];
      res.pair_rules.push_back({l, r, out.add_pair(l, r, h + 1)});
    }
    id_of[order[k]] = res.pair_rules.back().id;
  }
  res.replaced = occ.size();

  res.output.reserve(n - occ.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < n;) {
    if (next < occ.size() && occ[next].pos == i) {
      res.output.push_back(id_of[next++]);
      i += 2;
    } else {
      res.output.push_back(w[i++]);
    }
  }
  res.alphabet = next_alphabet(ranks, survives, first_fresh, out.next_id());
  return res;
}

std::vector<char> sides_from(const Partition& p, const LetterRanks& ranks) {
  std::vector<char> side(ranks.size());
  for (std::size_t r = 0; r < ranks.size(); ++r) {
    const SymbolId c = ranks.alphabet()[r];
    if (p.is_left(c))
      side[r] = 1;
    else if (p.is_right(c))
      side[r] = 0;
    else
      fail(ErrorCode::InvalidInput, "letter " + std::to_string(c) + " is on neither side of the partition");
  }
  return side;
}

}  // namespace detail

// ---------------------------------------------------------------------------

LetterString letterize(std::span<const Code> text, RlslpBuilder& out) {
  if (text.empty()) fail(ErrorCode::InvalidInput, "cannot build a grammar for the empty text");
  std::vector<Code> codes(text.begin(), text.end());
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  const SymbolId base = out.next_id();
  for (Code c : codes) out.add_terminal(c, 0);

  LetterString w;
  w.letters.resize(text.size());
  if (codes.back() < (Code{1} << 20)) {
    std::vector<SymbolId> letter_of(codes.back() + 1, 0);
    for (std::size_t k = 0; k < codes.size(); ++k) letter_of[codes[k]] = base + static_cast<SymbolId>(k);
    for (std::size_t i = 0; i < text.size(); ++i) w.letters[i] = letter_of[text[i]];
  } else {
    for (std::size_t i = 0; i < text.size(); ++i)
      w.letters[i] =
          base + static_cast<SymbolId>(std::lower_bound(codes.begin(), codes.end(), text[i]) - codes.begin());
  }
  return w;
}

LetterString letterize(std::string_view text, RlslpBuilder& out) {
  std::vector<Code> codes(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) codes[i] = static_cast<unsigned char>(text[i]);
  return letterize(std::span<const Code>(codes), out);
}

BlockCompression bcomp(const LetterString& w, RlslpBuilder& out) {
  LetterRanks ranks;
  ranks.assign(detail::sorted_alphabet(w.letters));
  auto res = detail::block_level(w.letters, ranks, out, w.level);
  return {{std::move(res.output), w.level + 1}, std::move(res.block_rules), std::move(res.block_letters)};
}

AdjacencyList adjacency_list(const LetterString& w) {
  LetterRanks ranks;
  ranks.assign(detail::sorted_alphabet(w.letters));
  return detail::adjacency(w.letters, ranks);
}

Partition choose_partition(const AdjacencyList& adj, std::span<const SymbolId> alphabet) {
  LetterRanks ranks;
  ranks.assign(detail::sorted_alphabet(alphabet));
  for (const AdjacencyEntry& a : adj) {
    if (!std::binary_search(ranks.alphabet().begin(), ranks.alphabet().end(), a.first) ||
        !std::binary_search(ranks.alphabet().begin(), ranks.alphabet().end(), a.second))
      fail(ErrorCode::InvalidInput, "adjacency list mentions a letter outside the alphabet");
  }
  return detail::to_partition(detail::partition_sides(adj, ranks), ranks);
}

PairCompression pcomp(const LetterString& w, const Partition& p, RlslpBuilder& out) {
  LetterRanks ranks;
  ranks.assign(detail::sorted_alphabet(w.letters));
  auto res = detail::pair_level(w.letters, detail::sides_from(p, ranks), ranks, out, w.level);
  return {{std::move(res.output), w.level + 1}, std::move(res.pair_rules), res.replaced};
}

SymbolId run_text_levels(LetterString w, RlslpBuilder& out, BuildLog* log) {
  if (w.letters.empty()) fail(ErrorCode::InvalidInput, "empty letter string");
  LetterRanks ranks;
  ranks.assign(detail::sorted_alphabet(w.letters));
  Level h = w.level;
  std::vector<SymbolId> cur = std::move(w.letters);
  while (cur.size() > 1) {
    LevelStat stat;
    stat.h = h;
    stat.length_before = cur.size();
    LevelContext ctx;
    ctx.h = h;
    detail::LevelOutcome res;
    if (h % 2 == 0) {
      stat.kind = ctx.kind = LevelKind::Block;
      res = detail::block_level(cur, ranks, out, h);
      for (std::size_t i = 0; i + 1 < res.output.size(); ++i)
        RLCE_ENSURE(res.output[i] != res.output[i + 1], "block compression left a block behind");
    } else {
      stat.kind = ctx.kind = LevelKind::Pair;
      const auto adj = detail::adjacency(cur, ranks);
      const auto side = detail::partition_sides(adj, ranks);
      if (log && log->record_contexts) ctx.partition = detail::to_partition(side, ranks);
      res = detail::pair_level(cur, side, ranks, out, h);
      RLCE_ENSURE(4 * res.replaced >= cur.size() - 1, "pair compression replaced fewer than (|w|-1)/4 pairs");
    }
    stat.replaced = res.replaced;
    stat.length_after = res.output.size();
    if (log) {
      log->stats.push_back(stat);
      if (log->record_contexts) {
        ctx.block_letters = std::move(res.block_letters);
        ctx.block_rules = std::move(res.block_rules);
        ctx.pair_rules = std::move(res.pair_rules);
        log->contexts.push_back(std::move(ctx));
      }
    }
    cur = std::move(res.output);
    ranks.assign(res.alphabet);
    ++h;
  }
  if (log) log->final_level = h;
  return cur.front();
}

Rlslp ttog(std::span<const Code> text, BuildLog* log) {
  RlslpBuilder b;
  LetterString w = letterize(text, b);
  const SymbolId root = run_text_levels(std::move(w), b, log);
  return std::move(b).finish(root);
}

Rlslp ttog(std::string_view text, BuildLog* log) {
  RlslpBuilder b;
  LetterString w = letterize(text, b);
  const SymbolId root = run_text_levels(std::move(w), b, log);
  return std::move(b).finish(root);
}

void write_level_log(std::ostream& os, std::span<const LevelContext> contexts) {
  for (const LevelContext& c : contexts) {
    if (c.kind == LevelKind::Block) {
      os << "B " << c.h << ':';
      for (SymbolId x : c.block_letters) os << ' ' << x;
    } else {
      os << "P " << c.h << ": L=";
      for (SymbolId x : c.partition.left) os << ' ' << x;
      os << " | R=";
      for (SymbolId x : c.partition.right) os << ' ' << x;
    }
    os << '\n';
  }
}

}  // namespace rlce
