#include <algorithm>

#include "radix_sort.hpp"
#include "recompress_detail.hpp"
#include "rlce/slp.hpp"

namespace rlce {

using detail::counting_sort;
using detail::LetterRanks;

namespace {

SymbolId left_letter(const ShapedCfg& g, const Atom& a) { return a.is_var ? g.lml[a.id] : a.id; }
SymbolId right_letter(const ShapedCfg& g, const Atom& a) { return a.is_var ? g.rml[a.id] : a.id; }

// Appends a, folding it into a preceding atom of the same letter.
void push_merge(std::vector<Atom>& out, Atom a) {
  if (!a.is_var && !out.empty() && !out.back().is_var && out.back().id == a.id)
    out.back().count = checked_add(out.back().count, a.count);
  else
    out.push_back(a);
}

// Side of every letter under a partition, indexed by letter id.
class SideTable {
 public:
  explicit SideTable(const Partition& p) {
    SymbolId top = 0;
    if (!p.left.empty()) top = std::max(top, p.left.back());
    if (!p.right.empty()) top = std::max(top, p.right.back());
    side_.assign(static_cast<std::size_t>(top) + 1, kUnknown);
    for (SymbolId c : p.left) side_[c] = kLeft;
    for (SymbolId c : p.right) {
      if (side_[c] == kLeft)
        fail(ErrorCode::InvalidInput, "letter " + std::to_string(c) + " is on both sides of the partition");
      side_[c] = kRight;
    }
  }
  bool left(SymbolId c) const { return get(c) == kLeft; }
  bool right(SymbolId c) const { return get(c) == kRight; }

 private:
  static constexpr signed char kUnknown = -1, kRight = 0, kLeft = 1;
  signed char get(SymbolId c) const {
    if (c >= side_.size() || side_[c] == kUnknown)
      fail(ErrorCode::InvalidInput, "letter " + std::to_string(c) + " is on neither side of the partition");
    return side_[c];
  }
  std::vector<signed char> side_;
};

// Cheap staleness probe: the cached boundary letters must agree with the
// righthand sides.
void check_fresh(const ShapedCfg& g) {
  const std::size_t n = g.rhs.size();
  RLCE_ENSURE(g.live.size() == n && g.lml.size() == n && g.rml.size() == n && g.letter_len.size() == n &&
                  g.left_run.size() == n && g.right_run.size() == n && g.unary.size() == n,
              "derived fields were not computed");
  for (VarId v = 1; v < n; ++v) {
    if (!g.live[v]) continue;
    RLCE_ENSURE(!g.rhs[v].empty(), "live variable with an empty righthand side");
    RLCE_ENSURE(g.lml[v] == left_letter(g, g.rhs[v].front()) && g.rml[v] == right_letter(g, g.rhs[v].back()),
                "stale lml/rml cache");
  }
}

LetterRanks ranks_of(const ShapedCfg& g) {
  LetterRanks r;
  r.assign(g.alphabet());
  return r;
}

}  // namespace

std::uint64_t ShapedCfg::size() const {
  std::uint64_t s = 0;
  for (VarId v = 1; v < rhs.size(); ++v)
    if (live[v]) s += rhs[v].size();
  return s;
}

std::uint32_t ShapedCfg::live_count() const {
  return static_cast<std::uint32_t>(std::count(live.begin() + (live.empty() ? 0 : 1), live.end(), 1));
}

void ShapedCfg::refresh() {
  const std::size_t n = rhs.size();
  live.resize(n, 0);
  lml.assign(n, 0);
  rml.assign(n, 0);
  left_run.assign(n, {});
  right_run.assign(n, {});
  letter_len.assign(n, 0);
  unary.assign(n, 0);
  for (VarId v = 1; v < n; ++v) {
    if (!live[v]) continue;
    const std::vector<Atom>& r = rhs[v];
    RLCE_ENSURE(!r.empty(), "live variable with an empty righthand side");
    Length len = 0;
    for (const Atom& a : r) {
      if (a.is_var) RLCE_ENSURE(a.id < v && live[a.id], "righthand side refers to a removed or later variable");
      len = checked_add(len, a.is_var ? letter_len[a.id] : a.count);
    }
    letter_len[v] = len;
    lml[v] = left_letter(*this, r.front());
    rml[v] = right_letter(*this, r.back());

    auto run = [&](auto first, auto last, SymbolId c, const std::vector<BoundaryRun>& runs) {
      Length e = 0;
      for (auto it = first; it != last; ++it) {
        if (!it->is_var) {
          if (it->id != c) break;
          e += it->count;
        } else {
          if (runs[it->id].letter != c) break;
          e += runs[it->id].exponent;
          if (!unary[it->id]) break;
        }
      }
      return BoundaryRun{c, e};
    };
    left_run[v] = run(r.begin(), r.end(), lml[v], left_run);
    right_run[v] = run(r.rbegin(), r.rend(), rml[v], right_run);
    unary[v] = left_run[v].exponent == len;
  }
}

std::vector<std::string> ShapedCfg::shape_violations() const {
  std::vector<std::string> out;
  if (start == 0) return out;
  auto name = [](VarId v) { return "variable " + std::to_string(v) + ": "; };
  if (start >= rhs.size() || !live[start]) out.push_back("start variable is not live");
  for (VarId v = 1; v < rhs.size(); ++v) {
    const auto& r = rhs[v];
    if (!live[v]) {
      if (!r.empty()) out.push_back(name(v) + "removed but keeps a righthand side");
      continue;
    }
    if (r.empty()) out.push_back(name(v) + "empty righthand side");
    std::size_t vars = 0;
    for (std::size_t k = 0; k < r.size(); ++k) {
      const Atom& a = r[k];
      if (a.is_var) {
        ++vars;
        if (a.id == 0 || a.id >= v || !live[a.id]) out.push_back(name(v) + "refers to a removed or later variable");
        if (v != start && k != 0 && k + 1 != r.size()) out.push_back(name(v) + "variable occurrence in the middle");
      } else {
        if (a.id == 0 || a.count == 0) out.push_back(name(v) + "malformed letter atom");
        if (k > 0 && !r[k - 1].is_var && r[k - 1].id == a.id) out.push_back(name(v) + "unmerged equal letters");
      }
    }
    if (vars > 2) out.push_back(name(v) + "more than two variable occurrences");
  }
  return out;
}

std::vector<SymbolId> ShapedCfg::alphabet() const {
  std::vector<SymbolId> a;
  for (VarId v = 1; v < rhs.size(); ++v)
    if (live[v])
      for (const Atom& x : rhs[v])
        if (!x.is_var) a.push_back(x.id);
  return detail::sorted_alphabet(a);
}

std::vector<SymbolId> ShapedCfg::expand_letters(VarId v, Length max_len) const {
  RLCE_ENSURE(v >= 1 && v < rhs.size() && live[v], "expanding a removed variable");
  if (letter_len[v] > max_len) fail(ErrorCode::OutOfRange, "letter expansion exceeds budget");
  std::vector<SymbolId> out;
  out.reserve(letter_len[v]);
  std::vector<std::pair<VarId, std::size_t>> stack{{v, 0}};
  while (!stack.empty()) {
    auto& [x, k] = stack.back();
    if (k == rhs[x].size()) {
      stack.pop_back();
      continue;
    }
    const Atom a = rhs[x][k++];
    if (a.is_var)
      stack.emplace_back(a.id, 0);
    else
      out.insert(out.end(), a.count, a.id);
  }
  return out;
}

std::vector<Length> ShapedCfg::char_lengths(const RlslpBuilder& letters) const {
  std::vector<Length> len(rhs.size(), 0);
  for (VarId v = 1; v < rhs.size(); ++v) {
    if (!live[v]) continue;
    for (const Atom& a : rhs[v])
      len[v] = checked_add(len[v], a.is_var ? len[a.id] : checked_mul(a.count, letters.length(a.id)));
  }
  return len;
}

ShapedCfg init_cfg(const Slp& slp, RlslpBuilder& out) {
  const VoccMap vocc = compute_vocc(slp);
  std::vector<Code> codes;
  for (VarId v = 1; v <= slp.size(); ++v)
    if (vocc[v] && slp.rule(v).terminal) codes.push_back(slp.rule(v).code);
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  const SymbolId base = out.next_id();
  for (Code c : codes) out.add_terminal(c, 0);
  auto letter_of = [&](Code c) {
    return base + static_cast<SymbolId>(std::lower_bound(codes.begin(), codes.end(), c) - codes.begin());
  };

  ShapedCfg g;
  g.rhs.assign(slp.size() + 1, {});
  g.live.assign(slp.size() + 1, 0);
  if (!slp.rule(slp.start()).terminal) {
    for (VarId v = 1; v <= slp.size(); ++v) {
      const SlpRule& r = slp.rule(v);
      if (r.terminal || vocc[v] == 0) continue;
      g.live[v] = 1;
      for (VarId c : {r.left, r.right}) {
        const SlpRule& cr = slp.rule(c);
        push_merge(g.rhs[v], cr.terminal ? Atom::letter(letter_of(cr.code)) : Atom::var(c));
      }
    }
    g.start = slp.start();
  }
  g.refresh();
  return g;
}

AdjacencyList cfg_adjacency_list(const ShapedCfg& cfg, PairWeighting weighting, const VoccMap& vocc) {
  if (cfg.empty()) return {};
  check_fresh(cfg);
  struct Occ {
    std::uint32_t first, second;  // ranks, first > second
    std::uint8_t dir;
    std::uint64_t weight;
  };
  const LetterRanks ranks = ranks_of(cfg);
  std::vector<Occ> occ;
  for (VarId v = 1; v < cfg.rhs.size(); ++v) {
    if (!cfg.live[v]) continue;
    std::uint64_t w = 1;
    if (weighting == PairWeighting::ByVocc) {
      RLCE_ENSURE(v < vocc.size() && vocc[v] > 0, "live variable without derivation-tree occurrences");
      w = vocc[v];
    }
    const auto& r = cfg.rhs[v];
    for (std::size_t k = 0; k < r.size(); ++k) {
      RLCE_ENSURE(r[k].is_var || r[k].count == 1, "adjacency list requested while blocks remain");
      if (k + 1 == r.size()) break;
      const SymbolId x = right_letter(cfg, r[k]), y = left_letter(cfg, r[k + 1]);
      RLCE_ENSURE(x != y, "adjacency list requested while blocks remain");
      if (x > y)
        occ.push_back({ranks(x), ranks(y), 0, w});
      else
        occ.push_back({ranks(y), ranks(x), 1, w});
    }
  }
  counting_sort(occ, 2, [](const Occ& o) { return o.dir; });
  counting_sort(occ, ranks.size(), [](const Occ& o) { return o.second; });
  counting_sort(occ, ranks.size(), [](const Occ& o) { return o.first; });

  AdjacencyList adj;
  for (const Occ& o : occ) {
    const SymbolId a = ranks.alphabet()[o.first], b = ranks.alphabet()[o.second];
    if (!adj.empty() && adj.back().first == a && adj.back().second == b && adj.back().dir == o.dir)
      adj.back().weight = checked_add(adj.back().weight, o.weight);
    else
      adj.push_back({a, b, o.dir, o.weight});
  }
  return adj;
}

ShapedCfg uncross_pairs(ShapedCfg cfg, const Partition& p) {
  if (cfg.empty()) return cfg;
  check_fresh(cfg);
  const SideTable side(p);
  const std::uint64_t size_before = cfg.size();
  const std::uint64_t live_before = cfg.live_count();
  // lml/rml stay at their pre-level values until the final refresh.
  std::vector<char> removed(cfg.rhs.size(), 0);

  for (VarId x = 1; x < cfg.rhs.size(); ++x) {
    if (!cfg.live[x]) continue;
    const bool is_start = x == cfg.start;
    const std::vector<Atom> old = std::move(cfg.rhs[x]);
    std::vector<Atom> out;
    out.reserve(old.size() + 4);
    const std::size_t last = old.size() - 1;
    for (std::size_t k = 0; k < old.size(); ++k) {
      const Atom& a = old[k];
      if (!a.is_var) {
        RLCE_ENSURE(a.count == 1, "pair uncrossing requested while blocks remain");
        out.push_back(a);
        continue;
      }
      const VarId y = a.id;
      if ((k > 0 || is_start) && side.right(cfg.lml[y])) out.push_back(Atom::letter(cfg.lml[y]));
      if (!removed[y]) out.push_back(a);
      if ((k < last || is_start) && side.left(cfg.rml[y])) out.push_back(Atom::letter(cfg.rml[y]));
    }
    if (!is_start) {
      if (!old.front().is_var && side.right(old.front().id)) {
        RLCE_ENSURE(!out.empty() && out.front() == old.front(), "pop-out lost track of the first letter");
        out.erase(out.begin());
      }
      if (!out.empty() && !old.back().is_var && side.left(old.back().id)) {
        RLCE_ENSURE(out.back() == old.back(), "pop-out lost track of the last letter");
        out.pop_back();
      }
    }
    if (out.empty()) {
      RLCE_ENSURE(!is_start, "the start variable became empty");
      removed[x] = 1;
      cfg.live[x] = 0;
    }
    cfg.rhs[x] = std::move(out);
  }
  cfg.refresh();
  RLCE_ENSURE(cfg.size() <= size_before + 2 * live_before + 2, "pair uncrossing grew the grammar too much");
  const auto bad = cfg.shape_violations();
  RLCE_ENSURE(bad.empty(), "shape violated after pair uncrossing: " + (bad.empty() ? "" : bad.front()));
  return cfg;
}

ShapedCfg cfg_pcomp(ShapedCfg cfg, const Partition& p, RlslpBuilder& out, std::vector<PairRule>* rules) {
  if (rules) rules->clear();
  if (cfg.empty()) return cfg;
  check_fresh(cfg);
  const SideTable side(p);
  const LetterRanks ranks = ranks_of(cfg);

  struct Occ {
    std::uint32_t left, right;  // ranks
  };
  std::vector<Occ> occ;
  for (VarId x = 1; x < cfg.rhs.size(); ++x) {
    if (!cfg.live[x]) continue;
    const auto& r = cfg.rhs[x];
    for (std::size_t k = 0; k + 1 < r.size(); ++k) {
      const bool crossing = r[k].is_var || r[k + 1].is_var;
      if (crossing && side.left(right_letter(cfg, r[k])) && side.right(left_letter(cfg, r[k + 1])))
        fail(ErrorCode::Internal, "crossing pair survived uncrossing in variable " + std::to_string(x));
    }
    for (std::size_t k = 0; k < r.size();) {
      if (k + 1 < r.size() && !r[k].is_var && !r[k + 1].is_var && side.left(r[k].id) && side.right(r[k + 1].id)) {
        RLCE_ENSURE(r[k].count == 1 && r[k + 1].count == 1, "pair compression requested while blocks remain");
        occ.push_back({ranks(r[k].id), ranks(r[k + 1].id)});
        k += 2;
      } else {
        ++k;
      }
    }
  }

  std::vector<std::size_t> order(occ.size());
  for (std::size_t k = 0; k < occ.size(); ++k) order[k] = k;
  counting_sort(order, ranks.size(), [&](std::size_t k) { return occ[k].right; });
  counting_sort(order, ranks.size(), [&](std::size_t k) { return occ[k].left; });
  std::vector<SymbolId> id_of(occ.size());
  std::vector<PairRule> made;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Occ& o = occ[order[k]];
    if (k == 0 || occ[order[k - 1]].left != o.left || occ[order[k - 1]].right != o.right) {
      const SymbolId l = ranks.alphabet()[o.left], r = ranks.alphabet()[o.right];
      made.push_back({l, r, out.add_pair(l, r, cfg.level + 1)});
    }
    id_of[order[k]] = made.back().id;
  }

  // Second scan in the same order as the first.
  std::size_t next = 0;
  for (VarId x = 1; x < cfg.rhs.size(); ++x) {
    if (!cfg.live[x]) continue;
    const auto& r = cfg.rhs[x];
    std::vector<Atom> rewritten;
    rewritten.reserve(r.size());
    for (std::size_t k = 0; k < r.size();) {
      if (k + 1 < r.size() && !r[k].is_var && !r[k + 1].is_var && side.left(r[k].id) && side.right(r[k + 1].id)) {
        push_merge(rewritten, Atom::letter(id_of[next++]));
        k += 2;
      } else {
        push_merge(rewritten, r[k++]);
      }
    }
    cfg.rhs[x] = std::move(rewritten);
  }
  RLCE_ENSURE(next == occ.size(), "pair occurrences changed between scans");
  ++cfg.level;
  cfg.refresh();
  if (rules) *rules = std::move(made);
  return cfg;
}

ShapedCfg uncross_blocks(ShapedCfg cfg, std::vector<SymbolId>* block_letters) {
  if (block_letters) block_letters->clear();
  if (cfg.empty()) return cfg;
  check_fresh(cfg);
  const std::uint64_t size_before = cfg.size();
  const std::uint64_t live_before = cfg.live_count();

  // Σ_B: letters with an explicit block or with two equal boundary letters
  // meeting inside some righthand side.
  const std::vector<SymbolId> alphabet = cfg.alphabet();
  std::vector<char> in_b(alphabet.empty() ? 1 : alphabet.back() + 1, 0);
  auto mark = [&](SymbolId c) {
    if (c >= in_b.size()) in_b.resize(c + 1, 0);
    in_b[c] = 1;
  };
  for (VarId x = 1; x < cfg.rhs.size(); ++x) {
    if (!cfg.live[x]) continue;
    const auto& r = cfg.rhs[x];
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (!r[k].is_var && r[k].count >= 2) mark(r[k].id);
      if (k + 1 < r.size() && right_letter(cfg, r[k]) == left_letter(cfg, r[k + 1])) mark(right_letter(cfg, r[k]));
    }
  }
  auto b = [&](SymbolId c) { return c < in_b.size() && in_b[c]; };
  // A unary variable of a Σ_B letter dissolves into its block everywhere.
  auto dissolves = [&](VarId y) { return cfg.unary[y] && b(cfg.lml[y]); };

  std::vector<char> removed(cfg.rhs.size(), 0);
  for (VarId x = 1; x < cfg.rhs.size(); ++x) {
    if (!cfg.live[x]) continue;
    const bool is_start = x == cfg.start;
    const std::vector<Atom> old = std::move(cfg.rhs[x]);
    std::vector<Atom> out;
    out.reserve(old.size() + 4);
    const std::size_t last = old.size() - 1;
    for (std::size_t k = 0; k < old.size(); ++k) {
      const Atom& a = old[k];
      if (!a.is_var) {
        push_merge(out, a);
        continue;
      }
      const VarId y = a.id;
      if (dissolves(y)) {
        push_merge(out, Atom::letter(cfg.lml[y], cfg.letter_len[y]));
        continue;
      }
      if ((k > 0 || is_start) && b(cfg.lml[y]))
        push_merge(out, Atom::letter(cfg.lml[y], cfg.left_run[y].exponent));
      if (!removed[y]) out.push_back(a);
      if ((k < last || is_start) && b(cfg.rml[y]))
        push_merge(out, Atom::letter(cfg.rml[y], cfg.right_run[y].exponent));
    }
    if (!is_start) {
      if (dissolves(x)) {
        RLCE_ENSURE(out.size() == 1 && !out.front().is_var && out.front().count == cfg.letter_len[x],
                    "unary variable did not collapse to its block");
        out.clear();
      } else {
        auto letterish = [&](const Atom& a) { return !a.is_var || dissolves(a.id); };
        if (b(cfg.lml[x]) && letterish(old.front())) {
          RLCE_ENSURE(!out.empty() && !out.front().is_var && out.front().id == cfg.lml[x] &&
                          out.front().count == cfg.left_run[x].exponent,
                      "pop-out lost track of the leading block");
          out.erase(out.begin());
        }
        if (b(cfg.rml[x]) && letterish(old.back())) {
          RLCE_ENSURE(!out.empty() && !out.back().is_var && out.back().id == cfg.rml[x] &&
                          out.back().count == cfg.right_run[x].exponent,
                      "pop-out lost track of the trailing block");
          out.pop_back();
        }
      }
    }
    if (out.empty()) {
      RLCE_ENSURE(!is_start, "the start variable became empty");
      removed[x] = 1;
      cfg.live[x] = 0;
    }
    cfg.rhs[x] = std::move(out);
  }
  cfg.refresh();
  RLCE_ENSURE(cfg.size() <= size_before + 2 * live_before + 2, "block uncrossing grew the grammar too much");
  const auto bad = cfg.shape_violations();
  RLCE_ENSURE(bad.empty(), "shape violated after block uncrossing: " + (bad.empty() ? "" : bad.front()));
  if (block_letters)
    for (SymbolId c = 0; c < in_b.size(); ++c)
      if (in_b[c]) block_letters->push_back(c);
  return cfg;
}

ShapedCfg cfg_bcomp(ShapedCfg cfg, RlslpBuilder& out, CfgBlockStats* stats) {
  CfgBlockStats local;
  if (cfg.empty()) {
    if (stats) *stats = std::move(local);
    return cfg;
  }
  check_fresh(cfg);
  const LetterRanks ranks = ranks_of(cfg);
  const std::uint64_t threshold = 2 * cfg.size();

  struct Occ {
    std::uint32_t rank;
    Length exponent;
    std::size_t index;  // collection order
  };
  std::vector<Occ> short_blocks, long_blocks;
  std::size_t count = 0;
  for (VarId x = 1; x < cfg.rhs.size(); ++x) {
    if (!cfg.live[x]) continue;
    for (const Atom& a : cfg.rhs[x]) {
      if (a.is_var || a.count < 2) continue;
      (a.count <= threshold ? short_blocks : long_blocks).push_back({ranks(a.id), a.count, count++});
    }
  }
  counting_sort(short_blocks, threshold + 1, [](const Occ& o) { return o.exponent; });
  counting_sort(short_blocks, ranks.size(), [](const Occ& o) { return o.rank; });
  auto key_less = [](const Occ& a, const Occ& b) {
    return a.rank != b.rank ? a.rank < b.rank : a.exponent < b.exponent;
  };
  std::sort(long_blocks.begin(), long_blocks.end(), key_less);
  std::vector<Occ> all;
  all.reserve(count);
  std::merge(short_blocks.begin(), short_blocks.end(), long_blocks.begin(), long_blocks.end(),
             std::back_inserter(all), key_less);

  std::vector<SymbolId> id_of(count);
  for (std::size_t k = 0; k < all.size(); ++k) {
    const Occ& o = all[k];
    if (k == 0 || all[k - 1].rank != o.rank || all[k - 1].exponent != o.exponent) {
      const SymbolId c = ranks.alphabet()[o.rank];
      local.rules.push_back({c, o.exponent, out.add_run(c, o.exponent, cfg.level + 1)});
    }
    id_of[o.index] = local.rules.back().id;
  }
  local.short_blocks = short_blocks.size();
  local.long_blocks = long_blocks.size();

  std::size_t next = 0;
  for (VarId x = 1; x < cfg.rhs.size(); ++x) {
    if (!cfg.live[x]) continue;
    std::vector<Atom> rewritten;
    rewritten.reserve(cfg.rhs[x].size());
    for (const Atom& a : cfg.rhs[x])
      push_merge(rewritten, (!a.is_var && a.count >= 2) ? Atom::letter(id_of[next++]) : a);
    cfg.rhs[x] = std::move(rewritten);
  }
  ++cfg.level;
  cfg.refresh();
  if (stats) *stats = std::move(local);
  return cfg;
}

Rlslp build_from_slp(const Slp& slp, Schedule schedule, BuildLog* log) {
  RlslpBuilder b;
  ShapedCfg cfg = init_cfg(slp, b);
  if (cfg.empty()) {
    if (log) log->final_level = 0;
    return std::move(b).finish(b.size());
  }
  const VoccMap vocc = compute_vocc(slp);
  const std::uint64_t n = slp.size();
  std::uint64_t pair_levels = 0;
  if (log) log->max_cfg_size = std::max(log->max_cfg_size, cfg.size());

  for (Level h = 0;; ++h) {
    RLCE_ENSURE(cfg.level == h, "grammar level out of step");
    const Length len_before = cfg.letter_len[cfg.start];
    if (len_before <= n) {
      if (log) log->cutover_level = h;
      const SymbolId root = run_text_levels({cfg.expand_letters(cfg.start), h}, b, log);
      return std::move(b).finish(root);
    }
    LevelStat stat;
    stat.h = h;
    stat.on_grammar = true;
    stat.length_before = len_before;
    stat.cfg_size_before = cfg.size();
    stat.live_variables = cfg.live_count();
    LevelContext ctx;
    ctx.h = h;

    if (h % 2 == 0) {
      stat.kind = ctx.kind = LevelKind::Block;
      cfg = uncross_blocks(std::move(cfg), &ctx.block_letters);
      CfgBlockStats bs;
      cfg = cfg_bcomp(std::move(cfg), b, &bs);
      stat.replaced = bs.short_blocks + bs.long_blocks;
      if (log) log->long_blocks += bs.long_blocks;
      ctx.block_rules = std::move(bs.rules);
    } else {
      stat.kind = ctx.kind = LevelKind::Pair;
      const bool by_vocc = schedule == Schedule::SimTtoG || pair_levels % 2 == 0;
      ++pair_levels;
      const auto adj =
          cfg_adjacency_list(cfg, by_vocc ? PairWeighting::ByVocc : PairWeighting::Unit, vocc);
      LetterRanks ranks;
      ranks.assign(cfg.alphabet());
      ctx.partition = detail::to_partition(detail::partition_sides(adj, ranks), ranks);
      cfg = uncross_pairs(std::move(cfg), ctx.partition);
      cfg = cfg_pcomp(std::move(cfg), ctx.partition, b, &ctx.pair_rules);
      stat.replaced = len_before - cfg.letter_len[cfg.start];
      if (by_vocc)
        RLCE_ENSURE(4 * stat.replaced >= len_before - 1, "pair compression replaced fewer than (|w|-1)/4 pairs");
    }
    stat.length_after = cfg.letter_len[cfg.start];
    stat.cfg_size_after = cfg.size();

    const auto bad = cfg.shape_violations();
    RLCE_ENSURE(bad.empty(), "shape violated at level " + std::to_string(h) + ": " + (bad.empty() ? "" : bad.front()));
    RLCE_ENSURE(stat.cfg_size_after <= stat.cfg_size_before + 2 * n,
                "grammar grew by more than 2n at level " + std::to_string(h));
    if (schedule == Schedule::GtoG)
      RLCE_ENSURE(stat.cfg_size_after <= 8 * n, "intermediate grammar exceeds 8n at level " + std::to_string(h));
    if (log) {
      log->max_cfg_size = std::max(log->max_cfg_size, stat.cfg_size_after);
      log->stats.push_back(stat);
      if (log->record_contexts) log->contexts.push_back(std::move(ctx));
    }
  }
}

}  // namespace rlce
