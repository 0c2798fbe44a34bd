#pragma once

// Corpus generators and brute-force oracles shared by the test programs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "rlce/grammar.hpp"
#include "rlce/recompress.hpp"
#include "rlce/slp.hpp"

namespace rlce::testing {

inline std::string random_text(std::size_t n, unsigned sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned> pick(0, sigma - 1);
  std::string s(n, 'a');
  for (char& c : s) c = static_cast<char>('a' + pick(rng));
  return s;
}

inline std::string random_bytes(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 255);
  std::string s(n, '\0');
  for (char& c : s) c = static_cast<char>(pick(rng));
  return s;
}

/// F_1 = "b", F_2 = "a", F_k = F_{k-1} F_{k-2}.
inline std::string fibonacci_word(unsigned k) {
  std::string a = "b", b = "a";
  if (k == 1) return a;
  for (unsigned i = 2; i < k; ++i) {
    std::string next = b + a;
    a = std::move(b);
    b = std::move(next);
  }
  return b;
}

/// X_1 = 'b', X_2 = 'a', X_k = X_{k-1} X_{k-2}; generates fibonacci_word(k).
inline Slp fibonacci_slp(unsigned k) {
  std::vector<SlpRule> r{{true, 'b', 0, 0}};
  if (k >= 2) r.push_back({true, 'a', 0, 0});
  for (unsigned v = 3; v <= k; ++v) r.push_back({false, 0, v - 1, v - 2});
  return make_slp(std::move(r));
}

/// X_1 = 'a', X_k = X_{k-1} X_{k-1}; generates a^(2^(k-1)).
inline Slp doubling_slp(unsigned k) {
  std::vector<SlpRule> r{{true, 'a', 0, 0}};
  for (unsigned v = 2; v <= k; ++v) r.push_back({false, 0, v - 1, v - 1});
  return make_slp(std::move(r));
}

/// Random CNF SLP with n variables over an alphabet of up to sigma letters
/// whose start expands to at most max_len characters.
inline Slp random_slp(unsigned n, unsigned sigma, Length max_len, std::mt19937_64& rng) {
  std::vector<SlpRule> r;
  std::vector<Length> len;
  const unsigned terminals = std::min<unsigned>(std::max(1u, n / 3), sigma);
  const unsigned t = n == 1 ? 1 : 1 + static_cast<unsigned>(rng() % terminals);
  for (unsigned k = 0; k < t; ++k) {
    r.push_back({true, static_cast<Code>('a' + rng() % sigma), 0, 0});
    len.push_back(1);
  }
  while (r.size() < n) {
    const auto v = static_cast<VarId>(r.size() + 1);
    for (int attempt = 0;; ++attempt) {
      // Favor recent variables so the start tends to be long.
      auto choose = [&]() -> VarId {
        if (rng() % 2) return v - 1 - static_cast<VarId>(rng() % std::min<VarId>(v - 1, 3));
        return 1 + static_cast<VarId>(rng() % (v - 1));
      };
      const VarId a = choose(), b = choose();
      if (len[a - 1] + len[b - 1] <= max_len || attempt > 50) {
        const VarId x = len[a - 1] + len[b - 1] <= max_len ? a : 1;
        const VarId y = len[a - 1] + len[b - 1] <= max_len ? b : 1;
        r.push_back({false, 0, x, y});
        len.push_back(len[x - 1] + len[y - 1]);
        break;
      }
    }
  }
  return make_slp(std::move(r));
}

/// Every derivation-tree node starting at pos as (symbol, count,
/// run_remainder), including run suffixes, by brute-force traversal.
struct NodeAt {
  SymbolId symbol;
  Length count;
  bool remainder;
  friend bool operator==(const NodeAt&, const NodeAt&) = default;
  friend bool operator<(const NodeAt& a, const NodeAt& b) {
    return std::tie(a.symbol, a.count, a.remainder) < std::tie(b.symbol, b.count, b.remainder);
  }
};

inline void nodes_at(const Rlslp& g, SymbolId s, Position start, Position pos, std::vector<NodeAt>& out) {
  if (pos < start || pos >= start + g.length(s)) return;
  if (pos == start) out.push_back({s, 1, false});
  const Rule& r = g.rule(s);
  if (r.kind == RuleKind::Pair) {
    nodes_at(g, r.left(), start, pos, out);
    nodes_at(g, r.right(), start + g.length(r.left()), pos, out);
  } else if (r.kind == RuleKind::Run) {
    const Length unit = g.length(r.base());
    const Length k = (pos - start) / unit;
    if ((pos - start) % unit == 0) out.push_back({r.base(), r.exponent() - k, true});
    nodes_at(g, r.base(), start + k * unit, pos, out);
  }
}

inline std::vector<NodeAt> brute_aligned(const Rlslp& g, Position pos) {
  std::vector<NodeAt> out;
  nodes_at(g, g.start(), 1, pos, out);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Code> to_codes(const std::string& s) {
  std::vector<Code> c(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) c[i] = static_cast<unsigned char>(s[i]);
  return c;
}

inline std::string from_codes(const std::vector<Code>& c) {
  std::string s(c.size(), '\0');
  for (std::size_t i = 0; i < c.size(); ++i) s[i] = static_cast<char>(c[i]);
  return s;
}

inline double ceil_log43(Length n) {
  // ceil(log_{4/3} n)
  if (n <= 1) return 0;
  double v = std::log(static_cast<double>(n)) / std::log(4.0 / 3.0);
  return std::ceil(v - 1e-9);
}

// Level contexts 0..3 of the worked recompression example.
inline std::vector<LevelContext> worked_contexts() {
  std::vector<LevelContext> c(4);
  c[0].h = 0;
  c[0].kind = LevelKind::Block;
  c[0].block_letters = {1, 2, 4};
  c[0].block_rules = {{1, 2, 5}, {1, 3, 6}, {2, 3, 7}, {4, 2, 8}};
  c[1].h = 1;
  c[1].kind = LevelKind::Pair;
  c[1].partition = {{1, 3, 5, 6, 7}, {2, 4, 8}};
  c[1].pair_rules = {{1, 2, 9}, {3, 4, 10}, {3, 8, 11}, {5, 2, 12}, {6, 2, 13}};
  c[2].h = 2;
  c[2].kind = LevelKind::Block;
  c[2].block_letters = {9};
  c[2].block_rules = {{9, 2, 14}};
  c[3].h = 3;
  c[3].kind = LevelKind::Pair;
  c[3].partition = {{3, 7, 12, 13}, {10, 14}};
  c[3].pair_rules = {{7, 14, 15}, {12, 10, 16}, {13, 10, 17}};
  return c;
}

}  // namespace rlce::testing
