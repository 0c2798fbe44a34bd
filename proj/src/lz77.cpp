#include "rlce/lz77.hpp"

#include <algorithm>
#include <cmath>

namespace rlce {

namespace {

// Suffix automaton of a growing prefix. A walk from the root succeeds
// exactly on substrings of what has been appended so far.
class SuffixAutomaton {
 public:
  SuffixAutomaton() { states_.push_back({0, -1, {}}); }

  int next(int s, Code c) const {
    for (const auto& [k, t] : states_[s].next)
      if (k == c) return t;
    return -1;
  }

  void extend(Code c) {
    const int cur = static_cast<int>(states_.size());
    states_.push_back({states_[last_].len + 1, 0, {}});
    int p = last_;
    while (p != -1 && next(p, c) == -1) {
      states_[p].next.emplace_back(c, cur);
      p = states_[p].link;
    }
    if (p == -1) {
      states_[cur].link = 0;
    } else {
      const int q = next(p, c);
      if (states_[p].len + 1 == states_[q].len) {
        states_[cur].link = q;
      } else {
        const int clone = static_cast<int>(states_.size());
        State copy = states_[q];
        copy.len = states_[p].len + 1;
        states_.push_back(std::move(copy));
        while (p != -1 && next(p, c) == q) {
          set(p, c, clone);
          p = states_[p].link;
        }
        states_[q].link = clone;
        states_[cur].link = clone;
      }
    }
    last_ = cur;
  }

 private:
  struct State {
    Length len;
    int link;
    std::vector<std::pair<Code, int>> next;
  };

  void set(int s, Code c, int t) {
    for (auto& [k, v] : states_[s].next)
      if (k == c) v = t;
  }

  std::vector<State> states_;
  int last_ = 0;
};

}  // namespace

Lz77Factorization lz77_factorize(std::span<const Code> text) {
  if (text.empty()) fail(ErrorCode::InvalidInput, "cannot factorize the empty text");
  Lz77Factorization fz;
  fz.text_length = text.size();
  SuffixAutomaton sam;
  std::size_t p = 0;
  while (p < text.size()) {
    int s = 0;
    std::size_t len = 0;
    while (p + len < text.size()) {
      const int t = sam.next(s, text[p + len]);
      if (t < 0) break;
      s = t;
      ++len;
    }
    len = std::max<std::size_t>(len, 1);
    fz.starts.push_back(p + 1);
    for (std::size_t k = 0; k < len; ++k) sam.extend(text[p + k]);
    p += len;
  }
  return fz;
}

Lz77Factorization lz77_factorize(std::string_view text) {
  std::vector<Code> codes(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) codes[i] = static_cast<unsigned char>(text[i]);
  return lz77_factorize(std::span<const Code>(codes));
}

SizeBoundReport size_bound_report(const Rlslp& g, const Lz77Factorization& fz) {
  if (g.text_length() != fz.text_length)
    fail(ErrorCode::InvalidInput, "grammar and factorization describe texts of different lengths");
  SizeBoundReport r;
  r.grammar_size = g.size();
  r.z = fz.z();
  r.text_length = g.text_length();
  const double z = static_cast<double>(r.z);
  const double n_over_z = static_cast<double>(r.text_length) / z;
  r.ratio = static_cast<double>(r.grammar_size) / (z * (1.0 + std::log2(std::max(2.0, n_over_z))));
  return r;
}

}  // namespace rlce
