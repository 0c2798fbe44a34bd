#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rlce/grammar.hpp"

namespace rlce {

/// Non-self-referential LZ77 (f-factorization without self-reference).
struct Lz77Factorization {
  std::vector<Position> starts;  // p_1 = 1, strictly increasing
  Length text_length = 0;

  std::uint64_t z() const { return starts.size(); }
  Length factor_length(std::size_t k) const {
    return (k + 1 < starts.size() ? starts[k + 1] : text_length + 1) - starts[k];
  }
};

/// Greedy left-to-right parse using an online suffix automaton of the
/// processed prefix: each factor is a fresh character or the longest prefix
/// of the remainder occurring entirely inside T[1..p-1].
Lz77Factorization lz77_factorize(std::span<const Code> text);
Lz77Factorization lz77_factorize(std::string_view text);

struct SizeBoundReport {
  std::uint64_t grammar_size = 0;
  std::uint64_t z = 0;
  Length text_length = 0;
  double ratio = 0;  // g / (z * (1 + log2(max(2, N / z))))
};

SizeBoundReport size_bound_report(const Rlslp& g, const Lz77Factorization& fz);

}  // namespace rlce
