#pragma once

#include <cstddef>
#include <vector>

namespace rlce::detail {

/// Stable counting sort by key(item) in [0, range).
template <class T, class Key>
void counting_sort(std::vector<T>& items, std::size_t range, Key key) {
  if (items.size() < 2) return;
  std::vector<std::size_t> slot(range + 1, 0);
  for (const T& it : items) ++slot[static_cast<std::size_t>(key(it)) + 1];
  for (std::size_t k = 1; k <= range; ++k) slot[k] += slot[k - 1];
  std::vector<T> out(items.size());
  for (T& it : items) out[slot[static_cast<std::size_t>(key(it))]++] = std::move(it);
  items.swap(out);
}

/// Dense ranks for the letters of the current string. The rank table is
/// indexed by letter id and reused across levels; only entries of the
/// current alphabet are meaningful.
class LetterRanks {
 public:
  void assign(const std::vector<unsigned>& sorted_alphabet) {
    alphabet_ = sorted_alphabet;
    if (!alphabet_.empty() && table_.size() <= alphabet_.back()) table_.resize(alphabet_.back() + 1, 0);
    for (std::size_t k = 0; k < alphabet_.size(); ++k) table_[alphabet_[k]] = static_cast<unsigned>(k);
  }
  unsigned operator()(unsigned letter) const { return table_[letter]; }
  std::size_t size() const { return alphabet_.size(); }
  const std::vector<unsigned>& alphabet() const { return alphabet_; }

 private:
  std::vector<unsigned> alphabet_;
  std::vector<unsigned> table_;
};

}  // namespace rlce::detail
