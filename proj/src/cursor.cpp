#include "rlce/grammar.hpp"

namespace rlce {

Cursor Cursor::seek(const Rlslp& g, Position pos) {
  const Length n = g.text_length();
  if (pos < 1 || pos > n + 1)
    fail(ErrorCode::OutOfRange, "position " + std::to_string(pos) + " outside [1.." + std::to_string(n + 1) + "]");
  Cursor c(g);
  c.pos_ = pos;
  if (pos == n + 1) return c;
  c.frames_.push_back({g.start(), 0, 1});
  c.descend();
  return c;
}

// Re-selects the child of the top frame for pos_ and pushes the path down to
// a terminal.
void Cursor::descend() {
  const Rlslp& g = *g_;
  for (;;) {
    Frame& f = frames_.back();
    const Rule& r = g.rule(f.symbol);
    switch (r.kind) {
      case RuleKind::Terminal:
        f.child = 0;
        return;
      case RuleKind::Pair: {
        const Position split = f.start + g.length(r.left());
        if (pos_ < split) {
          f.child = 0;
          frames_.push_back({r.left(), 0, f.start});
        } else {
          f.child = 1;
          frames_.push_back({r.right(), 0, split});
        }
        break;
      }
      case RuleKind::Run: {
        const Length unit = g.length(r.base());
        const Length k = (pos_ - f.start) / unit;
        f.child = k + 1;
        frames_.push_back({r.base(), 0, f.start + k * unit});
        break;
      }
    }
  }
}

void Cursor::advance(Length delta) {
  if (delta == 0) return;
  const Length n = g_->text_length();
  if (pos_ > n || delta > n + 1 - pos_)
    fail(ErrorCode::OutOfRange, "cursor advanced past the end of the text");
  pos_ += delta;
  if (pos_ == n + 1) {
    frames_.clear();
    return;
  }
  while (frames_.size() > 1) {
    const Frame& f = frames_.back();
    if (f.start + g_->length(f.symbol) > pos_) break;
    frames_.pop_back();
  }
  descend();
}

void Cursor::aligned_symbols(std::vector<AlignedSymbol>& out) const {
  out.clear();
  if (frames_.empty()) fail(ErrorCode::OutOfRange, "aligned_symbols at the end sentinel");
  const Rlslp& g = *g_;
  for (std::size_t d = frames_.size(); d-- > 0;) {
    const Frame& f = frames_[d];
    const Rule& r = g.rule(f.symbol);
    if (r.kind == RuleKind::Run) {
      const Position copy_start = f.start + (f.child - 1) * g.length(r.base());
      if (copy_start == pos_) out.push_back({r.base(), r.exponent() - f.child + 1, true, d});
    }
    if (f.start != pos_) break;
    out.push_back({f.symbol, 1, false, d});
  }
}

std::vector<AlignedSymbol> Cursor::aligned_symbols() const {
  std::vector<AlignedSymbol> out;
  aligned_symbols(out);
  return out;
}

Code Cursor::current_code() const {
  if (frames_.empty()) fail(ErrorCode::OutOfRange, "no character at the end sentinel");
  return g_->rule(frames_.back().symbol).code();
}

}  // namespace rlce
