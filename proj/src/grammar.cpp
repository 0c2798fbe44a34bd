#include "rlce/grammar.hpp"

#include <algorithm>
#include <sstream>

namespace rlce {

Rlslp::Rlslp(std::vector<Rule> rules, SymbolId start, Length text_len, std::vector<Length> exp_len,
             std::vector<Level> levels)
    : rules_(std::move(rules)),
      start_(start),
      text_len_(text_len),
      exp_len_(std::move(exp_len)),
      levels_(std::move(levels)) {
  exp_len_.resize(rules_.size(), 0);
  levels_.resize(rules_.size(), 0);
}

namespace {

// Levels for grammars that arrive without them: the derivation height.
std::vector<Level> derivation_heights(const std::vector<Rule>& rules) {
  std::vector<Level> h(rules.size(), 0);
  for (std::size_t k = 0; k < rules.size(); ++k) {
    const Rule& r = rules[k];
    // Operands that do not precede the rule are reported by validate();
    // here they simply count as leaves.
    auto at = [&](SymbolId s) { return s >= 1 && s <= k ? h[s - 1] : Level{0}; };
    switch (r.kind) {
      case RuleKind::Terminal: h[k] = 0; break;
      case RuleKind::Pair: h[k] = 1 + std::max(at(r.left()), at(r.right())); break;
      case RuleKind::Run: h[k] = 1 + at(r.base()); break;
    }
  }
  return h;
}

}  // namespace

Rlslp Rlslp::from_rules(std::vector<Rule> rules, SymbolId start, std::vector<Level> levels) {
  std::vector<Length> len(rules.size());
  for (std::size_t k = 0; k < rules.size(); ++k) {
    const Rule& r = rules[k];
    const auto id = static_cast<SymbolId>(k + 1);
    auto operand = [&](SymbolId s) {
      if (s < 1 || s >= id)
        fail(ErrorCode::InvalidInput, "symbol " + std::to_string(id) + " references " + std::to_string(s));
      return len[s - 1];
    };
    switch (r.kind) {
      case RuleKind::Terminal: len[k] = 1; break;
      case RuleKind::Pair: len[k] = checked_add(operand(r.left()), operand(r.right())); break;
      case RuleKind::Run: len[k] = checked_mul(operand(r.base()), r.exponent()); break;
    }
  }
  if (start < 1 || start > rules.size()) fail(ErrorCode::InvalidInput, "start symbol out of range");
  if (levels.empty()) levels = derivation_heights(rules);
  const Length n = len[start - 1];
  return Rlslp(std::move(rules), start, n, std::move(len), std::move(levels));
}

// ---------------------------------------------------------------------------

SymbolId RlslpBuilder::push(Rule r, Length len, Level level) {
  if (rules_.size() >= 0xFFFFFFFEu) fail(ErrorCode::Overflow, "symbol ids exhausted");
  rules_.push_back(r);
  exp_len_.push_back(len);
  levels_.push_back(level);
  return static_cast<SymbolId>(rules_.size());
}

SymbolId RlslpBuilder::add_terminal(Code code, Level level) { return push(Rule::terminal(code), 1, level); }

SymbolId RlslpBuilder::add_pair(SymbolId left, SymbolId right, Level level) {
  RLCE_ENSURE(left >= 1 && left < next_id() && right >= 1 && right < next_id(), "pair operand out of range");
  return push(Rule::pair(left, right), checked_add(length(left), length(right)), level);
}

SymbolId RlslpBuilder::add_run(SymbolId base, Length exponent, Level level) {
  RLCE_ENSURE(base >= 1 && base < next_id(), "run base out of range");
  RLCE_ENSURE(exponent >= 2, "run exponent below 2");
  return push(Rule::run(base, exponent), checked_mul(length(base), exponent), level);
}

Rlslp RlslpBuilder::finish(SymbolId start) && {
  RLCE_ENSURE(start >= 1 && start <= rules_.size(), "start symbol out of range");
  const Length n = exp_len_[start - 1];
  return Rlslp(std::move(rules_), start, n, std::move(exp_len_), std::move(levels_));
}

// ---------------------------------------------------------------------------

std::vector<Violation> validate(const Rlslp& g) {
  std::vector<Violation> out;
  using K = Violation::Kind;
  auto report = [&](K kind, SymbolId s, std::string msg) { out.push_back({kind, s, std::move(msg)}); };

  // Lengths are recomputed from the rules (saturating) and compared with
  // the stored ones; dangling operands make the recomputed value unknown.
  std::vector<Length> expect(g.size(), 0);
  std::vector<char> known(g.size(), 0);
  constexpr Length kSat = ~Length{0};
  for (SymbolId s = 1; s <= g.size(); ++s) {
    const Rule& r = g.rule(s);
    const std::string at = "symbol " + std::to_string(s);
    auto operand_ok = [&](SymbolId x) {
      if (x < 1 || x > g.size()) {
        report(K::DanglingReference, s, at + ": dangling reference to " + std::to_string(x));
        return false;
      }
      if (x >= s) {
        report(K::NonIncreasingId, s, at + ": operand " + std::to_string(x) + " is not smaller");
        return false;
      }
      return true;
    };
    bool ok = true;
    Length len = 0;
    switch (r.kind) {
      case RuleKind::Terminal: len = 1; break;
      case RuleKind::Pair: {
        const bool a = operand_ok(r.left());
        const bool b = operand_ok(r.right());
        ok = a && b && known[r.left() - 1] && known[r.right() - 1];
        if (ok) {
          Length x = expect[r.left() - 1], y = expect[r.right() - 1];
          len = (x > kSat - y) ? kSat : x + y;
        }
        break;
      }
      case RuleKind::Run: {
        if (r.exponent() < 2)
          report(K::SmallExponent, s, at + ": run exponent " + std::to_string(r.exponent()) + " < 2");
        ok = operand_ok(r.base()) && known[r.base() - 1];
        if (ok) {
          Length x = expect[r.base() - 1];
          len = (x != 0 && r.exponent() > kSat / x) ? kSat : x * r.exponent();
        }
        break;
      }
    }
    if (!ok) continue;
    known[s - 1] = 1;
    expect[s - 1] = len;
    if (g.length(s) != len)
      report(K::WrongLength, s,
             at + ": stored length " + std::to_string(g.length(s)) + " but rule gives " + std::to_string(len));
  }
  if (!g.contains(g.start())) {
    report(K::BadStart, 0, "start symbol " + std::to_string(g.start()) + " out of range");
  } else if (g.length(g.start()) != g.text_length()) {
    report(K::StartLength, g.start(),
           "text length " + std::to_string(g.text_length()) + " differs from expLen(start) " +
               std::to_string(g.length(g.start())));
  }
  return out;
}

std::size_t height(const Rlslp& g) {
  if (!g.contains(g.start())) return 0;
  const auto h = derivation_heights(g.rules());
  return h[g.start() - 1];
}

std::vector<Code> expand_codes(const Rlslp& g, SymbolId s, Length max_len) {
  if (!g.contains(s)) fail(ErrorCode::InvalidInput, "unknown symbol " + std::to_string(s));
  if (g.length(s) > max_len) fail(ErrorCode::OutOfRange, "expansion exceeds budget");
  std::vector<Code> out;
  out.reserve(g.length(s));
  std::vector<SymbolId> stack{s};
  while (!stack.empty()) {
    const SymbolId x = stack.back();
    stack.pop_back();
    const Rule& r = g.rule(x);
    switch (r.kind) {
      case RuleKind::Terminal: out.push_back(r.code()); break;
      case RuleKind::Pair:
        stack.push_back(r.right());
        stack.push_back(r.left());
        break;
      case RuleKind::Run:
        for (Length k = 0; k < r.exponent(); ++k) stack.push_back(r.base());
        break;
    }
  }
  return out;
}

namespace {

std::string to_bytes(const std::vector<Code>& codes) {
  std::string s(codes.size(), '\0');
  for (std::size_t k = 0; k < codes.size(); ++k) {
    if (codes[k] > 0xFF) fail(ErrorCode::InvalidInput, "terminal code does not fit in a byte");
    s[k] = static_cast<char>(static_cast<unsigned char>(codes[k]));
  }
  return s;
}

}  // namespace

std::string expand(const Rlslp& g, SymbolId s, Length max_len) { return to_bytes(expand_codes(g, s, max_len)); }

std::vector<Code> extract_codes(const Rlslp& g, Position i, Length len) {
  const Length n = g.text_length();
  if (i < 1 || i > n + 1 || len > n + 1 - i)
    fail(ErrorCode::OutOfRange, "extract(" + std::to_string(i) + ", " + std::to_string(len) + ") outside [1.." +
                                    std::to_string(n) + "]");
  std::vector<Code> out;
  if (len == 0) return out;
  out.reserve(len);
  Cursor c = Cursor::seek(g, i);
  for (Length k = 0; k < len; ++k) {
    out.push_back(c.current_code());
    c.advance(1);
  }
  return out;
}

std::string extract(const Rlslp& g, Position i, Length len) { return to_bytes(extract_codes(g, i, len)); }

}  // namespace rlce
