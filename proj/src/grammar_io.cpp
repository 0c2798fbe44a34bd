#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "rlce/grammar.hpp"

namespace rlce {

void write_rlslp(std::ostream& os, const Rlslp& g) {
  os << "RLSLP " << g.size() << ' ' << g.start() << ' ' << g.text_length() << '\n';
  for (const Rule& r : g.rules()) {
    switch (r.kind) {
      case RuleKind::Terminal: os << "T " << r.code() << '\n'; break;
      case RuleKind::Pair: os << "P " << r.left() << ' ' << r.right() << '\n'; break;
      case RuleKind::Run: os << "R " << r.base() << ' ' << r.exponent() << '\n'; break;
    }
  }
  os << 'L';
  for (Level l : g.levels()) os << ' ' << l;
  os << '\n';
}

std::string to_text(const Rlslp& g) {
  std::ostringstream os;
  write_rlslp(os, g);
  return os.str();
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  bool next() {
    if (!std::getline(is_, line_)) return false;
    ++number_;
    fields_.clear();
    std::string_view rest(line_);
    while (!rest.empty()) {
      const auto sp = rest.find(' ');
      fields_.push_back(rest.substr(0, sp));
      if (sp == std::string_view::npos) break;
      rest.remove_prefix(sp + 1);
    }
    return true;
  }

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::InvalidInput, "line " + std::to_string(number_) + ": " + what);
  }

  std::size_t arity() const { return fields_.size(); }
  std::string_view tag() const { return fields_.empty() ? std::string_view{} : fields_[0]; }

  std::uint64_t number(std::size_t k) const {
    std::uint64_t v = 0;
    const std::string_view f = fields_[k];
    const auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec == std::errc::result_out_of_range) error("number out of range: '" + std::string(f) + "'");
    if (f.empty() || ec != std::errc{} || p != f.data() + f.size())
      error("expected a decimal number, got '" + std::string(f) + "'");
    return v;
  }

  std::size_t line_number() const { return number_; }

 private:
  std::istream& is_;
  std::string line_;
  std::vector<std::string_view> fields_;
  std::size_t number_ = 0;
};

}  // namespace

Rlslp read_rlslp(std::istream& is) {
  LineReader in(is);
  if (!in.next()) fail(ErrorCode::InvalidInput, "line 1: empty grammar file");
  if (in.tag() != "RLSLP" || in.arity() != 4) in.error("expected 'RLSLP <g> <start> <N>'");
  const std::uint64_t g = in.number(1);
  const std::uint64_t start = in.number(2);
  const Length n = in.number(3);
  if (g == 0) in.error("grammar has no symbols");
  if (g >= 0xFFFFFFFFull) in.error("too many symbols");
  if (start < 1 || start > g) in.error("start symbol out of range");

  std::vector<Rule> rules;
  rules.reserve(g);
  std::vector<Length> len;
  len.reserve(g);
  for (std::uint64_t k = 1; k <= g; ++k) {
    if (!in.next()) fail(ErrorCode::InvalidInput, "line " + std::to_string(k + 1) + ": missing rule for symbol " +
                                                      std::to_string(k));
    auto operand = [&](std::size_t field) {
      const std::uint64_t v = in.number(field);
      if (v < 1 || v >= k) in.error("operand " + std::to_string(v) + " of symbol " + std::to_string(k) + " must be in [1.." +
                                    std::to_string(k - 1) + "]");
      return static_cast<SymbolId>(v);
    };
    const auto tag = in.tag();
    if (tag == "T" && in.arity() == 2) {
      const std::uint64_t code = in.number(1);
      if (code > 0xFFFFFFFFull) in.error("terminal code out of range");
      rules.push_back(Rule::terminal(static_cast<Code>(code)));
      len.push_back(1);
    } else if (tag == "P" && in.arity() == 3) {
      const SymbolId l = operand(1), r = operand(2);
      rules.push_back(Rule::pair(l, r));
      len.push_back(checked_add(len[l - 1], len[r - 1]));
    } else if (tag == "R" && in.arity() == 3) {
      const SymbolId b = operand(1);
      const Length d = in.number(2);
      rules.push_back(Rule::run(b, d));
      len.push_back(checked_mul(len[b - 1], d));
    } else {
      in.error("expected 'T <code>', 'P <left> <right>' or 'R <base> <exponent>'");
    }
  }

  std::vector<Level> levels;
  if (in.next()) {
    if (in.tag() != "L" || in.arity() != g + 1) in.error("expected 'L' followed by " + std::to_string(g) + " levels");
    levels.reserve(g);
    for (std::uint64_t k = 1; k <= g; ++k) {
      const std::uint64_t l = in.number(k);
      if (l > 0xFFFFFFFFull) in.error("level out of range");
      levels.push_back(static_cast<Level>(l));
    }
    if (in.next()) in.error("unexpected content after the level record");
  }
  if (levels.empty()) {
    // Files written without levels fall back to derivation heights.
    Rlslp h = Rlslp::from_rules(rules, static_cast<SymbolId>(start));
    levels = h.levels();
  }
  return Rlslp(std::move(rules), static_cast<SymbolId>(start), n, std::move(len), std::move(levels));
}

Rlslp parse_rlslp(const std::string& text) {
  std::istringstream is(text);
  return read_rlslp(is);
}

}  // namespace rlce
