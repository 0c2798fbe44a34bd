#include "rlce/slp.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace rlce {

Slp make_slp(std::vector<SlpRule> rules) {
  if (rules.empty()) fail(ErrorCode::InvalidInput, "SLP has no variables");
  Slp slp;
  slp.lengths.resize(rules.size());
  for (std::size_t k = 0; k < rules.size(); ++k) {
    const SlpRule& r = rules[k];
    const auto v = static_cast<VarId>(k + 1);
    if (r.terminal) {
      slp.lengths[k] = 1;
      continue;
    }
    for (VarId x : {r.left, r.right})
      if (x < 1 || x >= v)
        fail(ErrorCode::InvalidInput,
             "variable " + std::to_string(v) + " references " + std::to_string(x) + " (operands must be smaller)");
    slp.lengths[k] = checked_add(slp.lengths[r.left - 1], slp.lengths[r.right - 1]);
  }
  slp.rules = std::move(rules);
  slp.text_length = slp.lengths.back();
  return slp;
}

Slp read_slp(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  auto error = [&](const std::string& what) {
    fail(ErrorCode::InvalidInput, "line " + std::to_string(line_no) + ": " + what);
  };
  auto fields = [&]() {
    std::vector<std::string> f;
    std::istringstream ss(line);
    for (std::string t; ss >> t;) f.push_back(t);
    return f;
  };
  auto number = [&](const std::string& f) {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc{} || p != f.data() + f.size()) error("expected a decimal number, got '" + f + "'");
    return v;
  };

  ++line_no;
  if (!std::getline(is, line)) error("empty SLP file");
  auto head = fields();
  if (head.size() != 2 || head[0] != "SLP") error("expected 'SLP <n>'");
  const std::uint64_t n = number(head[1]);
  if (n == 0) error("SLP has no variables");
  if (n >= 0xFFFFFFFFull) error("too many variables");

  std::vector<SlpRule> rules;
  rules.reserve(n);
  for (std::uint64_t k = 1; k <= n; ++k) {
    ++line_no;
    if (!std::getline(is, line)) error("missing rule for variable " + std::to_string(k));
    auto f = fields();
    if (f.size() == 2 && f[0] == "T") {
      const std::uint64_t c = number(f[1]);
      if (c > 0xFFFFFFFFull) error("terminal code out of range");
      rules.push_back({true, static_cast<Code>(c), 0, 0});
    } else if (f.size() == 3 && f[0] == "P") {
      const std::uint64_t l = number(f[1]), r = number(f[2]);
      for (std::uint64_t x : {l, r})
        if (x < 1 || x >= k)
          error("variable " + std::to_string(k) + " references " + std::to_string(x) +
                " (forward or invalid reference)");
      rules.push_back({false, 0, static_cast<VarId>(l), static_cast<VarId>(r)});
    } else {
      error("expected 'T <code>' or 'P <left> <right>'");
    }
  }
  while (std::getline(is, line)) {
    ++line_no;
    if (!fields().empty()) error("unexpected content after the last variable");
  }
  Slp slp = make_slp(std::move(rules));
  // A CNF grammar with n variables generates at most 2^(n-1) characters.
  RLCE_ENSURE(n >= 64 || slp.text_length <= (std::uint64_t{1} << (n - 1)), "SLP longer than 2^(n-1)");
  return slp;
}

Slp parse_slp(const std::string& text) {
  std::istringstream is(text);
  return read_slp(is);
}

void write_slp(std::ostream& os, const Slp& slp) {
  os << "SLP " << slp.size() << '\n';
  for (const SlpRule& r : slp.rules) {
    if (r.terminal)
      os << "T " << r.code << '\n';
    else
      os << "P " << r.left << ' ' << r.right << '\n';
  }
}

std::vector<Code> expand_slp(const Slp& slp, Length max_len) {
  if (slp.text_length > max_len) fail(ErrorCode::OutOfRange, "SLP expansion exceeds budget");
  std::vector<Code> out;
  out.reserve(slp.text_length);
  std::vector<VarId> stack{slp.start()};
  while (!stack.empty()) {
    const VarId v = stack.back();
    stack.pop_back();
    const SlpRule& r = slp.rule(v);
    if (r.terminal) {
      out.push_back(r.code);
    } else {
      stack.push_back(r.right);
      stack.push_back(r.left);
    }
  }
  return out;
}

VoccMap compute_vocc(const Slp& slp) {
  VoccMap vocc(slp.size() + 1, 0);
  vocc[slp.start()] = 1;
  for (VarId v = slp.size(); v >= 1; --v) {
    const SlpRule& r = slp.rule(v);
    if (r.terminal || vocc[v] == 0) continue;
    vocc[r.left] = checked_add(vocc[r.left], vocc[v]);
    vocc[r.right] = checked_add(vocc[r.right], vocc[v]);
  }
  return vocc;
}

}  // namespace rlce
