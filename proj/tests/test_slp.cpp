#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rlce/lce.hpp"
#include "rlce/recompress.hpp"
#include "rlce/slp.hpp"
#include "support.hpp"

using namespace rlce;
using namespace rlce::testing;

namespace {

using Letters = std::vector<SymbolId>;
const char* const kAbab = "SLP 4\nT 97\nT 98\nP 1 2\nP 3 3\n";

ShapedCfg make_cfg(std::vector<std::vector<Atom>> rhs, VarId start, Level level = 0) {
  ShapedCfg g;
  g.rhs.push_back({});
  for (auto& r : rhs) g.rhs.push_back(std::move(r));
  g.live.assign(g.rhs.size(), 1);
  g.live[0] = 0;
  g.start = start;
  g.level = level;
  g.refresh();
  return g;
}

// Corpus of SLPs used by the property checks below.
std::vector<Slp> slp_corpus() {
  std::vector<Slp> out;
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 100; ++k) {
    const unsigned n = 1 + static_cast<unsigned>(rng() % 30);
    out.push_back(random_slp(n, 1 + static_cast<unsigned>(rng() % 4), 5000, rng));
  }
  for (unsigned k : {1u, 2u, 3u, 7u, 15u, 20u}) out.push_back(fibonacci_slp(k));
  for (unsigned k : {1u, 2u, 5u, 12u}) out.push_back(doubling_slp(k));
  return out;
}

Partition partition_of(const ShapedCfg& g, const VoccMap& vocc) {
  return choose_partition(cfg_adjacency_list(g, PairWeighting::ByVocc, vocc), g.alphabet());
}

}  // namespace

TEST_CASE("SLP files") {
  const Slp s = parse_slp(kAbab);
  CHECK(s.size() == 4);
  CHECK(s.text_length == 4);
  CHECK(from_codes(expand_slp(s)) == "abab");
  CHECK(from_codes(expand_slp(parse_slp("SLP 1\nT 97\n"))) == "a");

  try {
    parse_slp("SLP 4\nT 97\nT 98\nP 1 9\nP 3 3\n");
    FAIL("forward reference accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInput);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_slp(""), Error);
  CHECK_THROWS_AS(parse_slp("SLP 2\nT 97\n"), Error);
  CHECK_THROWS_AS(parse_slp("SLP 1\nX 97\n"), Error);
  CHECK_THROWS_AS(parse_slp("SLP 1\nT 97\nP 1 1\n"), Error);

  // 2^64 characters overflow the length type.
  std::string big = "SLP 66\nT 97\n";
  for (int k = 2; k <= 66; ++k) big += "P " + std::to_string(k - 1) + " " + std::to_string(k - 1) + "\n";
  try {
    parse_slp(big);
    FAIL("overflow accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Overflow);
  }

  std::ostringstream os;
  write_slp(os, s);
  CHECK(os.str() == kAbab);
}

TEST_CASE("vocc") {
  const VoccMap v = compute_vocc(parse_slp(kAbab));
  CHECK(v == VoccMap{0, 2, 2, 2, 1});
  const Slp chain = doubling_slp(21);
  const VoccMap c = compute_vocc(chain);
  for (unsigned i = 0; i < 21; ++i) CHECK(c[21 - i] == (std::uint64_t{1} << i));
  // Unreachable variables get no occurrences.
  const Slp dead = make_slp({{true, 'a', 0, 0}, {true, 'b', 0, 0}, {false, 0, 1, 1}});
  CHECK(compute_vocc(dead) == VoccMap{0, 2, 0, 1});
}

TEST_CASE("initial grammar") {
  RlslpBuilder b;
  const ShapedCfg g = init_cfg(parse_slp(kAbab), b);
  CHECK(b.size() == 2);
  CHECK(g.start == 4);
  CHECK(g.live_count() == 2);
  CHECK(g.rhs[3] == std::vector<Atom>{Atom::letter(1), Atom::letter(2)});
  CHECK(g.rhs[4] == std::vector<Atom>{Atom::var(3), Atom::var(3)});
  CHECK(g.shape_violations().empty());
  CHECK(g.letter_len[4] == 4);
  CHECK(g.lml[4] == 1);
  CHECK(g.rml[4] == 2);
  CHECK(g.expand_letters(4) == Letters{1, 2, 1, 2});
  CHECK(g.char_lengths(b)[4] == 4);

  RlslpBuilder c;
  CHECK(init_cfg(parse_slp("SLP 1\nT 120\n"), c).empty());
  CHECK(c.size() == 1);

  // Equal terminals next to each other start out as one block atom.
  RlslpBuilder d;
  const ShapedCfg aa = init_cfg(make_slp({{true, 'a', 0, 0}, {false, 0, 1, 1}}), d);
  CHECK(aa.rhs[2] == std::vector<Atom>{Atom::letter(1, 2)});
  CHECK(aa.unary[2]);
}

TEST_CASE("adjacency lists of a grammar") {
  RlslpBuilder b;
  const Slp s = parse_slp(kAbab);
  const ShapedCfg g = init_cfg(s, b);
  const VoccMap v = compute_vocc(s);
  CHECK(cfg_adjacency_list(g, PairWeighting::ByVocc, v) == AdjacencyList{{2, 1, 0, 1}, {2, 1, 1, 2}});
  CHECK(cfg_adjacency_list(g, PairWeighting::Unit, v) == AdjacencyList{{2, 1, 0, 1}, {2, 1, 1, 1}});

  const ShapedCfg single = make_cfg({{Atom::letter(1)}, {Atom::letter(2)}}, 2, 1);
  CHECK(cfg_adjacency_list(single, PairWeighting::Unit, {}).empty());

  ShapedCfg stale = g;
  stale.rhs[3] = {Atom::letter(2), Atom::letter(1)};
  CHECK_THROWS_AS(cfg_adjacency_list(stale, PairWeighting::ByVocc, v), Error);
}

TEST_CASE("pair uncrossing and compression on the abab grammar") {
  RlslpBuilder b;
  const ShapedCfg g = init_cfg(parse_slp(kAbab), b);
  const Partition p{{1}, {2}};
  const ShapedCfg u = uncross_pairs(g, p);
  CHECK(u.rhs == g.rhs);
  const ShapedCfg c = cfg_pcomp(u, p, b);
  CHECK(b.size() == 3);
  CHECK(b.rule(3) == Rule::pair(1, 2));
  CHECK(c.rhs[3] == std::vector<Atom>{Atom::letter(3)});
  CHECK(c.rhs[4] == std::vector<Atom>{Atom::var(3), Atom::var(3)});
  CHECK(c.expand_letters(4) == Letters{3, 3});
  CHECK(c.level == 1);

  // An empty right side may still pop letters but creates no pairs.
  const ShapedCfg n = cfg_pcomp(uncross_pairs(g, {{1, 2}, {}}), {{1, 2}, {}}, b);
  CHECK(n.expand_letters(4) == Letters{1, 2, 1, 2});
  CHECK(b.size() == 3);
}

TEST_CASE("a single-letter variable on the right side vanishes") {
  // X1 -> 2, X2 -> 1 X1, X3 -> X2 3 X1 with 2 on the right.
  const ShapedCfg g =
      make_cfg({{Atom::letter(2)}, {Atom::letter(1), Atom::var(1)}, {Atom::var(2), Atom::letter(3), Atom::var(1)}}, 3,
               1);
  CHECK(g.expand_letters(3) == Letters{1, 2, 3, 2});
  const Partition p{{1, 3}, {2}};
  const ShapedCfg u = uncross_pairs(g, p);
  CHECK(!u.live[1]);
  CHECK(u.rhs[2] == std::vector<Atom>{Atom::letter(1), Atom::letter(2)});
  CHECK(u.rhs[3] == std::vector<Atom>{Atom::var(2), Atom::letter(3), Atom::letter(2)});
  CHECK(u.expand_letters(3) == g.expand_letters(3));
  CHECK(u.shape_violations().empty());

  RlslpBuilder b;
  for (int k = 0; k < 3; ++k) b.add_terminal('a' + k);
  const ShapedCfg c = cfg_pcomp(u, p, b);
  CHECK(c.expand_letters(3) == Letters{4, 5});
  CHECK(b.rule(4) == Rule::pair(1, 2));
  CHECK(b.rule(5) == Rule::pair(3, 2));

  // Compressing before uncrossing trips the audit.
  RlslpBuilder d = b;
  CHECK_THROWS_AS(cfg_pcomp(g, p, d), Error);
}

TEST_CASE("block uncrossing") {
  // X2 -> a a used as X3 -> X2 X2: the use site gets the explicit block a^4.
  RlslpBuilder b;
  const ShapedCfg g = init_cfg(make_slp({{true, 'a', 0, 0}, {false, 0, 1, 1}, {false, 0, 2, 2}}), b);
  std::vector<SymbolId> sigma_b;
  const ShapedCfg u = uncross_blocks(g, &sigma_b);
  CHECK(sigma_b == Letters{1});
  CHECK(!u.live[2]);
  CHECK(u.rhs[3] == std::vector<Atom>{Atom::letter(1, 4)});
  CHECK(u.char_lengths(b)[3] == 4);

  // Distinct letters at every boundary: nothing moves.
  const ShapedCfg plain = make_cfg({{Atom::letter(1), Atom::letter(2)}, {Atom::var(1), Atom::letter(3), Atom::var(1)}}, 2);
  const ShapedCfg same = uncross_blocks(plain, &sigma_b);
  CHECK(sigma_b.empty());
  CHECK(same.rhs == plain.rhs);

  // Boundary runs merge arithmetically: X1 -> a^3 b, X2 -> b X1 a^2 b ...
  const ShapedCfg m = make_cfg({{Atom::letter(1, 3), Atom::letter(2)},
                                {Atom::letter(2), Atom::letter(1), Atom::var(1)},
                                {Atom::var(2), Atom::var(1), Atom::letter(2)}},
                               3);
  const ShapedCfg mu = uncross_blocks(m, &sigma_b);
  CHECK(sigma_b == Letters{1, 2});
  CHECK(mu.expand_letters(3) == m.expand_letters(3));
  CHECK(mu.shape_violations().empty());
  CHECK(mu.rhs[3].back() == Atom::letter(2, 2));
}

TEST_CASE("block compression on a grammar names blocks like the text side") {
  RlslpBuilder b;
  for (int k = 0; k < 4; ++k) b.add_terminal('a' + k);
  const ShapedCfg g = make_cfg({{Atom::letter(1, 2), Atom::letter(2), Atom::letter(1, 3)},
                                {Atom::var(1), Atom::letter(3), Atom::letter(2, 3), Atom::letter(4, 2), Atom::var(1)}},
                               2);
  CfgBlockStats st;
  const ShapedCfg c = cfg_bcomp(g, b, &st);
  CHECK(st.rules == std::vector<BlockRule>{{1, 2, 5}, {1, 3, 6}, {2, 3, 7}, {4, 2, 8}});
  CHECK(st.short_blocks == 4);
  CHECK(st.long_blocks == 0);
  CHECK(c.rhs[1] == std::vector<Atom>{Atom::letter(5), Atom::letter(2), Atom::letter(6)});
  CHECK(c.level == 1);

  RlslpBuilder d = b;
  const ShapedCfg none = make_cfg({{Atom::letter(1), Atom::letter(2)}}, 1);
  CHECK(cfg_bcomp(none, d).rhs == none.rhs);
  CHECK(d.size() == b.size());

  // Exponents above 2|G| are long blocks.
  RlslpBuilder e;
  e.add_terminal('a');
  e.add_terminal('b');
  const ShapedCfg longy = make_cfg({{Atom::letter(1, 100), Atom::letter(2), Atom::letter(1, 3)}}, 1);
  cfg_bcomp(longy, e, &st);
  CHECK(st.long_blocks == 1);
  CHECK(st.short_blocks == 1);
  CHECK(st.rules == std::vector<BlockRule>{{1, 3, 3}, {1, 100, 4}});
}

TEST_CASE("shape checks") {
  ShapedCfg g = make_cfg({{Atom::letter(1)}, {Atom::letter(2)}, {Atom::var(1), Atom::letter(1), Atom::var(2)}}, 3);
  CHECK(g.shape_violations().empty());
  ShapedCfg middle = make_cfg({{Atom::letter(1)}, {Atom::letter(2), Atom::var(1), Atom::letter(2)}, {Atom::var(2)}}, 3);
  CHECK(!middle.shape_violations().empty());
  ShapedCfg three =
      make_cfg({{Atom::letter(1)}, {Atom::var(1), Atom::letter(2), Atom::var(1), Atom::letter(2), Atom::var(1)}}, 2);
  CHECK(!three.shape_violations().empty());
  ShapedCfg unmerged = make_cfg({{Atom::letter(1), Atom::letter(1)}}, 1);
  CHECK(!unmerged.shape_violations().empty());
}

TEST_CASE("grammar-side levels agree with the text-side levels on random SLPs") {
  for (const Slp& slp : slp_corpus()) {
    const std::vector<Code> text = expand_slp(slp);
    const VoccMap vocc = compute_vocc(slp);

    // Block level: uncross + compress versus text block compression.
    RlslpBuilder b;
    ShapedCfg g = init_cfg(slp, b);
    if (g.empty()) continue;
    const Letters t0 = g.expand_letters(g.start);
    RlslpBuilder tb = b;
    std::vector<SymbolId> sigma_b;
    ShapedCfg u = uncross_blocks(g, &sigma_b);
    CHECK(u.expand_letters(u.start) == t0);
    CHECK(u.char_lengths(b)[u.start] == text.size());
    CHECK(u.size() <= g.size() + 2 * slp.size());
    const auto tr = bcomp({t0, 0}, tb);
    CHECK(sigma_b == tr.block_letters);
    ShapedCfg c = cfg_bcomp(u, b);
    CHECK(c.expand_letters(c.start) == tr.output.letters);
    CHECK(c.char_lengths(b)[c.start] == text.size());

    // Pair level.
    const Letters t1 = c.expand_letters(c.start);
    if (t1.size() < 2) continue;
    const Partition p = partition_of(c, vocc);
    CHECK(p == choose_partition(adjacency_list({t1, 1}), c.alphabet()));
    RlslpBuilder pb = b;
    const ShapedCfg up = uncross_pairs(c, p);
    CHECK(up.expand_letters(up.start) == t1);
    CHECK(up.shape_violations().empty());
    const ShapedCfg pc = cfg_pcomp(up, p, b);
    const auto tp = pcomp({t1, 1}, p, pb);
    CHECK(pc.expand_letters(pc.start) == tp.output.letters);
    CHECK(b.size() == pb.size());
  }
}

TEST_CASE("SimTtoG reproduces the text build exactly") {
  for (const Slp& slp : slp_corpus()) {
    const std::vector<Code> text = expand_slp(slp);
    BuildLog log;
    const Rlslp sim = build_from_slp(slp, Schedule::SimTtoG, &log);
    const Rlslp direct = ttog(std::span<const Code>(text));
    CHECK(sim == direct);
    CHECK(validate(sim).empty());
    for (const LevelStat& s : log.stats)
      if (s.on_grammar) CHECK(s.cfg_size_after <= s.cfg_size_before + 2 * slp.size());
  }
}

TEST_CASE("GtoG builds the same text and keeps the grammar small") {
  for (const Slp& slp : slp_corpus()) {
    const std::vector<Code> text = expand_slp(slp);
    BuildLog log;
    const Rlslp g = build_from_slp(slp, Schedule::GtoG, &log);
    CHECK(validate(g).empty());
    CHECK(expand_codes(g, g.start()) == text);
    CHECK(log.max_cfg_size <= 8 * slp.size());
    const double n = slp.size(), big_n = static_cast<double>(text.size());
    CHECK(static_cast<double>(log.long_blocks) <= 2 * std::min(n, big_n / n) + 4);
  }
}

TEST_CASE("small SLPs") {
  for (Schedule s : {Schedule::SimTtoG, Schedule::GtoG}) {
    const Rlslp g = build_from_slp(parse_slp(kAbab), s);
    CHECK(expand(g, g.start()) == "abab");
    const Rlslp one = build_from_slp(parse_slp("SLP 1\nT 97\n"), s);
    CHECK(one.size() == 1);
    CHECK(expand(one, one.start()) == "a");
  }
}

TEST_CASE("Fibonacci SLP answers LCE queries like the text build") {
  const Slp slp = fibonacci_slp(25);
  const std::string text = fibonacci_word(25);
  const Rlslp direct = ttog(text);
  std::mt19937_64 rng(25);
  for (Schedule s : {Schedule::SimTtoG, Schedule::GtoG}) {
    const Rlslp g = build_from_slp(slp, s);
    CHECK(g.text_length() == text.size());
    for (int q = 0; q < 1000; ++q) {
      const Position i = 1 + rng() % text.size(), j = 1 + rng() % text.size();
      CHECK(lce(g, i, j) == lce(direct, i, j));
    }
  }
}

TEST_CASE("long blocks on doubling chains") {
  for (unsigned k = 2; k <= 21; ++k) {
    const Slp slp = doubling_slp(k);
    for (Schedule s : {Schedule::SimTtoG, Schedule::GtoG}) {
      BuildLog log;
      const Rlslp g = build_from_slp(slp, s, &log);
      CHECK(g.text_length() == (Length{1} << (k - 1)));
      const double n = k, big_n = static_cast<double>(g.text_length());
      CHECK(static_cast<double>(log.long_blocks) <= std::min(2 * n, 2 * big_n / n));
    }
  }
}
