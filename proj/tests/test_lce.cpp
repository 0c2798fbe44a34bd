#include <doctest.h>

#include <cmath>

#include "rlce/lce.hpp"
#include "rlce/recompress.hpp"
#include "support.hpp"

using namespace rlce;
using namespace rlce::testing;

TEST_CASE("naive scan") {
  CHECK(naive_lce(std::string_view("abaabaabb"), 1, 4) == 5);
  CHECK(naive_lce(std::string_view("ab"), 1, 2) == 0);
  CHECK(naive_lce(std::string_view("abc"), 2, 2) == 2);
  CHECK_THROWS_AS(naive_lce(std::string_view("abc"), 0, 1), Error);
  CHECK_THROWS_AS(naive_lce(std::string_view("abc"), 1, 4), Error);
}

TEST_CASE("lce on the worked example") {
  const Rlslp g = ttog(std::string_view("abaabaabb"));
  CHECK(lce(g, 1, 4) == 5);
  CHECK(lce(g, 4, 1) == 5);
  CHECK(lce(g, 1, 2) == 0);
  for (Position i = 1; i <= 9; ++i) CHECK(lce(g, i, i) == 10 - i);
  CHECK_THROWS_AS(lce(g, 1, 10), Error);
  CHECK_THROWS_AS(lce(g, 0, 1), Error);
}

TEST_CASE("lce matches the naive scan on every pair of small texts") {
  std::vector<std::string> texts{"a", "abaabaabb", std::string(64, 'a'), fibonacci_word(10)};
  for (unsigned sigma : {1u, 2u, 4u, 26u}) texts.push_back(random_text(90, sigma, sigma));
  for (const std::string& t : texts) {
    const Rlslp g = ttog(t);
    for (Position i = 1; i <= t.size(); ++i)
      for (Position j = 1; j <= t.size(); ++j) {
        const Length expect = naive_lce(t, i, j);
        if (lce(g, i, j) != expect) {
          FAIL_CHECK("text " << t << " i=" << i << " j=" << j);
        }
      }
  }
}

TEST_CASE("runs advance in one step") {
  const Rlslp g = ttog(std::string(1 << 16, 'a'));
  LceStats s;
  CHECK(lce(g, 1, 2, &s) == (1 << 16) - 1);
  CHECK(s.steps <= 32 * 17);
  CHECK(s.max_stack_depth >= 1);
}

TEST_CASE("step counts stay logarithmic on a random text") {
  const std::string t = random_text(20000, 2, 42);
  const Rlslp g = ttog(t);
  std::mt19937_64 rng(1);
  const double bound = 32 * (1 + std::log2(static_cast<double>(t.size())));
  for (int q = 0; q < 2000; ++q) {
    const Position i = 1 + rng() % t.size(), j = 1 + rng() % t.size();
    LceStats s;
    CHECK(lce(g, i, j, &s) == naive_lce(t, i, j));
    CHECK(static_cast<double>(s.steps) <= bound);
  }
}

TEST_CASE("lce on integer-token texts") {
  const std::vector<Code> t{9, 300, 9, 300, 9, 7};
  const Rlslp g = ttog(std::span<const Code>(t));
  CHECK(lce(g, 1, 3) == 3);
  CHECK(lce(g, 2, 4) == 2);
}
