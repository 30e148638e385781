// Copyright 2026 The tiergram Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <set>
#include <string>

#include "support.hpp"
#include "tiergram/membership.hpp"
#include "tiergram/parser.hpp"
#include "tiergram/testkit.hpp"

namespace tiergram {
namespace {

using namespace testkit;
using test::fixture;
using test::words;

std::set<std::string> joined(const Language& l) {
  std::set<std::string> out;
  for (const auto& w : l.words()) out.insert(join(w));
  return out;
}

TEST(Enumerate, DyckUpToFour) {
  auto l = enumerate_language(fixture("g_dyck"), 4);
  EXPECT_EQ(joined(l), (std::set<std::string>{"", "L R", "L L R R", "L R L R"}));
  EXPECT_EQ(l.size(), 4U);
  EXPECT_EQ(l.count_by_length(6), (std::vector<std::size_t>{1, 0, 1, 0, 2, 0, 0}));
}

TEST(Enumerate, DyckCatalan) {
  auto l = enumerate_language(fixture("g_dyck"), 10);
  EXPECT_EQ(l.count_by_length(10), (std::vector<std::size_t>{1, 0, 1, 0, 2, 0, 5, 0, 14, 0, 42}));
}

TEST(Enumerate, SingleBase) {
  TierGrammar g;
  g.tokens = {{"W", "w", false}};
  g.base = {"W"};
  EXPECT_EQ(joined(enumerate_language(g, 3)), (std::set<std::string>{"", "W", "W W", "W W W"}));
}

TEST(Enumerate, ExprMembership) {
  auto l = enumerate_language(fixture("g_expr"), 4);
  EXPECT_FALSE(l.contains(words("NUM PLUS")));
  EXPECT_TRUE(l.contains(words("MINUS LPAR NUM RPAR")));
  EXPECT_TRUE(l.contains(words("")));
  EXPECT_TRUE(l.contains(words("NUM ID")));
  auto ws = l.words();
  for (std::size_t i = 1; i < ws.size(); ++i) EXPECT_LE(ws[i - 1].size(), ws[i].size());
}

TEST(Enumerate, LimitExceeded) {
  try {
    enumerate_language(fixture("g_dyck"), 11);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::limit_exceeded);
  }
}

TEST(Enumerate, AgreesWithCheck) {
  for (const char* name : {"g_expr", "g_post", "g_csv"}) {
    auto g = fixture(name);
    auto l = enumerate_language(g, 4);
    for_each_word(alphabet(g), 4, [&](const Word& w) {
      EXPECT_EQ(l.contains(w), !check(g, std::span<const std::string>(w))) << name << ": " << join(w);
    });
  }
}

TEST(Oracle, Counts) {
  auto c = generate_cfg(fixture("g_expr"));
  auto one = words("NUM PLUS NUM"), none = words("PLUS");
  EXPECT_EQ(oracle_parse(c, std::span<const std::string>(one)).count, 1);
  EXPECT_EQ(oracle_parse(c, std::span<const std::string>(none)).count, 0);
  EXPECT_EQ(oracle_parse(c, std::span<const std::string>()).count, 1);
}

TEST(Oracle, TreeMatchesParser) {
  auto g = fixture("g_expr");
  auto c = generate_cfg(g);
  auto p = build_parser(g);
  for (const char* s : {"MINUS LPAR NUM PLUS ID RPAR STAR NUM", "NUM ID PLUS NUM", "", "LPAR RPAR"}) {
    auto input = test::toks(s);
    auto r = oracle_parse(c, std::span<const Token>(input));
    ASSERT_EQ(r.count, 1) << s;
    ASSERT_TRUE(r.tree);
    EXPECT_EQ(to_tier_tree(c, *r.tree), parse(p, input)) << s;
  }
}

TEST(Earley, PushPop) {
  auto c = generate_cfg(fixture("g_dyck"));
  EarleyRecognizer e(c);
  EXPECT_TRUE(e.accepts());
  EXPECT_TRUE(e.push("L"));
  EXPECT_FALSE(e.accepts());
  EXPECT_TRUE(e.push("R"));
  EXPECT_TRUE(e.accepts());
  EXPECT_FALSE(e.push("R"));
  EXPECT_FALSE(e.alive());
  e.pop();
  EXPECT_TRUE(e.alive());
  EXPECT_TRUE(e.accepts());
  EXPECT_EQ(e.length(), 2U);
}

TEST(Earley, AgreesWithOracle) {
  auto g = fixture("g_expr");
  auto c = generate_cfg(g);
  for_each_word(alphabet(g), 4, [&](const Word& w) {
    EarleyRecognizer e(c);
    for (const auto& t : w) e.push(t);
    EXPECT_EQ(e.accepts(), oracle_parse(c, std::span<const std::string>(w)).count == 1) << join(w);
  });
}

TEST(ClosedForms, Expr) {
  auto g = fixture("g_expr");
  EXPECT_EQ(closed_first_e(g, 3), (TerminalSet{"ID", "LPAR", "MINUS", "NUM"}));
  EXPECT_EQ(closed_follow_d(g), (TerminalSet{"$", "RPAR"}));
  EXPECT_EQ(closed_first_items(g), (TerminalSet{"ID", "LPAR", "MINUS", "NUM"}));
}

TEST(RandomGrammar, Deterministic) {
  GrammarFuzzConfig cfg;
  cfg.seed = 42;
  EXPECT_EQ(random_grammar(cfg), random_grammar(cfg));
  cfg.seed = 43;
  std::set<std::size_t> sizes;
  for (std::uint64_t s = 0; s < 50; ++s) {
    cfg.seed = s;
    auto g = random_grammar(cfg);
    EXPECT_TRUE(validate(g).empty());
    EXPECT_TRUE(!g.base.empty() || !g.open.empty());
    sizes.insert(g.tokens.size());
  }
  EXPECT_GT(sizes.size(), 3U);
}

TEST(RandomGrammar, AlphabetBound) {
  GrammarFuzzConfig cfg;
  cfg.max_alphabet = 5;
  for (std::uint64_t s = 0; s < 100; ++s) {
    cfg.seed = s;
    EXPECT_LE(random_grammar(cfg).tokens.size(), 5U);
  }
  cfg.brackets = false;
  for (std::uint64_t s = 0; s < 100; ++s) {
    cfg.seed = s;
    EXPECT_TRUE(random_grammar(cfg).open.empty());
  }
}

TEST(RandomString, Biases) {
  Rng rng(42);
  for (std::uint64_t s = 0; s < 40; ++s) {
    GrammarFuzzConfig cfg;
    cfg.seed = s;
    auto g = random_grammar(cfg);
    for (int i = 0; i < 50; ++i) {
      auto m = random_string(g, 16, StringBias::member, rng);
      EXPECT_LE(m.size(), 16U);
      EXPECT_FALSE(check(g, std::span<const std::string>(m))) << join(m);
      EXPECT_EQ(random_string(g, 7, StringBias::uniform, rng).size(), 7U);
      random_string(g, 16, StringBias::mutate, rng);
    }
  }
  Rng a(42), b(42);
  auto g = fixture("g_expr");
  EXPECT_EQ(random_string(g, 20, StringBias::member, a), random_string(g, 20, StringBias::member, b));
}

TEST(ForEachWord, CountsAndOrder) {
  std::size_t n = 0, last = 0;
  bool ordered = true;
  for_each_word({"a", "b", "c"}, 3, [&](const Word& w) {
    ordered = ordered && w.size() >= last;
    last = w.size();
    ++n;
  });
  EXPECT_EQ(n, 1U + 3 + 9 + 27);
  EXPECT_TRUE(ordered);
  n = 0;
  for_each_word({}, 3, [&](const Word&) { ++n; });
  EXPECT_EQ(n, 1U);
}

TEST(Triple, SmallRandomGrammars) {
  GrammarFuzzConfig cfg;
  cfg.max_alphabet = 4;
  for (std::uint64_t s = 0; s < 20; ++s) {
    cfg.seed = s;
    auto g = random_grammar(cfg);
    auto c = generate_cfg(g);
    auto p = build_parser(g);
    auto l = enumerate_language(g, 5);
    for_each_word(alphabet(g), 5, [&](const Word& w) {
      bool parsed = accepts(p, tokens_of(w));
      EXPECT_EQ(parsed, !check(g, std::span<const std::string>(w))) << join(w);
      EXPECT_EQ(parsed, l.contains(w)) << join(w);
      EXPECT_EQ(parsed, oracle_parse(c, std::span<const std::string>(w)).count == 1) << join(w);
    });
  }
}

}  // namespace
}  // namespace tiergram
