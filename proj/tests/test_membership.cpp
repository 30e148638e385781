// Copyright 2026 The tiergram Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <optional>
#include <string>

#include "support.hpp"
#include "tiergram/membership.hpp"
#include "tiergram/parser.hpp"

namespace tiergram {
namespace {

using test::fixture;
using test::words;
using Cond = Violation::Condition;

std::optional<Violation> run(const TierGrammar& g, const std::string& s) {
  auto w = words(s);
  return check(g, std::span<const std::string>(w));
}

TEST(Check, PrefixBeforeBracket) { EXPECT_FALSE(run(fixture("g_expr"), "MINUS LPAR NUM RPAR")); }

TEST(Check, ConnectiveBeforeConnective) {
  auto v = run(fixture("g_expr"), "NUM PLUS PLUS NUM");
  ASSERT_TRUE(v);
  EXPECT_EQ(v->condition, Cond::connective_right);
  EXPECT_EQ(v->index, 1U);
}

TEST(Check, PostfixPriorities) {
  auto g = fixture("g_post");
  EXPECT_FALSE(run(g, "W Q BANG"));
  auto v = run(g, "W BANG Q");
  ASSERT_TRUE(v);
  EXPECT_EQ(v->condition, Cond::postfix_context);
  EXPECT_EQ(v->index, 2U);
  EXPECT_EQ(to_string(*v).substr(0, 16), "PostfixContext@2");
}

TEST(Check, UnclosedBracket) {
  auto v = run(fixture("g_expr"), "LPAR NUM");
  ASSERT_TRUE(v);
  EXPECT_EQ(v->condition, Cond::bracket_balance);
  EXPECT_EQ(v->index, 2U);
}

TEST(Check, CsvAcceptsEverything) {
  auto g = fixture("g_csv");
  testkit::for_each_word(testkit::alphabet(g), 6, [&](const testkit::Word& w) {
    EXPECT_FALSE(check(g, std::span<const std::string>(w))) << testkit::join(w);
  });
}

TEST(Check, EdgePositions) {
  auto g = fixture("g_expr");
  EXPECT_EQ(run(g, "MINUS")->condition, Cond::prefix_context);
  EXPECT_EQ(run(g, "PLUS NUM")->condition, Cond::connective_left);
  EXPECT_EQ(run(g, "NUM PLUS")->condition, Cond::connective_right);
  EXPECT_FALSE(run(g, "NUM STAR MINUS NUM"));
}

TEST(Check, ConnectiveRightNeedsHigherPrefix) {
  TierGrammar g;
  g.tokens = {{"N", "n", false}, {"P", "p", false}, {"C", "c", false}};
  g.base = {"N"};
  g.operator_tiers = {{OperatorKind::prefix, {"P"}}, {OperatorKind::connective, {"C"}}};
  auto v = run(g, "N C P N");
  ASSERT_TRUE(v);
  EXPECT_EQ(v->condition, Cond::connective_right);
  EXPECT_FALSE(run(g, "P N C N"));
  EXPECT_FALSE(build_parser(g).table().terminal_count() == 0);
  auto input = test::toks("N C P N");
  EXPECT_FALSE(accepts(build_parser(g), input));
}

TEST(Check, Unclassified) {
  auto v = run(fixture("g_expr"), "NUM FOO");
  ASSERT_TRUE(v);
  EXPECT_EQ(v->condition, Cond::unclassified_token);
  EXPECT_EQ(v->index, 1U);
}

TEST(Check, LeftmostViolation) {
  auto v = run(fixture("g_expr"), "RPAR PLUS");
  ASSERT_TRUE(v);
  EXPECT_EQ(v->condition, Cond::bracket_balance);
  EXPECT_EQ(v->index, 0U);
}

TEST(CheckBalance, Basics) {
  auto g = fixture("g_dyck");
  auto ok = words("L R L R"), bad = words("R L");
  EXPECT_FALSE(check_balance(g, ok));
  auto v = check_balance(g, bad);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->index, 0U);
  EXPECT_FALSE(check_balance(g, std::span<const std::string>()));
}

TEST(CheckBalance, Subsets) {
  auto g = fixture("g_dyck");
  auto s = words("R L R L");
  EXPECT_EQ(check_balance(g, s)->index, 0U);
  EXPECT_EQ(check_balance(g, s, {"L"}, {"X"})->index, 4U);
  EXPECT_EQ(check_balance(g, s, {"X"}, {"R"})->index, 0U);
}

TEST(Check, AgreesWithParserOnFixtures) {
  for (const char* name : {"g_expr", "g_csv", "g_dyck", "g_post"}) {
    auto g = fixture(name);
    auto p = build_parser(g);
    testkit::for_each_word(testkit::alphabet(g), 5, [&](const testkit::Word& w) {
      auto input = testkit::tokens_of(w);
      EXPECT_EQ(!check(g, std::span<const std::string>(w)), accepts(p, input)) << name << ": " << testkit::join(w);
    });
  }
}

TEST(Check, Locality) {
  // swapping a token for another of the same class and priority keeps the verdict
  TierGrammar g;
  g.tokens = {{"A", "a", false}, {"B", "b", false}, {"O", "o", false}, {"P", "p", false},
              {"C", "c", false}, {"D", "d", false}, {"S", "s", false}, {"T", "t", false}};
  g.base = {"A", "B"};
  g.open = {"O"};
  g.close = {"P"};
  g.operator_tiers = {{OperatorKind::connective, {"C", "D"}}, {OperatorKind::postfix, {"S", "T"}}};
  Classifier cls(g);
  auto sigma = testkit::alphabet(g);
  testkit::for_each_word(sigma, 5, [&](const testkit::Word& w) {
    bool verdict = !check(g, std::span<const std::string>(w));
    if (!verdict) return;
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (const auto& other : sigma) {
        if (!(cls(other) == cls(w[i]))) continue;
        auto flipped = w;
        flipped[i] = other;
        EXPECT_FALSE(check(g, std::span<const std::string>(flipped))) << testkit::join(flipped);
      }
    }
  });
}

TEST(Demotion, RemainingBracketsMustBalance) {
  TierGrammar g;
  g.tokens = {{"B0", "b", false}, {"O0", "o", false}, {"O1", "p", false}, {"C0", "c", false}, {"C1", "d", false}};
  g.base = {"B0"};
  g.open = {"O0", "O1"};
  g.close = {"C0", "C1"};
  auto s = words("O0 C1 O1 C0");
  EXPECT_FALSE(check(g, std::span<const std::string>(s)));
  // the demoted pair is balanced in s, but the brackets left behind are not
  EXPECT_FALSE(check_balance(g, s, {"O0"}, {"C0"}));
  EXPECT_TRUE(check_balance(g, s, {"O1"}, {"C1"}));
  auto d = demote(g, {"O0", "C0"});
  auto v = check(d, std::span<const std::string>(s));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->condition, Cond::bracket_balance);
  EXPECT_EQ(v->index, 1U);
}

TEST(Demotion, PreservesMembersWithBalancedRemainingBrackets) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    testkit::GrammarFuzzConfig cfg;
    cfg.seed = seed;
    cfg.max_alphabet = 5;
    auto g = testkit::random_grammar(cfg);
    testkit::Rng rng(seed);
    std::set<std::string> moves;
    for (const auto& t : testkit::alphabet(g)) {
      if (classify(g, t).kind != TermClass::Kind::base && testkit::coin(rng, 40)) moves.insert(t);
    }
    TierGrammar d;
    try {
      d = demote(g, moves);
    } catch (const Error&) {
      continue;
    }
    std::set<std::string> open(d.open.begin(), d.open.end()), close(d.close.begin(), d.close.end());
    testkit::for_each_word(testkit::alphabet(g), 6, [&](const testkit::Word& w) {
      if (check(g, std::span<const std::string>(w))) return;
      if (!open.empty() && check_balance(g, w, open, close)) return;
      EXPECT_FALSE(check(d, std::span<const std::string>(w))) << testkit::join(w);
    });
  }
}

}  // namespace
}  // namespace tiergram
