// Copyright 2026 The tiergram Authors
// SPDX-License-Identifier: Apache-2.0

// Cross-module properties over seeded random grammars.

#include <gtest/gtest.h>

#include <string>

#include "support.hpp"
#include "tiergram/tiergram.hpp"

namespace tiergram {
namespace {

using namespace testkit;

constexpr std::uint64_t kGrammars = 60;

TierGrammar grammar(std::uint64_t seed) {
  GrammarFuzzConfig cfg;
  cfg.seed = seed;
  return random_grammar(cfg);
}

TEST(Properties, GrammarDocumentRoundTrip) {
  for (std::uint64_t s = 0; s < kGrammars; ++s) {
    auto g = grammar(s);
    auto text = save_grammar(g);
    EXPECT_EQ(read_grammar_document(text), g);
    EXPECT_EQ(save_grammar(read_grammar_document(text)), text);
  }
}

TEST(Properties, ParseAgreesWithCheckOnRandomStrings) {
  Rng rng(7);
  for (std::uint64_t s = 0; s < kGrammars; ++s) {
    auto g = grammar(s);
    auto p = build_parser(g);
    MembershipChecker checker(g);
    for (int i = 0; i < 300; ++i) {
      auto bias = static_cast<StringBias>(i % 3);
      auto w = random_string(g, draw(rng, 0, 24), bias, rng);
      EXPECT_EQ(accepts(p, tokens_of(w)), !checker.check(std::span<const std::string>(w))) << s << ": " << join(w);
    }
  }
}

TEST(Properties, TreesOfMembers) {
  Rng rng(11);
  for (std::uint64_t s = 0; s < kGrammars; ++s) {
    auto g = grammar(s);
    auto p = build_parser(g);
    for (int i = 0; i < 100; ++i) {
      auto w = random_string(g, 20, StringBias::member, rng);
      auto input = tokens_of(w);
      auto tree = try_parse(p, input);
      ASSERT_TRUE(tree) << s << ": " << join(w);
      EXPECT_EQ(yield(*tree), input);
      EXPECT_EQ(test::tree_problem(*tree), "") << join(w);
      EXPECT_EQ(to_json(tree_from_json(to_json(*tree))), to_json(*tree));
      TreeReplayer replay;
      ASSERT_TRUE(parse_events(p, std::span<const Token>(input), replay));
      EXPECT_EQ(replay.result(), *tree);
    }
  }
}

TEST(Properties, ExpectedSetIsExact) {
  Rng rng(13);
  for (std::uint64_t s = 0; s < kGrammars; ++s) {
    auto g = grammar(s);
    auto p = build_parser(g);
    auto sigma = alphabet(g);
    for (int i = 0; i < 100; ++i) {
      auto w = random_string(g, 12, StringBias::mutate, rng);
      ParseError err = tiergram::detail::placeholder_error();
      auto input = tokens_of(w);
      if (try_parse(p, input, &err)) continue;
      Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(err.index()));
      for (const auto& t : sigma) {
        auto extended = prefix;
        extended.push_back(t);
        NullSink sink;
        Recognizer r(p, sink);
        bool ok = true;
        for (const auto& name : extended) ok = ok && r.feed(Token{name, name, {}});
        bool listed = std::find(err.expected().begin(), err.expected().end(), t) != err.expected().end();
        EXPECT_EQ(ok, listed) << join(w) << " / " << t;
      }
      NullSink sink;
      Recognizer r(p, sink);
      for (const auto& name : prefix) r.feed(Token{name, name, {}});
      EXPECT_EQ(r.finish(), err.end_allowed()) << join(w);
    }
  }
}

TEST(Properties, MembershipIsClosedUnderMarkerJoin) {
  // two members joined by a lowest-priority marker is again a member
  Rng rng(17);
  for (std::uint64_t s = 0; s < kGrammars; ++s) {
    auto g = grammar(s);
    if (g.q() == 0) continue;
    for (int i = 0; i < 50; ++i) {
      auto a = random_string(g, 10, StringBias::member, rng);
      auto b = random_string(g, 10, StringBias::member, rng);
      a.push_back(g.marker_tiers[0][draw(rng, 0, g.marker_tiers[0].size() - 1)]);
      a.insert(a.end(), b.begin(), b.end());
      EXPECT_FALSE(check(g, std::span<const std::string>(a))) << join(a);
    }
  }
}

TEST(Properties, BracketFreeRegularMatchesParser) {
  Rng rng(19);
  for (std::uint64_t s = 0; s < kGrammars; ++s) {
    GrammarFuzzConfig cfg;
    cfg.seed = s;
    cfg.brackets = false;
    auto g = random_grammar(cfg);
    auto p = build_parser(g);
    auto nfa = TokenNfa::compile(to_regular_cfg(g).body);
    for (int i = 0; i < 200; ++i) {
      auto w = random_string(g, 16, static_cast<StringBias>(i % 3), rng);
      EXPECT_EQ(nfa.matches(w), accepts(p, tokens_of(w))) << join(w);
    }
  }
}

}  // namespace
}  // namespace tiergram
