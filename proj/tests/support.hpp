// Copyright 2026 The tiergram Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TIERGRAM_TESTS_SUPPORT_HPP
#define TIERGRAM_TESTS_SUPPORT_HPP

#include <sstream>
#include <string>
#include <vector>

#include "tiergram/grammar_io.hpp"
#include "tiergram/lexer.hpp"
#include "tiergram/testkit.hpp"
#include "tiergram/tree.hpp"

namespace tiergram::test {

inline std::string fixture_path(const std::string& name) {
  return std::string(TIERGRAM_SOURCE_DIR) + "/grammars/" + name + ".json";
}

inline TierGrammar fixture(const std::string& name) { return load_grammar_file(fixture_path(name)); }

// "NUM PLUS NUM" -> {"NUM", "PLUS", "NUM"}
inline std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline std::vector<Token> toks(const std::string& s) { return testkit::tokens_of(words(s)); }

inline Token tok(const std::string& name, std::size_t i) { return Token{name, name, {i, i + 1, 1, i + 1}}; }

namespace detail {

inline bool is_operator(const TierTree& t) {
  return t.kind == NodeKind::prefix || t.kind == NodeKind::postfix || t.kind == NodeKind::connective;
}

// item below an operator node of priority p (or of the same priority when
// the parent is a prefix)
inline bool fits_under_operator(const TierTree& c, std::size_t p, bool same_ok) {
  if (c.kind == NodeKind::base || c.kind == NodeKind::bracket) return true;
  if (!is_operator(c)) return false;
  if (same_ok && c.kind == NodeKind::prefix) return c.priority >= p;
  return c.priority > p;
}

}  // namespace detail

/// First violated structural invariant of a tier tree, or an empty string.
inline std::string tree_problem(const TierTree& t) {
  auto fail = [&](const std::string& why) { return why + " at " + render_sexpr(t); };
  switch (t.kind) {
    case NodeKind::base:
      if (t.tokens.size() != 1 || !t.children.empty()) return fail("base shape");
      break;
    case NodeKind::empty:
      if (!t.tokens.empty() || !t.children.empty()) return fail("empty shape");
      break;
    case NodeKind::bracket:
      if (t.tokens.size() != 2 || t.children.size() != 1) return fail("bracket shape");
      break;
    case NodeKind::prefix:
    case NodeKind::postfix:
      if (t.tokens.size() != 1 || t.children.size() != 1) return fail("unary shape");
      if (!detail::fits_under_operator(t.children[0], t.priority, t.kind == NodeKind::prefix)) {
        return fail("operand priority");
      }
      break;
    case NodeKind::connective:
      if (t.tokens.empty() || t.children.size() != t.tokens.size() + 1) return fail("connective arity");
      for (const auto& c : t.children) {
        if (!detail::fits_under_operator(c, t.priority, false)) return fail("connective operand");
      }
      break;
    case NodeKind::markers:
      if (t.tokens.empty() || t.children.size() != t.tokens.size() + 1) return fail("marker arity");
      for (const auto& c : t.children) {
        if (c.kind == NodeKind::markers && c.priority <= t.priority) return fail("nested marker priority");
      }
      break;
    case NodeKind::sequence:
      if (t.children.size() < 2) return fail("short sequence");
      for (const auto& c : t.children) {
        if (c.kind == NodeKind::empty || c.kind == NodeKind::sequence || c.kind == NodeKind::markers) {
          return fail("sequence child");
        }
      }
      break;
  }
  for (const auto& c : t.children) {
    if (auto p = tree_problem(c); !p.empty()) return p;
  }
  return {};
}

}  // namespace tiergram::test

#endif  // TIERGRAM_TESTS_SUPPORT_HPP
