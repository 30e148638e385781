// Copyright 2026 The tiergram Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TIERGRAM_MEMBERSHIP_HPP
#define TIERGRAM_MEMBERSHIP_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tiergram/grammar.hpp"
#include "tiergram/lexer.hpp"

namespace tiergram {

/// Membership is decided by local conditions on adjacent tokens plus one
/// bracket counter; no parse table is involved.
struct Violation {
  enum class Condition {
    bracket_balance,
    postfix_context,
    prefix_context,
    connective_left,
    connective_right,
    unclassified_token,
  };

  Condition condition;
  std::size_t index;  // equals the input length for unmatched opening brackets
  std::string explanation;

  friend bool operator==(const Violation&, const Violation&) = default;
};

inline std::string_view to_string(Violation::Condition c) {
  switch (c) {
    case Violation::Condition::bracket_balance: return "BracketBalance";
    case Violation::Condition::postfix_context: return "PostfixContext";
    case Violation::Condition::prefix_context: return "PrefixContext";
    case Violation::Condition::connective_left: return "ConnectiveLeft";
    case Violation::Condition::connective_right: return "ConnectiveRight";
    case Violation::Condition::unclassified_token: return "UnclassifiedToken";
  }
  return "?";
}

/// "condition@index: explanation"
inline std::string to_string(const Violation& v) {
  return std::string(to_string(v.condition)) + "@" + std::to_string(v.index) + ": " + v.explanation;
}

namespace detail {

using K = TermClass::Kind;

// left neighbour of a postfix or connective of priority p
inline bool ends_item_below(const TermClass* left, std::size_t p) {
  if (left == nullptr) return false;
  return left->kind == K::base || left->kind == K::close || (left->kind == K::postfix && left->priority > p);
}

}  // namespace detail

/// Decides membership from the token classes in a single left-to-right pass.
/// Returns the leftmost violation, or nullopt when the string is accepted.
inline std::optional<Violation> check_classes(std::span<const TermClass> s) {
  using detail::K;
  using Cond = Violation::Condition;
  const std::size_t n = s.size();
  long depth = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const TermClass& c = s[i];
    const TermClass* left = i > 0 ? &s[i - 1] : nullptr;
    const TermClass* right = i + 1 < n ? &s[i + 1] : nullptr;
    switch (c.kind) {
      case K::unclassified: return Violation{Cond::unclassified_token, i, "token is not classified by the grammar"};
      case K::open: ++depth; break;
      case K::close:
        if (--depth < 0) return Violation{Cond::bracket_balance, i, "closing bracket without a matching opening bracket"};
        break;
      case K::postfix:
        if (!detail::ends_item_below(left, c.priority)) {
          return Violation{Cond::postfix_context, i,
                           "postfix must follow a base token, a closing bracket or a postfix of higher priority"};
        }
        break;
      case K::prefix:
        if (right == nullptr || !(right->kind == K::base || right->kind == K::open ||
                                  (right->kind == K::prefix && right->priority >= c.priority))) {
          return Violation{Cond::prefix_context, i,
                           "prefix must precede a base token, an opening bracket or a prefix of the same or higher "
                           "priority"};
        }
        break;
      case K::connective:
        if (!detail::ends_item_below(left, c.priority)) {
          return Violation{Cond::connective_left, i,
                           "connective must follow a base token, a closing bracket or a postfix of higher priority"};
        }
        if (right == nullptr || !(right->kind == K::base || right->kind == K::open ||
                                  (right->kind == K::prefix && right->priority > c.priority))) {
          return Violation{Cond::connective_right, i,
                           "connective must precede a base token, an opening bracket or a prefix of higher priority"};
        }
        break;
      case K::base:
      case K::marker: break;
    }
  }
  if (depth != 0) return Violation{Cond::bracket_balance, n, "unclosed opening bracket at end of input"};
  return std::nullopt;
}

/// Reusable checker; classifies each token with one lookup.
class MembershipChecker {
 public:
  explicit MembershipChecker(const TierGrammar& g) : classify_(g) {}

  std::optional<Violation> check(std::span<const std::string> names) const {
    std::vector<TermClass> classes;
    classes.reserve(names.size());
    for (const auto& n : names) classes.push_back(classify_(n));
    return check_classes(classes);
  }

  std::optional<Violation> check(std::span<const Token> tokens) const {
    std::vector<TermClass> classes;
    classes.reserve(tokens.size());
    for (const auto& t : tokens) classes.push_back(classify_(t.name));
    return check_classes(classes);
  }

  TermClass classify(std::string_view name) const { return classify_(name); }

 private:
  Classifier classify_;
};

inline std::optional<Violation> check(const TierGrammar& g, std::span<const std::string> names) {
  return MembershipChecker(g).check(names);
}

inline std::optional<Violation> check(const TierGrammar& g, std::span<const Token> tokens) {
  return MembershipChecker(g).check(tokens);
}

/// Bracket balance alone, over the given opening and closing names (all of
/// the grammar's brackets when both are empty).
inline std::optional<Violation> check_balance(const TierGrammar& g, std::span<const std::string> names,
                                              const std::set<std::string>& open = {},
                                              const std::set<std::string>& close = {}) {
  std::set<std::string> opens = open, closes = close;
  if (opens.empty() && closes.empty()) {
    opens.insert(g.open.begin(), g.open.end());
    closes.insert(g.close.begin(), g.close.end());
  }
  long depth = 0;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (opens.contains(names[i])) {
      ++depth;
    } else if (closes.contains(names[i]) && --depth < 0) {
      return Violation{Violation::Condition::bracket_balance, i, "closing bracket without a matching opening bracket"};
    }
  }
  if (depth != 0) {
    return Violation{Violation::Condition::bracket_balance, names.size(), "unclosed opening bracket at end of input"};
  }
  return std::nullopt;
}

}  // namespace tiergram

#endif  // TIERGRAM_MEMBERSHIP_HPP
