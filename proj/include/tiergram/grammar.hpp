// Copyright 2026 The tiergram Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TIERGRAM_GRAMMAR_HPP
#define TIERGRAM_GRAMMAR_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tiergram/error.hpp"

namespace tiergram {

/// Name of the implicit base token produced by lenient lexing.
inline constexpr std::string_view kOtherToken = "OTHER";

/// Lexical definition of one token. Token names are the parsing terminals.
struct TokenDef {
  std::string name;
  std::string pattern;
  bool skip = false;

  friend bool operator==(const TokenDef&, const TokenDef&) = default;
};

enum class OperatorKind { prefix, postfix, connective };

inline std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::prefix: return "prefix";
    case OperatorKind::postfix: return "postfix";
    case OperatorKind::connective: return "connective";
  }
  return "?";
}

/// One operator priority level. A level holds exactly one kind of operator.
struct OperatorTier {
  OperatorKind kind = OperatorKind::connective;
  std::vector<std::string> terminals;

  friend bool operator==(const OperatorTier&, const OperatorTier&) = default;
};

/// A grammar given entirely by a partition of the terminals into classes.
///
/// Tier lists are ordered by priority: element 0 is priority 1, the loosest
/// binding level. The last marker tier has priority q(), the last operator
/// tier priority k().
struct TierGrammar {
  std::vector<TokenDef> tokens;
  std::vector<std::string> base;
  std::vector<std::string> open;
  std::vector<std::string> close;
  std::vector<std::vector<std::string>> marker_tiers;
  std::vector<OperatorTier> operator_tiers;

  std::size_t q() const { return marker_tiers.size(); }
  std::size_t k() const { return operator_tiers.size(); }
  bool has_brackets() const { return !open.empty() || !close.empty(); }

  const TokenDef* find_token(std::string_view name) const {
    for (const auto& t : tokens) {
      if (t.name == name) return &t;
    }
    return nullptr;
  }

  friend bool operator==(const TierGrammar&, const TierGrammar&) = default;
};

/// Class and priority of one token.
struct TermClass {
  enum class Kind { base, open, close, marker, prefix, postfix, connective, unclassified };

  Kind kind = Kind::unclassified;
  std::size_t priority = 0;  // 1-based; 0 for classes without tiers

  bool is(Kind k) const { return kind == k; }

  friend bool operator==(const TermClass&, const TermClass&) = default;
};

inline std::string to_string(const TermClass& c) {
  auto tiered = [&](const char* name) { return std::string(name) + "(" + std::to_string(c.priority) + ")"; };
  switch (c.kind) {
    case TermClass::Kind::base: return "Base";
    case TermClass::Kind::open: return "Open";
    case TermClass::Kind::close: return "Close";
    case TermClass::Kind::marker: return tiered("Marker");
    case TermClass::Kind::prefix: return tiered("Prefix");
    case TermClass::Kind::postfix: return tiered("Postfix");
    case TermClass::Kind::connective: return tiered("Connective");
    case TermClass::Kind::unclassified: return "Unclassified";
  }
  return "?";
}

inline TermClass::Kind class_kind(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::prefix: return TermClass::Kind::prefix;
    case OperatorKind::postfix: return TermClass::Kind::postfix;
    case OperatorKind::connective: return TermClass::Kind::connective;
  }
  return TermClass::Kind::unclassified;
}

/// Visits every (token name, class) assignment in the grammar, including
/// duplicates, in a fixed order: base, open, close, markers, operators.
template <class Fn>
void for_each_assignment(const TierGrammar& g, Fn&& fn) {
  for (const auto& t : g.base) fn(t, TermClass{TermClass::Kind::base, 0});
  for (const auto& t : g.open) fn(t, TermClass{TermClass::Kind::open, 0});
  for (const auto& t : g.close) fn(t, TermClass{TermClass::Kind::close, 0});
  for (std::size_t i = 0; i < g.marker_tiers.size(); ++i) {
    for (const auto& t : g.marker_tiers[i]) fn(t, TermClass{TermClass::Kind::marker, i + 1});
  }
  for (std::size_t i = 0; i < g.operator_tiers.size(); ++i) {
    for (const auto& t : g.operator_tiers[i].terminals) {
      fn(t, TermClass{class_kind(g.operator_tiers[i].kind), i + 1});
    }
  }
}

/// One failed grammar constraint.
struct GrammarIssue {
  Errc rule;
  std::vector<std::string> tokens;
  std::string message;
};

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s.front())) return false;
  return std::all_of(s.begin() + 1, s.end(), [&](char c) { return alpha(c) || digit(c); });
}

/// Checks every grammar invariant. An empty result means the grammar is valid.
inline std::vector<GrammarIssue> validate(const TierGrammar& g) {
  std::vector<GrammarIssue> issues;

  std::set<std::string> names;
  for (const auto& t : g.tokens) {
    if (!is_identifier(t.name)) {
      issues.push_back({Errc::invalid_token_name, {t.name}, "token name '" + t.name + "' is not an identifier"});
    } else if (t.name == kOtherToken) {
      issues.push_back({Errc::reserved_token_name, {t.name}, "token name OTHER is reserved for lenient lexing"});
    }
    if (!names.insert(t.name).second) {
      issues.push_back({Errc::duplicate_token, {t.name}, "token '" + t.name + "' is declared more than once"});
    }
  }

  std::map<std::string, TermClass> seen;
  for_each_assignment(g, [&](const std::string& name, TermClass c) {
    const TokenDef* def = g.find_token(name);
    if (def == nullptr && name == kOtherToken && c.kind == TermClass::Kind::base) {
      // implicit lenient-lexing token
    } else if (def == nullptr) {
      issues.push_back({Errc::undeclared_token, {name}, "'" + name + "' is classified but not declared"});
    } else if (def->skip) {
      issues.push_back({Errc::skip_token_classified, {name}, "skip token '" + name + "' cannot be classified"});
    }
    auto [it, inserted] = seen.emplace(name, c);
    if (!inserted) {
      issues.push_back({Errc::disjointness_violation,
                        {name},
                        "'" + name + "' is assigned to both " + to_string(it->second) + " and " + to_string(c)});
    }
  });

  for (const auto& t : g.tokens) {
    if (!t.skip && !seen.contains(t.name)) {
      issues.push_back({Errc::unclassified_token, {t.name}, "token '" + t.name + "' is declared but not classified"});
    }
  }

  if (g.open.empty() != g.close.empty()) {
    issues.push_back({Errc::unbalanced_bracket_classes,
                      g.open.empty() ? g.close : g.open,
                      "opening and closing brackets must be both empty or both non-empty"});
  }

  for (std::size_t i = 0; i < g.marker_tiers.size(); ++i) {
    if (g.marker_tiers[i].empty()) {
      issues.push_back({Errc::empty_tier, {}, "marker tier " + std::to_string(i + 1) + " is empty"});
    }
  }
  for (std::size_t i = 0; i < g.operator_tiers.size(); ++i) {
    if (g.operator_tiers[i].terminals.empty()) {
      issues.push_back({Errc::empty_tier, {}, "operator tier " + std::to_string(i + 1) + " is empty"});
    }
  }
  return issues;
}

/// Throws the first issue reported by validate(), if any.
inline void require_valid(const TierGrammar& g) {
  auto issues = validate(g);
  if (!issues.empty()) throw Error(issues.front().rule, issues.front().message);
}

/// Constant-time classification lookup built once per grammar.
class Classifier {
 public:
  Classifier() = default;
  explicit Classifier(const TierGrammar& g) {
    for_each_assignment(g, [&](const std::string& name, TermClass c) { classes_.emplace(name, c); });
  }

  TermClass operator()(std::string_view name) const {
    auto it = classes_.find(std::string(name));
    return it == classes_.end() ? TermClass{} : it->second;
  }

 private:
  std::unordered_map<std::string, TermClass> classes_;
};

inline TermClass classify(const TierGrammar& g, std::string_view name) {
  TermClass result;
  for_each_assignment(g, [&](const std::string& t, TermClass c) {
    if (t == name && result.kind == TermClass::Kind::unclassified) result = c;
  });
  return result;
}

/// Moves the given tokens into the base class. Tiers left empty are dropped
/// and the remaining tiers keep their relative order.
inline TierGrammar demote(const TierGrammar& g, const std::set<std::string>& moves) {
  require_valid(g);
  for (const auto& m : moves) {
    auto c = classify(g, m);
    if (c.kind == TermClass::Kind::unclassified || c.kind == TermClass::Kind::base) {
      throw Error(Errc::unknown_token, "'" + m + "' is not a classified non-base token");
    }
  }

  auto keep = [&](const std::vector<std::string>& set) {
    std::vector<std::string> out;
    for (const auto& t : set) {
      if (!moves.contains(t)) out.push_back(t);
    }
    return out;
  };

  TierGrammar out;
  out.tokens = g.tokens;
  out.base = g.base;
  out.open = keep(g.open);
  out.close = keep(g.close);
  for (const auto& tier : g.marker_tiers) {
    auto kept = keep(tier);
    if (!kept.empty()) out.marker_tiers.push_back(std::move(kept));
  }
  for (const auto& tier : g.operator_tiers) {
    auto kept = keep(tier.terminals);
    if (!kept.empty()) out.operator_tiers.push_back({tier.kind, std::move(kept)});
  }
  // appended in class order so the result does not depend on set ordering
  for_each_assignment(g, [&](const std::string& t, TermClass c) {
    if (c.kind != TermClass::Kind::base && moves.contains(t)) out.base.push_back(t);
  });

  if (out.open.empty() != out.close.empty()) {
    throw Error(Errc::unbalanced_bracket_classes, "demotion leaves only one bracket class non-empty");
  }
  return out;
}

/// Returns g extended with the implicit OTHER base token used by lenient lexing.
inline TierGrammar with_lenient_fallback(TierGrammar g) {
  if (std::find(g.base.begin(), g.base.end(), kOtherToken) == g.base.end()) g.base.emplace_back(kOtherToken);
  return g;
}

}  // namespace tiergram

#endif  // TIERGRAM_GRAMMAR_HPP
