// Copyright 2026 The tiergram Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TIERGRAM_ERROR_HPP
#define TIERGRAM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace tiergram {

enum class Errc {
  syntax,
  duplicate_token,
  invalid_token_name,
  reserved_token_name,
  disjointness_violation,
  undeclared_token,
  skip_token_classified,
  unclassified_token,
  unbalanced_bracket_classes,
  empty_tier,
  unknown_token,
  invalid_pattern,
  empty_match_pattern,
  no_tokens,
  lex_error,
  invalid_grammar,
  internal_conflict,
  parse_error,
  has_brackets,
  limit_exceeded,
};

inline std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::syntax: return "SyntaxError";
    case Errc::duplicate_token: return "DuplicateToken";
    case Errc::invalid_token_name: return "InvalidTokenName";
    case Errc::reserved_token_name: return "ReservedTokenName";
    case Errc::disjointness_violation: return "DisjointnessViolation";
    case Errc::undeclared_token: return "UndeclaredToken";
    case Errc::skip_token_classified: return "SkipTokenClassified";
    case Errc::unclassified_token: return "UnclassifiedToken";
    case Errc::unbalanced_bracket_classes: return "UnbalancedBracketClasses";
    case Errc::empty_tier: return "EmptyTier";
    case Errc::unknown_token: return "UnknownToken";
    case Errc::invalid_pattern: return "InvalidPattern";
    case Errc::empty_match_pattern: return "EmptyMatchPattern";
    case Errc::no_tokens: return "NoTokens";
    case Errc::lex_error: return "LexError";
    case Errc::invalid_grammar: return "InvalidGrammar";
    case Errc::internal_conflict: return "InternalConflict";
    case Errc::parse_error: return "ParseError";
    case Errc::has_brackets: return "HasBrackets";
    case Errc::limit_exceeded: return "LimitExceeded";
  }
  return "Unknown";
}

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tiergram

#endif  // TIERGRAM_ERROR_HPP
