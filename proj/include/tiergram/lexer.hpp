// Copyright 2026 The tiergram Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TIERGRAM_LEXER_HPP
#define TIERGRAM_LEXER_HPP

#include <cstddef>
#include <cstdio>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "tiergram/error.hpp"
#include "tiergram/grammar.hpp"

namespace tiergram {

/// Byte range [start, end) plus the 1-based line and column of start.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t line = 1;
  std::size_t column = 1;

  friend bool operator==(const Span&, const Span&) = default;
};

struct Token {
  std::string name;
  std::string lexeme;
  Span span;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Line and column just past the last character of a token.
inline std::pair<std::size_t, std::size_t> end_position(const Token& t) {
  std::size_t line = t.span.line;
  std::size_t column = t.span.column;
  for (char c : t.lexeme) {
    if (c == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

enum class LexMode { strict, lenient };

/// Raised by strict tokenization at the first unmatchable character.
class LexError : public Error {
 public:
  LexError(std::size_t offset, std::size_t line, std::size_t column)
      : Error(Errc::lex_error, std::to_string(line) + ":" + std::to_string(column) + ": no token matches at offset " +
                                   std::to_string(offset)),
        offset_(offset),
        line_(line),
        column_(column) {}

  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t offset_, line_, column_;
};

namespace detail {

/// Rejects '^' and '$' outside bracket expressions.
inline bool has_anchor(std::string_view pattern) {
  bool in_class = false;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    char c = pattern[i];
    if (c == '\\') {
      ++i;
      continue;
    }
    if (in_class) {
      if (c == ']' && i > 0 && pattern[i - 1] != '[' && !(i > 1 && pattern[i - 1] == '^' && pattern[i - 2] == '[')) {
        in_class = false;
      }
      continue;
    }
    if (c == '[') {
      in_class = true;
    } else if (c == '^' || c == '$') {
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Maximal-munch tokenizer over POSIX extended regular expressions.
///
/// At every offset each pattern is tried anchored at that offset; the longest
/// match wins and equal lengths go to the earliest declaration.
class Lexer {
 public:
  static Lexer compile(const std::vector<TokenDef>& defs) {
    if (defs.empty()) throw Error(Errc::no_tokens, "at least one token definition is required");
    Lexer lx;
    for (const auto& d : defs) {
      if (d.pattern.empty()) throw Error(Errc::empty_match_pattern, "token '" + d.name + "' has an empty pattern");
      if (detail::has_anchor(d.pattern)) {
        throw Error(Errc::invalid_pattern, "token '" + d.name + "': anchors are not supported");
      }
      std::regex re;
      try {
        re = std::regex(d.pattern, std::regex::extended | std::regex::optimize);
      } catch (const std::regex_error& e) {
        throw Error(Errc::invalid_pattern, "token '" + d.name + "': " + e.what());
      }
      if (std::regex_match(std::string(), re)) {
        throw Error(Errc::empty_match_pattern, "token '" + d.name + "' matches the empty string");
      }
      lx.rules_.push_back({d.name, d.skip, std::move(re)});
    }
    return lx;
  }

  /// Pull-style tokenization. Holds a view of the text; the text must outlive it.
  class Cursor {
   public:
    Cursor(const Lexer& lexer, std::string_view text, LexMode mode, bool keep_skipped = false)
        : lexer_(&lexer), text_(text), mode_(mode), keep_skipped_(keep_skipped) {}

    std::optional<Token> next() {
      while (pos_ < text_.size()) {
        std::size_t start = pos_;
        auto [rule, len] = lexer_->longest_match(text_, pos_);
        Token tok;
        if (rule == nullptr) {
          if (mode_ == LexMode::strict) throw LexError(pos_, line_, column_);
          std::size_t end = pos_ + 1;
          while (end < text_.size() && lexer_->longest_match(text_, end).first == nullptr) ++end;
          tok.name = std::string(kOtherToken);
          len = end - pos_;
        } else {
          if (rule->skip && !keep_skipped_) {
            advance(len);
            continue;
          }
          tok.name = rule->name;
        }
        tok.lexeme = std::string(text_.substr(start, len));
        tok.span = Span{start, start + len, line_, column_};
        advance(len);
        return tok;
      }
      return std::nullopt;
    }

   private:
    void advance(std::size_t len) {
      for (std::size_t i = 0; i < len; ++i) {
        if (text_[pos_ + i] == '\n') {
          ++line_;
          column_ = 1;
        } else {
          ++column_;
        }
      }
      pos_ += len;
    }

    const Lexer* lexer_;
    std::string_view text_;
    LexMode mode_;
    bool keep_skipped_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
  };

  std::vector<Token> tokenize(std::string_view text, LexMode mode = LexMode::strict,
                              bool keep_skipped = false) const {
    std::vector<Token> out;
    Cursor cursor(*this, text, mode, keep_skipped);
    while (auto t = cursor.next()) out.push_back(std::move(*t));
    return out;
  }

 private:
  struct Rule {
    std::string name;
    bool skip;
    std::regex re;
  };

  std::pair<const Rule*, std::size_t> longest_match(std::string_view text, std::size_t pos) const {
    const Rule* best = nullptr;
    std::size_t best_len = 0;
    std::cmatch m;
    for (const auto& r : rules_) {
      if (std::regex_search(text.data() + pos, text.data() + text.size(), m, r.re,
                            std::regex_constants::match_continuous)) {
        auto len = static_cast<std::size_t>(m.length(0));
        if (len > best_len) {
          best = &r;
          best_len = len;
        }
      }
    }
    return {best, best_len};
  }

  std::vector<Rule> rules_;
};

inline Lexer compile_lexer(const std::vector<TokenDef>& defs) { return Lexer::compile(defs); }

inline std::vector<Token> tokenize(const Lexer& lx, std::string_view text, LexMode mode = LexMode::strict) {
  return lx.tokenize(text, mode);
}

/// Escapes a lexeme for single-line dumps: backslash, tab, CR, LF and other
/// control bytes become C-style escapes.
inline std::string escape_lexeme(std::string_view s) {
  std::string out;
  for (unsigned char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20 || c == 0x7f) {
          char buf[5];
          std::snprintf(buf, sizeof buf, "\\x%02x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

}  // namespace tiergram

#endif  // TIERGRAM_LEXER_HPP
