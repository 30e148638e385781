// Copyright 2026 The tiergram Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TIERGRAM_REGULAR_HPP
#define TIERGRAM_REGULAR_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tiergram/error.hpp"
#include "tiergram/grammar.hpp"

namespace tiergram {

/// Regular expression over token names, possibly referring back to the
/// single nonterminal S.
struct RegexAst {
  enum class Kind { literal, nonterminal_ref, concat, alt, star, empty_string };

  Kind kind = Kind::empty_string;
  std::string name;             // literal only
  std::vector<RegexAst> items;  // concat, alt: operands; star: the single inner expression

  static RegexAst literal(std::string n) { return {Kind::literal, std::move(n), {}}; }
  static RegexAst ref() { return {Kind::nonterminal_ref, "S", {}}; }
  static RegexAst epsilon() { return {Kind::empty_string, {}, {}}; }
  static RegexAst concat(std::vector<RegexAst> xs) {
    if (xs.empty()) throw Error(Errc::invalid_grammar, "empty concatenation");
    return {Kind::concat, {}, std::move(xs)};
  }
  static RegexAst alt(std::vector<RegexAst> xs) {
    if (xs.empty()) throw Error(Errc::invalid_grammar, "empty alternation");
    return {Kind::alt, {}, std::move(xs)};
  }
  static RegexAst star(RegexAst inner) {
    if (inner.kind == Kind::star) return inner;
    return {Kind::star, {}, {std::move(inner)}};
  }
  static RegexAst alt_of(const std::vector<std::string>& names) {
    std::vector<RegexAst> xs;
    for (const auto& n : names) xs.push_back(literal(n));
    return alt(std::move(xs));
  }

  bool has_ref() const {
    if (kind == Kind::nonterminal_ref) return true;
    for (const auto& i : items) {
      if (i.has_ref()) return true;
    }
    return false;
  }

  friend bool operator==(const RegexAst&, const RegexAst&) = default;
};

namespace detail {

/// Builds the single-production body. With bracket_depth < 0 the bracket
/// alternative refers to S; otherwise S is replaced by the expression itself
/// bracket_depth times and the innermost bracket alternative is dropped.
inline RegexAst build_regular(const TierGrammar& g, int bracket_depth) {
  // base terminals and the bracketed alternative
  std::vector<RegexAst> alternatives;
  for (const auto& b : g.base) alternatives.push_back(RegexAst::literal(b));
  if (g.has_brackets() && bracket_depth != 0) {
    RegexAst inner = bracket_depth < 0 ? RegexAst::ref() : build_regular(g, bracket_depth - 1);
    alternatives.push_back(RegexAst::concat({RegexAst::alt_of(g.open), std::move(inner), RegexAst::alt_of(g.close)}));
  }

  // No alternative at all denotes the empty language; its star is epsilon.
  std::optional<RegexAst> r;
  if (!alternatives.empty()) r = RegexAst::alt(std::move(alternatives));

  // operator tiers from the highest priority down
  for (std::size_t i = g.k(); r && i-- > 0;) {
    const auto& tier = g.operator_tiers[i];
    switch (tier.kind) {
      case OperatorKind::postfix: {
        std::vector<RegexAst> opt{RegexAst::epsilon()};
        for (const auto& s : tier.terminals) opt.push_back(RegexAst::literal(s));
        r = RegexAst::concat({std::move(*r), RegexAst::alt(std::move(opt))});
        break;
      }
      case OperatorKind::prefix:
        r = RegexAst::concat({RegexAst::star(RegexAst::alt_of(tier.terminals)), std::move(*r)});
        break;
      case OperatorKind::connective: {
        RegexAst again = *r;
        r = RegexAst::concat(
            {std::move(*r), RegexAst::star(RegexAst::concat({RegexAst::alt_of(tier.terminals), std::move(again)}))});
        break;
      }
    }
  }

  // juxtaposition
  RegexAst out = r ? RegexAst::star(std::move(*r)) : RegexAst::epsilon();

  // marker tiers from the highest priority down
  for (std::size_t i = g.q(); i-- > 0;) {
    RegexAst again = out;
    out = RegexAst::concat(
        {std::move(out), RegexAst::star(RegexAst::concat({RegexAst::alt_of(g.marker_tiers[i]), std::move(again)}))});
  }
  return out;
}

}  // namespace detail

/// The grammar as one production S -> body.
struct RegularCfg {
  RegexAst body;
};

inline RegularCfg to_regular_cfg(const TierGrammar& g) {
  auto issues = validate(g);
  if (!issues.empty()) throw Error(Errc::invalid_grammar, issues.front().message);
  return RegularCfg{detail::build_regular(g, -1)};
}

/// Replaces S by the body `depth` times; the result accepts exactly the
/// members whose bracket nesting is at most `depth`.
inline RegexAst unfold_regular_cfg(const TierGrammar& g, int depth) {
  auto issues = validate(g);
  if (!issues.empty()) throw Error(Errc::invalid_grammar, issues.front().message);
  return detail::build_regular(g, depth < 0 ? 0 : depth);
}

/// Grouping-faithful rendering: every alternation keeps its parentheses
/// unless it is a single token name, e.g. ((FIELD)* (COMMA (FIELD)*)*).
inline std::string render_regular(const RegexAst& r) {
  using K = RegexAst::Kind;
  switch (r.kind) {
    case K::literal: return r.name;
    case K::nonterminal_ref: return "S";
    case K::empty_string: return "ε";
    case K::alt: {
      if (r.items.size() == 1 && r.items[0].kind == K::literal) return r.items[0].name;
      std::string out = "(";
      for (std::size_t i = 0; i < r.items.size(); ++i) {
        if (i) out += " | ";
        out += render_regular(r.items[i]);
      }
      return out + ")";
    }
    case K::concat: {
      std::string out;
      for (std::size_t i = 0; i < r.items.size(); ++i) {
        if (i) out += ' ';
        const auto& item = r.items[i];
        out += item.kind == K::concat ? "(" + render_regular(item) + ")" : render_regular(item);
      }
      return out;
    }
    case K::star: {
      const auto& inner = r.items[0];
      if (inner.kind == K::literal) return inner.name + "*";
      return "(" + render_regular(inner) + ")*";
    }
  }
  return {};
}

inline std::string render_regular_cfg(const RegularCfg& c) { return "S -> " + render_regular(c.body); }

namespace detail {

struct Rendered {
  std::string text;
  int level;  // 0 alternation, 1 concatenation, 2 postfix operator applied, 3 atom
};

struct RegexStyle {
  std::string concat_sep;
  std::string alt_sep;
  std::map<std::string, std::string> atoms;  // empty: token names are atoms
};

inline Rendered render_conventional(const RegexAst& r, const RegexStyle& style) {
  using K = RegexAst::Kind;
  auto atomic = [](const Rendered& x) { return x.level >= 3 ? x.text : "(" + x.text + ")"; };
  switch (r.kind) {
    case K::literal: {
      auto it = style.atoms.find(r.name);
      return {it == style.atoms.end() ? r.name : it->second, 3};
    }
    case K::nonterminal_ref: return {"S", 3};
    case K::empty_string: return {"()", 3};
    case K::star: return {atomic(render_conventional(r.items[0], style)) + "*", 2};
    case K::concat: {
      std::string out;
      for (std::size_t i = 0; i < r.items.size(); ++i) {
        auto x = render_conventional(r.items[i], style);
        if (i) out += style.concat_sep;
        out += x.level >= 1 ? x.text : "(" + x.text + ")";
      }
      return {out, 1};
    }
    case K::alt: {
      bool optional = false;
      std::vector<Rendered> parts;
      for (const auto& item : r.items) {
        if (item.kind == K::empty_string) {
          optional = true;
        } else {
          parts.push_back(render_conventional(item, style));
        }
      }
      if (parts.empty()) return {"()", 3};
      Rendered body = parts.front();
      if (parts.size() > 1) {
        body.text.clear();
        for (std::size_t i = 0; i < parts.size(); ++i) {
          if (i) body.text += style.alt_sep;
          body.text += parts[i].text;
        }
        body.level = 0;
      }
      if (optional) return {atomic(body) + "?", 2};
      return body;
    }
  }
  return {};
}

inline bool is_regex_special(char c) {
  return std::string_view(".[]{}()\\*+?|^$").find(c) != std::string_view::npos;
}

}  // namespace detail

/// Conventional regular expression for a bracket-free grammar. Token names
/// are atoms separated by single spaces, e.g. FIELD* (COMMA FIELD*)*.
inline std::string to_regex(const TierGrammar& g) {
  if (g.has_brackets()) throw Error(Errc::has_brackets, "grammars with brackets may define non-regular languages");
  auto cfg = to_regular_cfg(g);
  return detail::render_conventional(cfg.body, {" ", " | ", {}}).text;
}

/// Text-level regular expression for a bracket-free grammar whose token
/// patterns are all single literal characters.
inline std::string to_char_regex(const TierGrammar& g) {
  if (g.has_brackets()) throw Error(Errc::has_brackets, "grammars with brackets may define non-regular languages");
  detail::RegexStyle style{"", "|", {}};
  for (const auto& t : g.tokens) {
    if (t.skip) continue;
    const std::string& p = t.pattern;
    char c;
    if (p.size() == 1 && !detail::is_regex_special(p[0])) {
      c = p[0];
    } else if (p.size() == 2 && p[0] == '\\') {
      c = p[1];
    } else {
      throw Error(Errc::invalid_pattern, "token '" + t.name + "' is not a single literal character");
    }
    style.atoms[t.name] = detail::is_regex_special(c) ? std::string{'\\', c} : std::string{c};
  }
  return detail::render_conventional(to_regular_cfg(g).body, style).text;
}

/// Thompson automaton over token names for reference-free expressions.
class TokenNfa {
 public:
  using State = std::vector<std::uint64_t>;

  static TokenNfa compile(const RegexAst& ast) {
    if (ast.has_ref()) throw Error(Errc::has_brackets, "expression still refers to S");
    TokenNfa nfa;
    auto [s, f] = nfa.build(ast);
    nfa.start_ = s;
    nfa.final_ = f;
    nfa.close_all();
    return nfa;
  }

  State start() const { return closure_[start_]; }

  State step(const State& from, std::string_view name) const {
    auto it = symbols_.find(std::string(name));
    State out(words_, 0);
    if (it == symbols_.end()) return out;
    return step(from, it->second);
  }

  State step(const State& from, std::uint32_t symbol) const {
    State out(words_, 0);
    for (std::size_t s = 0; s < edges_.size(); ++s) {
      if (!(from[s / 64] >> (s % 64) & 1U)) continue;
      for (const auto& [sym, to] : edges_[s]) {
        if (sym != symbol) continue;
        const State& c = closure_[to];
        for (std::size_t w = 0; w < words_; ++w) out[w] |= c[w];
      }
    }
    return out;
  }

  bool accepting(const State& s) const { return s[final_ / 64] >> (final_ % 64) & 1U; }

  bool dead(const State& s) const {
    for (auto w : s) {
      if (w) return false;
    }
    return true;
  }

  std::optional<std::uint32_t> symbol(std::string_view name) const {
    auto it = symbols_.find(std::string(name));
    if (it == symbols_.end()) return std::nullopt;
    return it->second;
  }

  bool matches(std::span<const std::string> names) const {
    State s = start();
    for (const auto& n : names) {
      s = step(s, n);
      if (dead(s)) return false;
    }
    return accepting(s);
  }

  std::size_t state_count() const { return edges_.size(); }

 private:
  static constexpr std::uint32_t kEpsilon = 0xffffffffU;

  std::size_t add_state() {
    edges_.emplace_back();
    return edges_.size() - 1;
  }

  std::uint32_t intern(const std::string& name) {
    auto [it, inserted] = symbols_.emplace(name, static_cast<std::uint32_t>(symbols_.size()));
    return it->second;
  }

  std::pair<std::size_t, std::size_t> build(const RegexAst& r) {
    using K = RegexAst::Kind;
    std::size_t s = add_state();
    std::size_t f = add_state();
    switch (r.kind) {
      case K::literal: edges_[s].push_back({intern(r.name), f}); break;
      case K::empty_string: edges_[s].push_back({kEpsilon, f}); break;
      case K::concat: {
        std::size_t cur = s;
        for (const auto& item : r.items) {
          auto [is, ifin] = build(item);
          edges_[cur].push_back({kEpsilon, is});
          cur = ifin;
        }
        edges_[cur].push_back({kEpsilon, f});
        break;
      }
      case K::alt:
        for (const auto& item : r.items) {
          auto [is, ifin] = build(item);
          edges_[s].push_back({kEpsilon, is});
          edges_[ifin].push_back({kEpsilon, f});
        }
        break;
      case K::star: {
        auto [is, ifin] = build(r.items[0]);
        edges_[s].push_back({kEpsilon, is});
        edges_[s].push_back({kEpsilon, f});
        edges_[ifin].push_back({kEpsilon, is});
        edges_[ifin].push_back({kEpsilon, f});
        break;
      }
      case K::nonterminal_ref: break;
    }
    return {s, f};
  }

  void close_all() {
    words_ = (edges_.size() + 63) / 64;
    closure_.assign(edges_.size(), State(words_, 0));
    for (std::size_t s = 0; s < edges_.size(); ++s) {
      std::vector<std::size_t> work{s};
      State& c = closure_[s];
      c[s / 64] |= std::uint64_t{1} << (s % 64);
      while (!work.empty()) {
        std::size_t x = work.back();
        work.pop_back();
        for (const auto& [sym, to] : edges_[x]) {
          if (sym != kEpsilon) continue;
          auto bit = std::uint64_t{1} << (to % 64);
          if (c[to / 64] & bit) continue;
          c[to / 64] |= bit;
          work.push_back(to);
        }
      }
    }
  }

  std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>> edges_;
  std::vector<State> closure_;
  std::map<std::string, std::uint32_t> symbols_;
  std::size_t start_ = 0, final_ = 0, words_ = 0;
};

}  // namespace tiergram

#endif  // TIERGRAM_REGULAR_HPP
