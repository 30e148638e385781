// Copyright 2026 The tiergram Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TIERGRAM_CFG_HPP
#define TIERGRAM_CFG_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tiergram/error.hpp"
#include "tiergram/grammar.hpp"

namespace tiergram {

/// Fixed nonterminal schema of the generated context-free grammar.
enum class NtTag : std::uint8_t { S, A, B, C, D, F, H, E, G, L, Q, R };

struct Nonterminal {
  NtTag tag = NtTag::S;
  std::uint32_t index = 0;  // 1-based tier index for E, G, L, Q, R; 0 otherwise

  static Nonterminal of(NtTag t, std::uint32_t i = 0) { return Nonterminal{t, i}; }

  bool indexed() const {
    return tag == NtTag::E || tag == NtTag::G || tag == NtTag::L || tag == NtTag::Q || tag == NtTag::R;
  }

  std::string name() const {
    static constexpr const char* names[] = {"S", "A", "B", "C", "D", "F", "H", "E", "G", "L", "Q", "R"};
    std::string n = names[static_cast<int>(tag)];
    if (indexed()) n += "_" + std::to_string(index);
    return n;
  }

  friend auto operator<=>(const Nonterminal&, const Nonterminal&) = default;
};

/// Grammar symbol. The end marker only appears in lookahead sets, never in bodies.
struct Symbol {
  enum class Kind : std::uint8_t { terminal, nonterminal, end };

  Kind kind = Kind::terminal;
  std::string terminal;
  Nonterminal nonterminal;

  static Symbol term(std::string name) { return Symbol{Kind::terminal, std::move(name), {}}; }
  static Symbol nt(Nonterminal n) { return Symbol{Kind::nonterminal, {}, n}; }
  static Symbol nt(NtTag t, std::uint32_t i = 0) { return nt(Nonterminal::of(t, i)); }

  bool is_terminal() const { return kind == Kind::terminal; }
  bool is_nonterminal() const { return kind == Kind::nonterminal; }

  std::string name() const { return kind == Kind::terminal ? terminal : kind == Kind::end ? "$" : nonterminal.name(); }

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Name used for the end-of-input marker inside lookahead sets.
inline const std::string kEndMarker = "$";

struct Production {
  Nonterminal head;
  std::vector<Symbol> body;  // empty body = epsilon

  friend bool operator==(const Production&, const Production&) = default;
};

struct Cfg {
  Nonterminal start = Nonterminal::of(NtTag::S);
  std::vector<Production> productions;
  std::vector<Nonterminal> nonterminals;  // heads in first-appearance order
  std::vector<std::string> terminals;     // classified tokens in declaration order

  std::vector<std::size_t> productions_of(Nonterminal n) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < productions.size(); ++i) {
      if (productions[i].head == n) out.push_back(i);
    }
    return out;
  }

  bool has(Nonterminal n) const {
    for (const auto& m : nonterminals) {
      if (m == n) return true;
    }
    return false;
  }
};

/// Instantiates the production templates for a valid tier grammar.
///
/// Empty classes elide their nonterminals: without operators C stands in for
/// E_1, without markers S derives D directly, without base terminals A is
/// omitted and without brackets B, F and H are omitted. When neither base
/// terminals nor brackets exist no item can be built and D only derives the
/// empty string.
inline Cfg generate_cfg(const TierGrammar& g) {
  auto issues = validate(g);
  if (!issues.empty()) throw Error(Errc::invalid_grammar, issues.front().message);

  Cfg cfg;
  auto add = [&](Nonterminal head, std::vector<Symbol> body) {
    if (!cfg.has(head)) cfg.nonterminals.push_back(head);
    cfg.productions.push_back({head, std::move(body)});
  };
  using T = NtTag;
  const auto q = static_cast<std::uint32_t>(g.q());
  const auto k = static_cast<std::uint32_t>(g.k());
  const bool has_items = !g.base.empty() || g.has_brackets();

  std::set<std::string> classified;
  for_each_assignment(g, [&](const std::string& t, TermClass) { classified.insert(t); });
  for (const auto& t : g.tokens) {
    if (classified.contains(t.name)) cfg.terminals.push_back(t.name);
  }
  for (const auto& t : g.base) {
    if (t == kOtherToken && g.find_token(t) == nullptr) cfg.terminals.push_back(t);
  }

  // markers
  add(Nonterminal::of(T::S), {q > 0 ? Symbol::nt(T::Q, 1) : Symbol::nt(T::D)});
  for (std::uint32_t i = 1; i <= q; ++i) {
    Symbol inner = i < q ? Symbol::nt(T::Q, i + 1) : Symbol::nt(T::D);
    add(Nonterminal::of(T::Q, i), {inner, Symbol::nt(T::R, i)});
    add(Nonterminal::of(T::R, i), {});
    for (const auto& m : g.marker_tiers[i - 1]) add(Nonterminal::of(T::R, i), {Symbol::term(m), inner, Symbol::nt(T::R, i)});
  }

  // item sequences
  add(Nonterminal::of(T::D), {});
  if (has_items) {
    add(Nonterminal::of(T::D), {k > 0 ? Symbol::nt(T::E, 1) : Symbol::nt(T::C), Symbol::nt(T::D)});

    for (std::uint32_t i = 1; i <= k; ++i) {
      const auto& tier = g.operator_tiers[i - 1];
      Nonterminal e = Nonterminal::of(T::E, i);
      Symbol next = i < k ? Symbol::nt(T::E, i + 1) : Symbol::nt(T::C);
      switch (tier.kind) {
        case OperatorKind::postfix:
          add(e, {next, Symbol::nt(T::G, i)});
          add(Nonterminal::of(T::G, i), {});
          for (const auto& s : tier.terminals) add(Nonterminal::of(T::G, i), {Symbol::term(s)});
          break;
        case OperatorKind::prefix:
          add(e, {next});
          for (const auto& p : tier.terminals) add(e, {Symbol::term(p), Symbol::nt(e)});
          break;
        case OperatorKind::connective:
          add(e, {next, Symbol::nt(T::L, i)});
          add(Nonterminal::of(T::L, i), {});
          for (const auto& c : tier.terminals) add(Nonterminal::of(T::L, i), {Symbol::term(c), next, Symbol::nt(T::L, i)});
          break;
      }
    }

    if (!g.base.empty()) add(Nonterminal::of(T::C), {Symbol::nt(T::A)});
    if (g.has_brackets()) add(Nonterminal::of(T::C), {Symbol::nt(T::B)});
    for (const auto& b : g.base) add(Nonterminal::of(T::A), {Symbol::term(b)});
    if (g.has_brackets()) {
      add(Nonterminal::of(T::B), {Symbol::nt(T::F), Symbol::nt(T::S), Symbol::nt(T::H)});
      for (const auto& r : g.open) add(Nonterminal::of(T::F), {Symbol::term(r)});
      for (const auto& e : g.close) add(Nonterminal::of(T::H), {Symbol::term(e)});
    }
  }
  return cfg;
}

using TerminalSet = std::set<std::string>;

struct FirstSets {
  std::map<Nonterminal, TerminalSet> first;
  std::map<Nonterminal, bool> nullable;

  /// FIRST of a symbol string; second is true when the string is nullable.
  std::pair<TerminalSet, bool> of(const std::vector<Symbol>& seq, std::size_t from = 0) const {
    TerminalSet out;
    for (std::size_t i = from; i < seq.size(); ++i) {
      const auto& s = seq[i];
      if (s.is_terminal()) {
        out.insert(s.terminal);
        return {out, false};
      }
      const auto& f = first.at(s.nonterminal);
      out.insert(f.begin(), f.end());
      if (!nullable.at(s.nonterminal)) return {out, false};
    }
    return {out, true};
  }
};

/// Least fixed point of the FIRST equations.
inline FirstSets first_sets(const Cfg& c) {
  FirstSets fs;
  for (const auto& n : c.nonterminals) {
    fs.first[n];
    fs.nullable[n] = false;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : c.productions) {
      auto [f, nullable] = fs.of(p.body);
      auto& dst = fs.first[p.head];
      for (const auto& t : f) changed |= dst.insert(t).second;
      if (nullable && !fs.nullable[p.head]) {
        fs.nullable[p.head] = true;
        changed = true;
      }
    }
  }
  return fs;
}

/// Least fixed point of the FOLLOW equations; FOLLOW(start) contains "$".
inline std::map<Nonterminal, TerminalSet> follow_sets(const Cfg& c, const FirstSets& fs) {
  std::map<Nonterminal, TerminalSet> follow;
  for (const auto& n : c.nonterminals) follow[n];
  follow[c.start].insert(kEndMarker);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : c.productions) {
      for (std::size_t i = 0; i < p.body.size(); ++i) {
        if (!p.body[i].is_nonterminal()) continue;
        auto& dst = follow[p.body[i].nonterminal];
        auto [rest, nullable] = fs.of(p.body, i + 1);
        for (const auto& t : rest) changed |= dst.insert(t).second;
        if (nullable) {
          for (const auto& t : follow[p.head]) changed |= dst.insert(t).second;
        }
      }
    }
  }
  return follow;
}

/// FIRST computed over reversed bodies: terminals that can end a derivation.
inline std::map<Nonterminal, TerminalSet> last_sets(const Cfg& c) {
  Cfg reversed = c;
  for (auto& p : reversed.productions) std::reverse(p.body.begin(), p.body.end());
  return first_sets(reversed).first;
}

/// Predictive parse table over dense terminal and nonterminal indices.
/// Terminal index terminals.size() is the end marker.
class Ll1Table {
 public:
  static constexpr int kNone = -1;

  std::size_t terminal_count() const { return terminals_.size(); }
  std::size_t end_index() const { return terminals_.size(); }
  const std::vector<std::string>& terminals() const { return terminals_; }
  const std::vector<Nonterminal>& nonterminals() const { return nonterminals_; }

  std::optional<std::size_t> terminal_index(const std::string& name) const {
    if (name == kEndMarker) return end_index();
    auto it = terminal_ids_.find(name);
    if (it == terminal_ids_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> nonterminal_index(Nonterminal n) const {
    auto it = nonterminal_ids_.find(n);
    if (it == nonterminal_ids_.end()) return std::nullopt;
    return it->second;
  }

  /// Production index for (nonterminal, terminal), or kNone.
  int cell(std::size_t nonterminal, std::size_t terminal) const {
    return cells_[nonterminal * (terminals_.size() + 1) + terminal];
  }
  int lookup(Nonterminal n, const std::string& terminal) const {
    auto ni = nonterminal_index(n);
    auto ti = terminal_index(terminal);
    if (!ni || !ti) return kNone;
    return cell(*ni, *ti);
  }

  /// Terminals (possibly "$") with an entry in the row of n.
  TerminalSet expected(Nonterminal n) const {
    TerminalSet out;
    auto ni = nonterminal_index(n);
    if (!ni) return out;
    for (std::size_t t = 0; t <= terminals_.size(); ++t) {
      if (cell(*ni, t) != kNone) out.insert(t == end_index() ? kEndMarker : terminals_[t]);
    }
    return out;
  }

  friend bool operator==(const Ll1Table& a, const Ll1Table& b) {
    return a.terminals_ == b.terminals_ && a.nonterminals_ == b.nonterminals_ && a.cells_ == b.cells_;
  }

 private:
  friend Ll1Table build_ll1_table(const Cfg&, const FirstSets&, const std::map<Nonterminal, TerminalSet>&);

  std::vector<std::string> terminals_;
  std::vector<Nonterminal> nonterminals_;
  std::map<std::string, std::size_t> terminal_ids_;
  std::map<Nonterminal, std::size_t> nonterminal_ids_;
  std::vector<int> cells_;
};

/// Standard LL(1) construction. A doubly-filled cell means the generated
/// grammar is not LL(1), which can only be a template bug: Errc::internal_conflict.
inline Ll1Table build_ll1_table(const Cfg& c, const FirstSets& fs, const std::map<Nonterminal, TerminalSet>& follow) {
  Ll1Table t;
  t.terminals_ = c.terminals;
  t.nonterminals_ = c.nonterminals;
  for (std::size_t i = 0; i < t.terminals_.size(); ++i) t.terminal_ids_[t.terminals_[i]] = i;
  for (std::size_t i = 0; i < t.nonterminals_.size(); ++i) t.nonterminal_ids_[t.nonterminals_[i]] = i;
  const std::size_t width = t.terminals_.size() + 1;
  t.cells_.assign(t.nonterminals_.size() * width, Ll1Table::kNone);

  auto place = [&](std::size_t prod, const std::string& terminal) {
    std::size_t n = t.nonterminal_ids_.at(c.productions[prod].head);
    auto ti = t.terminal_index(terminal);
    if (!ti) throw Error(Errc::internal_conflict, "terminal '" + terminal + "' missing from the terminal list");
    int& cell = t.cells_[n * width + *ti];
    if (cell != Ll1Table::kNone && cell != static_cast<int>(prod)) {
      throw Error(Errc::internal_conflict, "cell (" + c.productions[prod].head.name() + ", " + terminal +
                                               ") holds productions " + std::to_string(cell) + " and " +
                                               std::to_string(prod));
    }
    cell = static_cast<int>(prod);
  };

  for (std::size_t i = 0; i < c.productions.size(); ++i) {
    const auto& p = c.productions[i];
    auto [f, nullable] = fs.of(p.body);
    for (const auto& term : f) place(i, term);
    if (nullable) {
      for (const auto& term : follow.at(p.head)) place(i, term);
    }
  }
  return t;
}

inline Ll1Table build_ll1_table(const Cfg& c) {
  auto fs = first_sets(c);
  return build_ll1_table(c, fs, follow_sets(c, fs));
}

inline std::string render_body(const std::vector<Symbol>& body) {
  if (body.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i) out += ' ';
    out += body[i].name();
  }
  return out;
}

/// Plain-text dump: one line per nonterminal with its alternatives, the
/// FIRST, FOLLOW and LAST sets, then every filled LL(1) cell.
inline std::string dump_tables(const Cfg& c) {
  auto fs = first_sets(c);
  auto follow = follow_sets(c, fs);
  auto last = last_sets(c);
  auto set_text = [](const TerminalSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& t : s) {
      if (!first) out += ", ";
      out += t;
      first = false;
    }
    return out + "}";
  };

  std::ostringstream os;
  os << "productions:\n";
  for (const auto& n : c.nonterminals) {
    os << "  " << n.name() << " ->";
    bool first = true;
    for (auto i : c.productions_of(n)) {
      os << (first ? " " : " | ") << render_body(c.productions[i].body);
      first = false;
    }
    os << '\n';
  }
  os << "sets:\n";
  for (const auto& n : c.nonterminals) {
    os << "  " << n.name() << ": nullable=" << (fs.nullable.at(n) ? "yes" : "no") << " FIRST=" << set_text(fs.first.at(n))
       << " FOLLOW=" << set_text(follow.at(n)) << " LAST=" << set_text(last.at(n)) << '\n';
  }
  auto table = build_ll1_table(c, fs, follow);
  os << "table:\n";
  for (const auto& n : c.nonterminals) {
    for (std::size_t t = 0; t <= table.terminal_count(); ++t) {
      int p = table.cell(*table.nonterminal_index(n), t);
      if (p == Ll1Table::kNone) continue;
      os << "  [" << n.name() << ", " << (t == table.end_index() ? kEndMarker : table.terminals()[t]) << "] " << n.name()
         << " -> " << render_body(c.productions[static_cast<std::size_t>(p)].body) << '\n';
    }
  }
  return os.str();
}

}  // namespace tiergram

#endif  // TIERGRAM_CFG_HPP
