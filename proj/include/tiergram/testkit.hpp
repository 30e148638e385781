// Copyright 2026 The tiergram Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TIERGRAM_TESTKIT_HPP
#define TIERGRAM_TESTKIT_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tiergram/cfg.hpp"
#include "tiergram/error.hpp"
#include "tiergram/grammar.hpp"
#include "tiergram/lexer.hpp"
#include "tiergram/tree.hpp"

namespace tiergram::testkit {

using Word = std::vector<std::string>;

/// Classified terminals in declaration order, then an undeclared OTHER.
inline std::vector<std::string> alphabet(const TierGrammar& g) {
  std::set<std::string> classified;
  for_each_assignment(g, [&](const std::string& t, TermClass) { classified.insert(t); });
  std::vector<std::string> out;
  for (const auto& t : g.tokens) {
    if (classified.contains(t.name)) out.push_back(t.name);
  }
  for (const auto& b : g.base) {
    if (b == kOtherToken && g.find_token(b) == nullptr) out.push_back(b);
  }
  return out;
}

/// Tokens carrying only a name; lexemes repeat the name and spans count tokens.
inline std::vector<Token> tokens_of(std::span<const std::string> names) {
  std::vector<Token> out;
  out.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) out.push_back({names[i], names[i], {i, i + 1, 1, i + 1}});
  return out;
}

inline std::string join(std::span<const std::string> words, std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += sep;
    out += words[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Language enumeration straight from the four rules.

inline constexpr std::size_t kMaxEnumerationLength = 10;

/// Members of bounded length, sorted by length and then by declaration order
/// of their tokens.
class Language {
 public:
  Language(std::vector<std::string> alphabet, std::set<std::string> codes)
      : alphabet_(std::move(alphabet)), codes_(std::move(codes)) {}

  std::size_t size() const { return codes_.size(); }

  bool contains(std::span<const std::string> word) const {
    std::string code;
    for (const auto& w : word) {
      auto it = std::find(alphabet_.begin(), alphabet_.end(), w);
      if (it == alphabet_.end()) return false;
      code += static_cast<char>(it - alphabet_.begin());
    }
    return codes_.contains(code);
  }

  bool contains_code(const std::string& code) const { return codes_.contains(code); }

  std::vector<Word> words() const {
    std::vector<std::string> sorted(codes_.begin(), codes_.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const std::string& a, const std::string& b) { return a.size() < b.size(); });
    std::vector<Word> out;
    for (const auto& c : sorted) {
      Word w;
      for (char x : c) w.push_back(alphabet_[static_cast<unsigned char>(x)]);
      out.push_back(std::move(w));
    }
    return out;
  }

  std::vector<std::size_t> count_by_length(std::size_t max_len) const {
    std::vector<std::size_t> out(max_len + 1, 0);
    for (const auto& c : codes_) {
      if (c.size() <= max_len) ++out[c.size()];
    }
    return out;
  }

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::set<std::string>& codes() const { return codes_; }

 private:
  std::vector<std::string> alphabet_;
  std::set<std::string> codes_;
};

namespace detail {

// strings bucketed by length
using Buckets = std::vector<std::set<std::string>>;

// {a_0 s a_1 ... s a_n : n >= 0, a_j in items, s in seps}; with no separators
// the a_j are simply juxtaposed and the empty word is included.
inline Buckets separated(const Buckets& items, const std::vector<char>& seps, bool juxtapose, std::size_t max_len) {
  Buckets out(max_len + 1);
  if (juxtapose) out[0].insert("");
  for (std::size_t n = 0; n <= max_len; ++n) {
    out[n].insert(items[n].begin(), items[n].end());
    // extend shorter results by one more separator-item pair
    for (std::size_t head = 0; head < n; ++head) {
      std::size_t glue = juxtapose ? 0 : 1;
      if (head + glue > n) continue;
      std::size_t tail = n - head - glue;
      if (!juxtapose && tail > max_len) continue;
      if (juxtapose && (head == 0 || tail == 0)) continue;
      for (const auto& h : out[head]) {
        for (const auto& t : items[tail]) {
          if (juxtapose) {
            out[n].insert(h + t);
          } else {
            for (char s : seps) out[n].insert(h + s + t);
          }
        }
      }
    }
  }
  return out;
}

}  // namespace detail

/// Exactly the members of length at most max_len.
///
/// Base tokens and bracketed members are the items; operator tiers wrap items
/// tier by tier from the highest priority down; marker tiers are built from
/// the juxtaposed item sequences upwards, so the context proviso holds by
/// construction. Brackets feed the full language back in, iterated to fixpoint.
inline Language enumerate_language(const TierGrammar& g, std::size_t max_len) {
  if (max_len > kMaxEnumerationLength) {
    throw Error(Errc::limit_exceeded, "enumeration is limited to length " + std::to_string(kMaxEnumerationLength));
  }
  require_valid(g);
  auto sigma = alphabet(g);
  auto code = [&](const std::string& name) {
    return static_cast<char>(std::find(sigma.begin(), sigma.end(), name) - sigma.begin());
  };
  auto codes = [&](const std::vector<std::string>& names) {
    std::vector<char> out;
    for (const auto& n : names) out.push_back(code(n));
    return out;
  };

  using detail::Buckets;
  Buckets language(max_len + 1);
  language[0].insert("");
  while (true) {
    // base tokens and bracketed members
    Buckets items(max_len + 1);
    if (max_len >= 1) {
      for (const auto& b : g.base) items[1].insert(std::string(1, code(b)));
    }
    for (std::size_t n = 2; n <= max_len; ++n) {
      for (const auto& inner : language[n - 2]) {
        for (const auto& r : g.open) {
          for (const auto& e : g.close) items[n].insert(code(r) + inner + code(e));
        }
      }
    }

    // operator tiers, priority k down to 1
    for (std::size_t i = g.k(); i-- > 0;) {
      const auto& tier = g.operator_tiers[i];
      auto ops = codes(tier.terminals);
      Buckets next = items;
      switch (tier.kind) {
        case OperatorKind::postfix:
          for (std::size_t n = 1; n < max_len; ++n) {
            for (const auto& a : items[n]) {
              for (char s : ops) next[n + 1].insert(a + s);
            }
          }
          break;
        case OperatorKind::prefix:
          // p a_0 with a_0 of the same or higher priority: grow by length
          for (std::size_t n = 1; n < max_len; ++n) {
            for (const auto& a : next[n]) {
              for (char p : ops) next[n + 1].insert(p + a);
            }
          }
          break;
        case OperatorKind::connective: next = detail::separated(items, ops, false, max_len); break;
      }
      items = std::move(next);
    }

    // juxtaposed sequences, then marker tiers q down to 1
    Buckets level = detail::separated(items, {}, true, max_len);
    for (std::size_t i = g.q(); i-- > 0;) level = detail::separated(level, codes(g.marker_tiers[i]), false, max_len);

    if (level == language) break;
    language = std::move(level);
  }

  std::set<std::string> all;
  for (const auto& b : language) all.insert(b.begin(), b.end());
  return Language(std::move(sigma), std::move(all));
}

// ---------------------------------------------------------------------------
// Counting chart parser over an arbitrary CFG.

/// Raw derivation tree. Terminal leaves carry their token; nonterminal nodes
/// record the production used.
struct CfgTree {
  Symbol symbol;
  std::size_t production = 0;
  std::optional<Token> token;
  std::vector<CfgTree> children;
};

struct OracleResult {
  int count = 0;  // distinct derivation trees, capped at 2
  std::optional<CfgTree> tree;
  bool cyclic = false;  // a nonterminal was re-entered on the same span
};

/// Memoized span counter over an arbitrary CFG. Symbols are numbered once;
/// each parse fills dense per-span tables.
class Oracle {
 public:
  explicit Oracle(const Cfg& c) : cfg_(&c) {
    std::map<Nonterminal, int> nt;
    for (std::size_t i = 0; i < c.nonterminals.size(); ++i) nt[c.nonterminals[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < c.terminals.size(); ++i) terminal_ids_[c.terminals[i]] = static_cast<int>(i);
    by_head_.resize(c.nonterminals.size());
    for (std::size_t p = 0; p < c.productions.size(); ++p) {
      const auto& prod = c.productions[p];
      by_head_[static_cast<std::size_t>(nt.at(prod.head))].push_back(p);
      std::vector<int> body;
      for (const auto& sym : prod.body) {
        if (sym.is_nonterminal()) {
          body.push_back(nt.at(sym.nonterminal));
        } else {
          auto it = terminal_ids_.find(sym.terminal);
          body.push_back(it == terminal_ids_.end() ? kNoTerminal : -1 - it->second);
        }
      }
      suffix_base_.push_back(suffix_count_);
      suffix_count_ += body.size() + 1;
      bodies_.push_back(std::move(body));
    }
    start_ = nt.at(c.start);
  }

  /// Counts the derivation trees of the whole input from the start symbol.
  OracleResult parse(std::span<const Token> tokens) {
    n_ = tokens.size();
    input_.clear();
    for (const auto& t : tokens) {
      auto it = terminal_ids_.find(t.name);
      input_.push_back(it == terminal_ids_.end() ? kUnknown : -1 - it->second);
    }
    const std::size_t cells = (n_ + 1) * (n_ + 1);
    memo_.assign(by_head_.size() * cells, kUnset);
    body_memo_.assign(suffix_count_ * cells, kUnset);
    cyclic_ = false;
    tokens_ = tokens;

    OracleResult r;
    r.count = count(start_, 0, n_);
    if (r.count > 0) r.tree = tree(start_, 0, n_);
    r.cyclic = cyclic_;
    return r;
  }

 private:
  static constexpr int kNoTerminal = -1'000'000;
  static constexpr int kUnknown = -2'000'000;
  static constexpr std::int8_t kUnset = -2;
  static constexpr std::int8_t kActive = -1;

  std::size_t cell(std::size_t i, std::size_t j) const { return i * (n_ + 1) + j; }

  int count(int sym, std::size_t i, std::size_t j) {
    if (sym < 0) return j == i + 1 && input_[i] == sym ? 1 : 0;
    auto& m = memo_[static_cast<std::size_t>(sym) * (n_ + 1) * (n_ + 1) + cell(i, j)];
    if (m == kActive) {
      cyclic_ = true;
      return 0;
    }
    if (m != kUnset) return m;
    m = kActive;
    int total = 0;
    for (auto p : by_head_[static_cast<std::size_t>(sym)]) total = std::min(2, total + count_body(p, 0, i, j));
    memo_[static_cast<std::size_t>(sym) * (n_ + 1) * (n_ + 1) + cell(i, j)] = static_cast<std::int8_t>(total);
    return total;
  }

  int count_body(std::size_t p, std::size_t k, std::size_t i, std::size_t j) {
    const auto& body = bodies_[p];
    if (k == body.size()) return i == j ? 1 : 0;
    if (body[k] < 0) return i < j && input_[i] == body[k] ? count_body(p, k + 1, i + 1, j) : 0;
    if (k + 1 == body.size()) return count(body[k], i, j);
    auto& slot = body_memo_[(suffix_base_[p] + k) * (n_ + 1) * (n_ + 1) + cell(i, j)];
    if (slot != kUnset) return slot;
    int total = 0;
    for (std::size_t m = i; m <= j && total < 2; ++m) {
      int left = count(body[k], i, m);
      if (left == 0) continue;
      int right = count_body(p, k + 1, m, j);
      total = std::min(2, total + std::min(2, left * right));
    }
    body_memo_[(suffix_base_[p] + k) * (n_ + 1) * (n_ + 1) + cell(i, j)] = static_cast<std::int8_t>(total);
    return total;
  }

  CfgTree tree(int sym, std::size_t i, std::size_t j) {
    if (sym < 0) return CfgTree{Symbol::term(tokens_[i].name), 0, tokens_[i], {}};
    CfgTree t{Symbol::nt(cfg_->nonterminals[static_cast<std::size_t>(sym)]), 0, std::nullopt, {}};
    for (auto p : by_head_[static_cast<std::size_t>(sym)]) {
      if (count_body(p, 0, i, j) == 0) continue;
      t.production = p;
      build_body(p, 0, i, j, t.children);
      break;
    }
    return t;
  }

  void build_body(std::size_t p, std::size_t k, std::size_t i, std::size_t j, std::vector<CfgTree>& out) {
    const auto& body = bodies_[p];
    if (k == body.size()) return;
    for (std::size_t m = i; m <= j; ++m) {
      if (count(body[k], i, m) == 0 || count_body(p, k + 1, m, j) == 0) continue;
      out.push_back(tree(body[k], i, m));
      build_body(p, k + 1, m, j, out);
      return;
    }
  }

  const Cfg* cfg_;
  std::map<std::string, int, std::less<>> terminal_ids_;
  std::vector<std::vector<std::size_t>> by_head_;
  std::vector<std::vector<int>> bodies_;  // >= 0 nonterminal, < 0 terminal
  std::vector<std::size_t> suffix_base_;
  std::size_t suffix_count_ = 0;
  int start_ = 0;

  std::span<const Token> tokens_;
  std::vector<int> input_;
  std::size_t n_ = 0;
  std::vector<std::int8_t> memo_, body_memo_;
  bool cyclic_ = false;
};

inline OracleResult oracle_parse(const Cfg& c, std::span<const Token> tokens) { return Oracle(c).parse(tokens); }

inline OracleResult oracle_parse(const Cfg& c, std::span<const std::string> names) {
  auto toks = tokens_of(names);
  return oracle_parse(c, std::span<const Token>(toks));
}

/// Incremental Earley recognizer: push one token at a time, pop to backtrack.
class EarleyRecognizer {
 public:
  explicit EarleyRecognizer(const Cfg& c) : cfg_(&c) {
    for (std::size_t i = 0; i < c.nonterminals.size(); ++i) nt_index_[c.nonterminals[i]] = i;
    by_head_.resize(c.nonterminals.size());
    for (std::size_t p = 0; p < c.productions.size(); ++p) by_head_[nt_index_.at(c.productions[p].head)].push_back(p);
    nullable_.assign(c.nonterminals.size(), false);
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& p : c.productions) {
        auto h = nt_index_.at(p.head);
        if (nullable_[h]) continue;
        bool all = std::all_of(p.body.begin(), p.body.end(),
                               [&](const Symbol& s) { return s.is_nonterminal() && nullable_[nt_index_.at(s.nonterminal)]; });
        if (all) nullable_[h] = changed = true;
      }
    }
    std::vector<Item> seed;
    for (auto p : by_head_[nt_index_.at(c.start)]) seed.push_back({p, 0, 0});
    sets_.push_back(close(std::move(seed), 0));
  }

  /// False when no member starts with the tokens pushed so far.
  bool push(std::string_view terminal) {
    std::vector<Item> kernel;
    for (const auto& it : sets_.back()) {
      const auto& body = cfg_->productions[it.production].body;
      if (it.dot < body.size() && body[it.dot].is_terminal() && body[it.dot].terminal == terminal) {
        kernel.push_back({it.production, it.dot + 1, it.origin});
      }
    }
    sets_.push_back(close(std::move(kernel), sets_.size()));
    return !sets_.back().empty();
  }

  void pop() {
    if (sets_.size() > 1) sets_.pop_back();
  }

  bool alive() const { return !sets_.back().empty(); }

  bool accepts() const {
    for (const auto& it : sets_.back()) {
      if (it.origin == 0 && cfg_->productions[it.production].head == cfg_->start &&
          it.dot == cfg_->productions[it.production].body.size()) {
        return true;
      }
    }
    return false;
  }

  std::size_t length() const { return sets_.size() - 1; }

 private:
  struct Item {
    std::size_t production, dot, origin;
    bool operator==(const Item&) const = default;
  };

  std::vector<Item> close(std::vector<Item> items, std::size_t here) const {
    std::unordered_set<std::uint64_t> seen;
    auto key = [](const Item& i) {
      return (static_cast<std::uint64_t>(i.production) << 40) | (static_cast<std::uint64_t>(i.dot) << 32) | i.origin;
    };
    std::vector<Item> out;
    auto add = [&](Item i) {
      if (seen.insert(key(i)).second) out.push_back(i);
    };
    for (const auto& i : items) add(i);
    for (std::size_t n = 0; n < out.size(); ++n) {
      Item it = out[n];
      const auto& body = cfg_->productions[it.production].body;
      if (it.dot < body.size()) {
        const Symbol& s = body[it.dot];
        if (!s.is_nonterminal()) continue;
        auto nt = nt_index_.at(s.nonterminal);
        for (auto p : by_head_[nt]) add({p, 0, here});
        if (nullable_[nt]) add({it.production, it.dot + 1, it.origin});
      } else {
        const Nonterminal& head = cfg_->productions[it.production].head;
        const auto& origin_set = it.origin == here ? out : sets_[it.origin];
        for (std::size_t m = 0; m < origin_set.size(); ++m) {
          Item parent = origin_set[m];
          const auto& pb = cfg_->productions[parent.production].body;
          if (parent.dot < pb.size() && pb[parent.dot].is_nonterminal() && pb[parent.dot].nonterminal == head) {
            add({parent.production, parent.dot + 1, parent.origin});
          }
        }
      }
    }
    return out;
  }

  const Cfg* cfg_;
  std::map<Nonterminal, std::size_t> nt_index_;
  std::vector<std::vector<std::size_t>> by_head_;
  std::vector<bool> nullable_;
  std::vector<std::vector<Item>> sets_;
};

// ---------------------------------------------------------------------------
// Derivation tree to tier tree.

namespace detail {

inline const Token& leaf_token(const CfgTree& t) {
  const CfgTree* x = &t;
  while (!x->token) x = &x->children.front();
  return *x->token;
}

inline TierTree convert(const Cfg& c, const CfgTree& t);

// D -> eps | X D: the items of one juxtaposed sequence
inline TierTree convert_sequence(const Cfg& c, const CfgTree& d) {
  std::vector<TierTree> items;
  for (const CfgTree* x = &d; !x->children.empty(); x = &x->children[1]) items.push_back(convert(c, x->children[0]));
  if (items.empty()) return TierTree::empty();
  if (items.size() == 1) return std::move(items.front());
  return TierTree::sequence(std::move(items));
}

inline TierTree convert(const Cfg& c, const CfgTree& t) {
  const Nonterminal& n = t.symbol.nonterminal;
  const auto& kids = t.children;
  switch (n.tag) {
    case NtTag::S:
    case NtTag::C: return convert(c, kids[0]);
    case NtTag::D: return convert_sequence(c, t);
    case NtTag::A: return TierTree::base(*kids[0].token);
    case NtTag::B: return TierTree::bracket(leaf_token(kids[0]), convert(c, kids[1]), leaf_token(kids[2]));
    case NtTag::E: {
      const auto& body = c.productions[t.production].body;
      if (body.size() == 2 && body[0].is_terminal()) return TierTree::prefix(n.index, *kids[0].token, convert(c, kids[1]));
      if (body.size() == 1) return convert(c, kids[0]);
      const CfgTree& rest = kids[1];
      if (rest.symbol.nonterminal.tag == NtTag::G) {
        if (rest.children.empty()) return convert(c, kids[0]);
        return TierTree::postfix(n.index, convert(c, kids[0]), *rest.children[0].token);
      }
      // L_i chain
      if (rest.children.empty()) return convert(c, kids[0]);
      std::vector<TierTree> items{convert(c, kids[0])};
      std::vector<Token> ops;
      for (const CfgTree* l = &rest; !l->children.empty(); l = &l->children[2]) {
        ops.push_back(*l->children[0].token);
        items.push_back(convert(c, l->children[1]));
      }
      return TierTree::connective(n.index, std::move(items), std::move(ops));
    }
    case NtTag::Q: {
      const CfgTree& rest = kids[1];
      if (rest.children.empty()) return convert(c, kids[0]);
      std::vector<TierTree> items{convert(c, kids[0])};
      std::vector<Token> marks;
      for (const CfgTree* r = &rest; !r->children.empty(); r = &r->children[2]) {
        marks.push_back(*r->children[0].token);
        items.push_back(convert(c, r->children[1]));
      }
      return TierTree::markers(n.index, std::move(items), std::move(marks));
    }
    default: throw Error(Errc::invalid_grammar, "unexpected nonterminal " + n.name() + " in derivation tree");
  }
}

}  // namespace detail

/// Maps a derivation of the generated CFG to the merged tier parse tree.
inline TierTree to_tier_tree(const Cfg& c, const CfgTree& t) { return detail::convert(c, t); }

// ---------------------------------------------------------------------------
// Closed forms from the LL(1) proof.

inline TerminalSet tier_union(const std::vector<std::vector<std::string>>& tiers, std::size_t from, std::size_t to) {
  TerminalSet out;
  for (std::size_t i = from; i <= to && i <= tiers.size(); ++i) {
    if (i >= 1) out.insert(tiers[i - 1].begin(), tiers[i - 1].end());
  }
  return out;
}

inline std::vector<std::vector<std::string>> operator_tiers_of_kind(const TierGrammar& g, OperatorKind kind) {
  std::vector<std::vector<std::string>> out;
  for (const auto& t : g.operator_tiers) out.push_back(t.kind == kind ? t.terminals : std::vector<std::string>{});
  return out;
}

/// FIRST(E_i) = T1, T2, T6_i..T6_k
inline TerminalSet closed_first_e(const TierGrammar& g, std::size_t i) {
  TerminalSet out(g.base.begin(), g.base.end());
  out.insert(g.open.begin(), g.open.end());
  auto pre = tier_union(operator_tiers_of_kind(g, OperatorKind::prefix), i, g.k());
  out.insert(pre.begin(), pre.end());
  return out;
}

/// FOLLOW(G_i) = FOLLOW(L_i) = T7_<i, T4_all, T1, T2, T3, T6_all, T5_<i, $
inline TerminalSet closed_follow_operator(const TierGrammar& g, std::size_t i) {
  TerminalSet out = tier_union(operator_tiers_of_kind(g, OperatorKind::connective), 1, i - 1);
  auto marks = tier_union(g.marker_tiers, 1, g.q());
  auto pre = tier_union(operator_tiers_of_kind(g, OperatorKind::prefix), 1, g.k());
  auto post = tier_union(operator_tiers_of_kind(g, OperatorKind::postfix), 1, i - 1);
  out.insert(marks.begin(), marks.end());
  out.insert(g.base.begin(), g.base.end());
  out.insert(g.open.begin(), g.open.end());
  out.insert(g.close.begin(), g.close.end());
  out.insert(pre.begin(), pre.end());
  out.insert(post.begin(), post.end());
  out.insert(kEndMarker);
  return out;
}

/// FOLLOW(R_i) = T3, T4_<i, $
inline TerminalSet closed_follow_r(const TierGrammar& g, std::size_t i) {
  TerminalSet out = tier_union(g.marker_tiers, 1, i - 1);
  out.insert(g.close.begin(), g.close.end());
  out.insert(kEndMarker);
  return out;
}

/// FOLLOW(D) = T3, T4_all, $
inline TerminalSet closed_follow_d(const TierGrammar& g) { return closed_follow_r(g, g.q() + 1); }

/// FIRST(E_1 D) = T1, T2, T6_all
inline TerminalSet closed_first_items(const TierGrammar& g) { return closed_first_e(g, 1); }

/// LAST(E_i) = T1, T3, T5_i..T5_k
inline TerminalSet closed_last_e(const TierGrammar& g, std::size_t i) {
  TerminalSet out(g.base.begin(), g.base.end());
  out.insert(g.close.begin(), g.close.end());
  auto post = tier_union(operator_tiers_of_kind(g, OperatorKind::postfix), i, g.k());
  out.insert(post.begin(), post.end());
  return out;
}

// ---------------------------------------------------------------------------
// Generators.

using Rng = std::mt19937_64;

/// Uniform draw from [lo, hi]; plain modulo keeps results identical across
/// standard libraries.
inline std::size_t draw(Rng& rng, std::size_t lo, std::size_t hi) {
  if (hi <= lo) return lo;
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

inline bool coin(Rng& rng, unsigned percent) { return rng() % 100 < percent; }

struct GrammarFuzzConfig {
  std::uint64_t seed = 0;
  std::size_t max_base = 4;
  std::size_t max_open = 4;
  std::size_t max_close = 4;
  std::size_t max_marker_tiers = 3;
  std::size_t max_per_marker_tier = 4;
  std::size_t max_operator_tiers = 3;
  std::size_t max_per_operator_tier = 4;
  std::size_t max_alphabet = 0;  // 0: no limit
  bool brackets = true;
  std::vector<OperatorKind> kinds{OperatorKind::prefix, OperatorKind::postfix, OperatorKind::connective};
};

/// A valid grammar drawn deterministically from the seed. Token names encode
/// the class: Bn base, On/Cn brackets, Mi_n markers, Pi_n, Si_n, Ki_n prefix,
/// postfix and connective tokens of tier i.
inline TierGrammar random_grammar(const GrammarFuzzConfig& cfg) {
  if (cfg.kinds.empty()) throw Error(Errc::invalid_grammar, "fuzz config allows no operator kind");
  Rng rng(cfg.seed);
  for (;;) {
    TierGrammar g;
    auto token = [&](const std::string& name) {
      std::string pattern;
      for (char ch : name) pattern += ch == '_' ? '-' : static_cast<char>(ch | 0x20);
      g.tokens.push_back({name, pattern, false});
      return name;
    };
    std::size_t nb = draw(rng, 0, cfg.max_base);
    std::size_t no = cfg.brackets ? draw(rng, 0, cfg.max_open) : 0;
    std::size_t nc = no > 0 ? draw(rng, 1, std::max<std::size_t>(1, cfg.max_close)) : 0;
    if (nb == 0 && no == 0) nb = 1;
    for (std::size_t i = 0; i < nb; ++i) g.base.push_back(token("B" + std::to_string(i)));
    for (std::size_t i = 0; i < no; ++i) g.open.push_back(token("O" + std::to_string(i)));
    for (std::size_t i = 0; i < nc; ++i) g.close.push_back(token("C" + std::to_string(i)));
    std::size_t q = draw(rng, 0, cfg.max_marker_tiers);
    for (std::size_t i = 1; i <= q; ++i) {
      std::vector<std::string> tier;
      std::size_t n = draw(rng, 1, cfg.max_per_marker_tier);
      for (std::size_t j = 0; j < n; ++j) tier.push_back(token("M" + std::to_string(i) + "_" + std::to_string(j)));
      g.marker_tiers.push_back(std::move(tier));
    }
    std::size_t k = draw(rng, 0, cfg.max_operator_tiers);
    for (std::size_t i = 1; i <= k; ++i) {
      OperatorKind kind = cfg.kinds[draw(rng, 0, cfg.kinds.size() - 1)];
      const char* letter = kind == OperatorKind::prefix ? "P" : kind == OperatorKind::postfix ? "S" : "K";
      OperatorTier tier{kind, {}};
      std::size_t n = draw(rng, 1, cfg.max_per_operator_tier);
      for (std::size_t j = 0; j < n; ++j) tier.terminals.push_back(token(letter + std::to_string(i) + "_" + std::to_string(j)));
      g.operator_tiers.push_back(std::move(tier));
    }
    if (cfg.max_alphabet != 0 && g.tokens.size() > cfg.max_alphabet) continue;
    require_valid(g);
    return g;
  }
}

enum class StringBias { uniform, member, mutate };

namespace detail {

class MemberGenerator {
 public:
  MemberGenerator(const TierGrammar& g, Rng& rng) : g_(g), rng_(rng) {}

  // member of length at most budget
  void language(std::size_t budget, Word& out) { markers(1, budget, out); }

 private:
  std::size_t min_item() const { return g_.base.empty() ? 2 : 1; }
  bool has_items() const { return !g_.base.empty() || g_.has_brackets(); }

  const std::string& pick(const std::vector<std::string>& xs) { return xs[draw(rng_, 0, xs.size() - 1)]; }

  void markers(std::size_t tier, std::size_t budget, Word& out) {
    if (tier > g_.q()) {
      sequence(budget, out);
      return;
    }
    std::size_t used = out.size();
    markers(tier + 1, draw(rng_, 0, budget), out);
    while (out.size() - used < budget && coin(rng_, 45)) {
      out.push_back(pick(g_.marker_tiers[tier - 1]));
      std::size_t left = budget - (out.size() - used);
      markers(tier + 1, draw(rng_, 0, left), out);
    }
  }

  void sequence(std::size_t budget, Word& out) {
    if (!has_items()) return;
    std::size_t used = out.size();
    while (budget - (out.size() - used) >= min_item() && coin(rng_, 60)) {
      std::size_t left = budget - (out.size() - used);
      item(1, draw(rng_, min_item(), left), out);
    }
  }

  // an item of priority >= level, length at most budget (budget >= min_item)
  void item(std::size_t level, std::size_t budget, Word& out) {
    if (level > g_.k()) {
      atom(budget, out);
      return;
    }
    const auto& tier = g_.operator_tiers[level - 1];
    std::size_t used = out.size();
    switch (tier.kind) {
      case OperatorKind::postfix:
        if (budget > min_item() && coin(rng_, 40)) {
          item(level + 1, budget - 1, out);
          out.push_back(pick(tier.terminals));
        } else {
          item(level + 1, budget, out);
        }
        break;
      case OperatorKind::prefix:
        if (budget > min_item() && coin(rng_, 35)) {
          out.push_back(pick(tier.terminals));
          item(level, budget - 1, out);
        } else {
          item(level + 1, budget, out);
        }
        break;
      case OperatorKind::connective:
        item(level + 1, draw(rng_, min_item(), budget), out);
        while (budget - (out.size() - used) >= 1 + min_item() && coin(rng_, 40)) {
          out.push_back(pick(tier.terminals));
          std::size_t left = budget - (out.size() - used);
          item(level + 1, draw(rng_, min_item(), left), out);
        }
        break;
    }
  }

  void atom(std::size_t budget, Word& out) {
    bool bracket = g_.has_brackets() && budget >= 2 && (g_.base.empty() || coin(rng_, 30));
    if (!bracket) {
      out.push_back(pick(g_.base));
      return;
    }
    out.push_back(pick(g_.open));
    language(draw(rng_, 0, budget - 2), out);
    out.push_back(pick(g_.close));
  }

  const TierGrammar& g_;
  Rng& rng_;
};

}  // namespace detail

/// uniform: exactly len tokens drawn from the alphabet. member: a member of
/// length at most len, derived at random through the rules. mutate: such a
/// member with one token replaced by a different one (or one token inserted
/// into an empty member).
inline Word random_string(const TierGrammar& g, std::size_t len, StringBias bias, Rng& rng) {
  auto sigma = alphabet(g);
  Word out;
  if (bias == StringBias::uniform) {
    for (std::size_t i = 0; i < len; ++i) out.push_back(sigma[draw(rng, 0, sigma.size() - 1)]);
    return out;
  }
  detail::MemberGenerator(g, rng).language(len, out);
  if (bias == StringBias::mutate) {
    if (out.empty()) {
      out.push_back(sigma[draw(rng, 0, sigma.size() - 1)]);
    } else if (sigma.size() > 1) {
      std::size_t at = draw(rng, 0, out.size() - 1);
      std::string replacement;
      do {
        replacement = sigma[draw(rng, 0, sigma.size() - 1)];
      } while (replacement == out[at]);
      out[at] = replacement;
    }
  }
  return out;
}

/// Calls fn on every word over the alphabet of length at most max_len,
/// shortest first.
template <class Fn>
void for_each_word(const std::vector<std::string>& sigma, std::size_t max_len, Fn&& fn) {
  Word w;
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::vector<std::size_t> idx(len, 0);
    for (;;) {
      w.clear();
      for (auto i : idx) w.push_back(sigma[i]);
      fn(std::as_const(w));
      std::size_t pos = len;
      while (pos > 0 && ++idx[pos - 1] == sigma.size()) idx[--pos] = 0;
      if (pos == 0) break;
    }
    if (sigma.empty()) break;
  }
}

}  // namespace tiergram::testkit

#endif  // TIERGRAM_TESTKIT_HPP
