// Copyright 2026 The tiergram Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TIERGRAM_PARSER_HPP
#define TIERGRAM_PARSER_HPP

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tiergram/cfg.hpp"
#include "tiergram/error.hpp"
#include "tiergram/grammar.hpp"
#include "tiergram/lexer.hpp"
#include "tiergram/tree.hpp"

namespace tiergram {

/// First failure of a predictive parse.
class ParseError : public Error {
 public:
  enum class Reason { unexpected_token, unexpected_end, unclassified_token };

  ParseError(Reason reason, std::size_t index, std::optional<Token> found, std::size_t offset, std::size_t line,
             std::size_t column, std::vector<std::string> expected, bool end_allowed)
      : Error(reason == Reason::unclassified_token ? Errc::unclassified_token : Errc::parse_error,
              format(reason, found, line, column, expected, end_allowed)),
        reason_(reason),
        index_(index),
        found_(std::move(found)),
        offset_(offset),
        line_(line),
        column_(column),
        expected_(std::move(expected)),
        end_allowed_(end_allowed) {}

  Reason reason() const noexcept { return reason_; }
  /// Index of the offending token; equals the token count at end of input.
  std::size_t index() const noexcept { return index_; }
  const std::optional<Token>& found() const noexcept { return found_; }
  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  /// Token names that could continue the parse here, in declaration order.
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  /// True when the input could also have ended here.
  bool end_allowed() const noexcept { return end_allowed_; }

  /// Message without the position prefix.
  std::string describe() const { return describe(reason_, found_, expected_, end_allowed_); }

 private:
  static std::string describe(Reason reason, const std::optional<Token>& found,
                              const std::vector<std::string>& expected, bool end_allowed) {
    std::string msg;
    if (reason == Reason::unexpected_end) {
      msg = "unexpected end of input";
    } else {
      msg = std::string(reason == Reason::unclassified_token ? "unclassified token " : "unexpected ") + found->name +
            " " + Json(found->lexeme).dump(-1, ' ', false, Json::error_handler_t::replace);
    }
    if (expected.empty() && !end_allowed) return msg;
    msg += ", expected ";
    if (expected.empty()) return msg + "end of input";
    msg += expected.size() == 1 ? "" : "one of ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += ", ";
      msg += expected[i];
    }
    if (end_allowed) msg += " or end of input";
    return msg;
  }

  static std::string format(Reason reason, const std::optional<Token>& found, std::size_t line, std::size_t column,
                            const std::vector<std::string>& expected, bool end_allowed) {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + describe(reason, found, expected, end_allowed);
  }

  Reason reason_;
  std::size_t index_;
  std::optional<Token> found_;
  std::size_t offset_, line_, column_;
  std::vector<std::string> expected_;
  bool end_allowed_;
};

/// Which tree node, if any, a nonterminal builds when it is expanded.
enum class FrameKind : std::uint8_t { none, sequence, expr, markers, bracket };

/// How a matched terminal contributes to the tree.
enum class TerminalRole : std::uint8_t { base, open, close, op };

template <class Sink>
class ParseMachine;

/// Reusable LL(1) parser for one tier grammar. Immutable after build.
class Parser {
 public:
  static Parser build(const TierGrammar& g) {
    Parser p;
    p.grammar_ = g;
    p.cfg_ = generate_cfg(g);
    p.table_ = build_ll1_table(p.cfg_);
    p.index();
    return p;
  }

  const TierGrammar& grammar() const { return grammar_; }
  const Cfg& cfg() const { return cfg_; }
  const Ll1Table& table() const { return table_; }

  std::optional<std::uint32_t> terminal_id(std::string_view name) const {
    auto it = terminal_ids_.find(std::string(name));
    if (it == terminal_ids_.end()) return std::nullopt;
    return it->second;
  }
  std::uint32_t end_id() const { return static_cast<std::uint32_t>(table_.end_index()); }
  const std::string& terminal_name(std::uint32_t id) const { return table_.terminals()[id]; }
  std::size_t terminal_count() const { return table_.terminal_count(); }

  struct Entry {
    enum Kind : std::uint8_t { terminal, nonterminal, close_frame };
    Kind kind;
    bool tail;  // D in D -> X D: continues the enclosing sequence frame
    std::uint32_t id;
  };

  struct Role {
    FrameKind frame = FrameKind::none;
    std::size_t priority = 0;
    OperatorKind op = OperatorKind::connective;
  };

 private:
  template <class Sink>
  friend class ParseMachine;

  void index() {
    const auto& terms = table_.terminals();
    Classifier classify(grammar_);
    for (std::uint32_t i = 0; i < terms.size(); ++i) {
      terminal_ids_.emplace(terms[i], i);
      switch (classify(terms[i]).kind) {
        case TermClass::Kind::base: roles_by_terminal_.push_back(TerminalRole::base); break;
        case TermClass::Kind::open: roles_by_terminal_.push_back(TerminalRole::open); break;
        case TermClass::Kind::close: roles_by_terminal_.push_back(TerminalRole::close); break;
        default: roles_by_terminal_.push_back(TerminalRole::op); break;
      }
    }

    const auto& nts = table_.nonterminals();
    for (const auto& n : nts) {
      Role r;
      switch (n.tag) {
        case NtTag::D: r.frame = FrameKind::sequence; break;
        case NtTag::Q:
          r.frame = FrameKind::markers;
          r.priority = n.index;
          break;
        case NtTag::E:
          r.frame = FrameKind::expr;
          r.priority = n.index;
          r.op = grammar_.operator_tiers[n.index - 1].kind;
          break;
        case NtTag::B: r.frame = FrameKind::bracket; break;
        default: break;
      }
      roles_.push_back(r);
    }
    start_ = static_cast<std::uint32_t>(*table_.nonterminal_index(cfg_.start));

    for (const auto& prod : cfg_.productions) {
      std::vector<Entry> body;
      for (std::size_t i = prod.body.size(); i-- > 0;) {
        const auto& s = prod.body[i];
        if (s.is_terminal()) {
          body.push_back({Entry::terminal, false, static_cast<std::uint32_t>(*table_.terminal_index(s.terminal))});
        } else {
          bool tail = prod.head.tag == NtTag::D && s.nonterminal == prod.head && i + 1 == prod.body.size();
          body.push_back({Entry::nonterminal, tail, static_cast<std::uint32_t>(*table_.nonterminal_index(s.nonterminal))});
        }
      }
      reversed_bodies_.push_back(std::move(body));
    }
    width_ = table_.terminal_count() + 1;
    for (std::size_t n = 0; n < nts.size(); ++n) {
      for (std::size_t t = 0; t < width_; ++t) cells_.push_back(table_.cell(n, t));
    }
  }

  TierGrammar grammar_;
  Cfg cfg_;
  Ll1Table table_;
  std::unordered_map<std::string, std::uint32_t> terminal_ids_;
  std::vector<TerminalRole> roles_by_terminal_;
  std::vector<Role> roles_;
  std::vector<std::vector<Entry>> reversed_bodies_;
  std::vector<int> cells_;
  std::size_t width_ = 0;
  std::uint32_t start_ = 0;
};

inline Parser build_parser(const TierGrammar& g) { return Parser::build(g); }

/// Sink that ignores structure; used for recognition only.
struct NullSink {
  void open(const Parser::Role&) {}
  void terminal(const Token*, TerminalRole) {}
  void close() {}
};

/// Push-style table-driven parser. Tokens are fed one at a time; the sink
/// receives frame open/close notifications and every matched terminal.
///
/// A nonterminal that can become a tree node opens a frame when it is
/// expanded and closes it when popped; helper nonterminals never open frames,
/// so their children merge into the enclosing frame.
template <class Sink>
class ParseMachine {
 public:
  ParseMachine(const Parser& p, Sink& sink) : parser_(&p), sink_(&sink) {
    stack_.push_back({Parser::Entry::nonterminal, false, p.start_});
  }

  /// Feeds one terminal id. Returns false on error; the machine is then dead.
  bool feed(std::uint32_t terminal, const Token* token = nullptr) {
    if (failed_) return false;
    if (!step(terminal, token)) {
      failed_ = true;
      return false;
    }
    ++consumed_;
    return true;
  }

  /// Feeds a token by name; unknown names fail with unclassified_.
  bool feed(const Token& token) {
    if (failed_) return false;
    auto id = parser_->terminal_id(token.name);
    if (!id) {
      failed_ = true;
      unclassified_ = true;
      undo_.clear();
      floor_ = stack_.size();
      return false;
    }
    return feed(*id, &token);
  }

  /// Signals end of input. Returns true iff the whole input is accepted.
  bool finish() {
    if (failed_) return false;
    if (!step(parser_->end_id(), nullptr)) {
      failed_ = true;
      return false;
    }
    return true;
  }

  bool failed() const { return failed_; }
  bool unclassified() const { return unclassified_; }
  std::size_t consumed() const { return consumed_; }

  /// True when the input fed so far is a complete sentence. Does not mutate.
  bool accepts_here() const { return !failed_ && viable(stack_, parser_->end_id()); }
  /// True when some continuation of the input fed so far can still be accepted.
  bool alive() const { return !failed_; }

  /// After a failure: terminal ids that were viable at the failing position,
  /// and whether end of input was.
  std::pair<std::vector<std::uint32_t>, bool> expected() const {
    std::vector<Parser::Entry> original(stack_.begin(), stack_.begin() + static_cast<std::ptrdiff_t>(floor_));
    original.insert(original.end(), undo_.rbegin(), undo_.rend());
    std::vector<std::uint32_t> ids;
    for (std::uint32_t t = 0; t < parser_->terminal_count(); ++t) {
      if (viable(original, t)) ids.push_back(t);
    }
    return {ids, viable(original, parser_->end_id())};
  }

 private:
  bool step(std::uint32_t t, const Token* token) {
    const Parser& p = *parser_;
    undo_.clear();
    floor_ = stack_.size();
    auto pop = [&] {
      Parser::Entry e = stack_.back();
      stack_.pop_back();
      if (stack_.size() < floor_) {
        undo_.push_back(e);
        floor_ = stack_.size();
      }
    };
    for (;;) {
      if (stack_.empty()) return t == p.end_id();
      const Parser::Entry e = stack_.back();
      switch (e.kind) {
        case Parser::Entry::close_frame:
          pop();
          sink_->close();
          break;
        case Parser::Entry::terminal:
          if (e.id != t) return false;
          pop();
          sink_->terminal(token, p.roles_by_terminal_[t]);
          return true;
        case Parser::Entry::nonterminal: {
          int prod = p.cells_[e.id * p.width_ + t];
          if (prod < 0) return false;
          pop();
          const Parser::Role& role = p.roles_[e.id];
          if (role.frame != FrameKind::none && !e.tail) {
            sink_->open(role);
            stack_.push_back({Parser::Entry::close_frame, false, e.id});
          }
          const auto& body = p.reversed_bodies_[static_cast<std::size_t>(prod)];
          stack_.insert(stack_.end(), body.begin(), body.end());
          break;
        }
      }
    }
  }

  bool viable(std::vector<Parser::Entry> sim, std::uint32_t t) const {
    const Parser& p = *parser_;
    for (;;) {
      if (sim.empty()) return t == p.end_id();
      const Parser::Entry e = sim.back();
      sim.pop_back();
      if (e.kind == Parser::Entry::close_frame) continue;
      if (e.kind == Parser::Entry::terminal) return e.id == t;
      int prod = p.cells_[e.id * p.width_ + t];
      if (prod < 0) return false;
      const auto& body = p.reversed_bodies_[static_cast<std::size_t>(prod)];
      sim.insert(sim.end(), body.begin(), body.end());
    }
  }

  const Parser* parser_;
  Sink* sink_;
  std::vector<Parser::Entry> stack_;
  std::vector<Parser::Entry> undo_;
  std::size_t floor_ = 0;
  std::size_t consumed_ = 0;
  bool failed_ = false;
  bool unclassified_ = false;
};

using Recognizer = ParseMachine<NullSink>;

namespace detail {

/// Collects the frame contents into TierTree nodes.
class TreeSink {
 public:
  TreeSink() { frames_.emplace_back(); }

  void open(const Parser::Role& role) {
    frames_.emplace_back();
    frames_.back().role = role;
  }

  void terminal(const Token* token, TerminalRole role) {
    Token t = token ? *token : Token{};
    if (role == TerminalRole::base) {
      frames_.back().children.push_back(TierTree::base(std::move(t)));
    } else {
      frames_.back().ops.push_back(std::move(t));
    }
  }

  void close() {
    Frame f = std::move(frames_.back());
    frames_.pop_back();
    frames_.back().children.push_back(build(std::move(f)));
  }

  TierTree result() {
    auto& root = frames_.front().children;
    return root.empty() ? TierTree::empty() : std::move(root.front());
  }

 private:
  struct Frame {
    Parser::Role role;
    std::vector<TierTree> children;
    std::vector<Token> ops;
  };

  static TierTree build(Frame f) {
    switch (f.role.frame) {
      case FrameKind::sequence:
        if (f.children.empty()) return TierTree::empty();
        if (f.children.size() == 1) return std::move(f.children.front());
        return TierTree::sequence(std::move(f.children));
      case FrameKind::bracket:
        return TierTree::bracket(std::move(f.ops[0]), std::move(f.children[0]), std::move(f.ops[1]));
      case FrameKind::markers:
        if (f.ops.empty()) return std::move(f.children.front());
        return TierTree::markers(f.role.priority, std::move(f.children), std::move(f.ops));
      case FrameKind::expr:
        if (f.ops.empty()) return std::move(f.children.front());
        switch (f.role.op) {
          case OperatorKind::prefix:
            return TierTree::prefix(f.role.priority, std::move(f.ops[0]), std::move(f.children[0]));
          case OperatorKind::postfix:
            return TierTree::postfix(f.role.priority, std::move(f.children[0]), std::move(f.ops[0]));
          case OperatorKind::connective:
            return TierTree::connective(f.role.priority, std::move(f.children), std::move(f.ops));
        }
        break;
      case FrameKind::none: break;
    }
    return TierTree::empty();
  }

  std::vector<Frame> frames_;
};

template <class Sink, class Source>
bool drive(const Parser& p, Source&& next, Sink& sink, ParseError* error) {
  ParseMachine<Sink> machine(p, sink);
  std::optional<Token> last;
  std::size_t index = 0;
  auto fail = [&](const Token* found) {
    if (error == nullptr) return false;
    auto [ids, end_ok] = machine.expected();
    std::vector<std::string> names;
    for (auto id : ids) names.push_back(p.terminal_name(id));
    ParseError::Reason reason = found == nullptr               ? ParseError::Reason::unexpected_end
                                : machine.unclassified()       ? ParseError::Reason::unclassified_token
                                                               : ParseError::Reason::unexpected_token;
    std::size_t offset = 0, line = 1, column = 1;
    if (found != nullptr) {
      offset = found->span.start;
      line = found->span.line;
      column = found->span.column;
    } else if (last) {
      offset = last->span.end;
      std::tie(line, column) = end_position(*last);
    }
    *error = ParseError(reason, index, found ? std::optional<Token>(*found) : std::nullopt, offset, line, column,
                        std::move(names), end_ok);
    return false;
  };
  while (const Token* tok = next()) {
    if (!machine.feed(*tok)) return fail(tok);
    last = *tok;
    ++index;
  }
  if (!machine.finish()) return fail(nullptr);
  return true;
}

inline auto span_source(std::span<const Token> tokens) {
  return [tokens, i = std::size_t{0}]() mutable -> const Token* { return i < tokens.size() ? &tokens[i++] : nullptr; };
}

inline ParseError placeholder_error() {
  return ParseError(ParseError::Reason::unexpected_end, 0, std::nullopt, 0, 1, 1, {}, false);
}

}  // namespace detail

/// Parses a token list into its tier parse tree. Throws ParseError.
inline TierTree parse(const Parser& p, std::span<const Token> tokens) {
  detail::TreeSink sink;
  ParseError error = detail::placeholder_error();
  if (!detail::drive(p, detail::span_source(tokens), sink, &error)) throw error;
  return sink.result();
}

/// Non-throwing parse: the tree on success, otherwise the error.
inline std::optional<TierTree> try_parse(const Parser& p, std::span<const Token> tokens, ParseError* error = nullptr) {
  detail::TreeSink sink;
  if (!detail::drive(p, detail::span_source(tokens), sink, error)) return std::nullopt;
  return sink.result();
}

/// Recognition only: no tree is built.
inline bool accepts(const Parser& p, std::span<const Token> tokens) {
  NullSink sink;
  return detail::drive(p, detail::span_source(tokens), sink, nullptr);
}

/// Recognition over terminal ids (see Parser::terminal_id).
inline bool accepts_ids(const Parser& p, std::span<const std::uint32_t> ids) {
  NullSink sink;
  Recognizer r(p, sink);
  for (auto id : ids) {
    if (!r.feed(id)) return false;
  }
  return r.finish();
}

/// Callbacks of the streaming parse. Derive and override what you need, or
/// pass any type with the same member functions to parse_events.
///
/// on_node_end fires when a node completes, after all of its content. Its
/// token list is the node's own terminals (operators, markers, or the bracket
/// pair) and child_count is the number of nodes completed directly below it.
/// Nodes of kind empty are reported only where they are a child of another
/// node; an empty input produces just on_end.
class EventHandler {
 public:
  virtual ~EventHandler() = default;
  virtual void on_base(const Token&) {}
  virtual void on_open(const Token&) {}
  virtual void on_close(const Token&) {}
  virtual void on_node_end(NodeKind, std::size_t /*priority*/, const std::vector<Token>& /*tokens*/,
                           std::size_t /*child_count*/) {}
  virtual void on_end() {}
};

namespace detail {

template <class Handler>
class EventSink {
 public:
  explicit EventSink(Handler& h) : handler_(&h) { frames_.emplace_back(); }

  void open(const Parser::Role& role) {
    frames_.emplace_back();
    frames_.back().role = role;
  }

  void terminal(const Token* token, TerminalRole role) {
    Frame& f = frames_.back();
    switch (role) {
      case TerminalRole::base:
        handler_->on_base(*token);
        ++f.children;
        return;
      case TerminalRole::open: handler_->on_open(*token); break;
      case TerminalRole::close: handler_->on_close(*token); break;
      case TerminalRole::op: break;
    }
    f.ops.push_back(*token);
  }

  void close() {
    Frame f = std::move(frames_.back());
    frames_.pop_back();
    const bool parent_is_root = frames_.size() == 1;
    Frame& parent = frames_.back();
    switch (f.role.frame) {
      case FrameKind::sequence:
        if (f.children == 0) {
          if (parent_is_root) return;
          handler_->on_node_end(NodeKind::empty, 0, f.ops, 0);
        } else if (f.children >= 2) {
          handler_->on_node_end(NodeKind::sequence, 0, f.ops, f.children);
        }
        break;
      case FrameKind::bracket: handler_->on_node_end(NodeKind::bracket, 0, f.ops, f.children); break;
      case FrameKind::markers:
        if (!f.ops.empty()) handler_->on_node_end(NodeKind::markers, f.role.priority, f.ops, f.children);
        break;
      case FrameKind::expr:
        if (!f.ops.empty()) {
          NodeKind kind = f.role.op == OperatorKind::prefix    ? NodeKind::prefix
                          : f.role.op == OperatorKind::postfix ? NodeKind::postfix
                                                               : NodeKind::connective;
          handler_->on_node_end(kind, f.role.priority, f.ops, f.children);
        }
        break;
      case FrameKind::none: break;
    }
    ++parent.children;
  }

 private:
  struct Frame {
    Parser::Role role;
    std::size_t children = 0;
    std::vector<Token> ops;
  };

  Handler* handler_;
  std::vector<Frame> frames_;
};

}  // namespace detail

/// Streaming parse over any token source: a callable returning a pointer to
/// the next token, or nullptr at end. Returns true when the input is accepted,
/// in which case on_end has been called. On failure no further events are
/// emitted and *error (when given) describes the failure.
template <class Handler, class Source>
  requires std::invocable<Source&>
bool parse_events(const Parser& p, Source&& next, Handler& handler, ParseError* error = nullptr) {
  detail::EventSink<Handler> sink(handler);
  if (!detail::drive(p, next, sink, error)) return false;
  handler.on_end();
  return true;
}

template <class Handler>
bool parse_events(const Parser& p, std::span<const Token> tokens, Handler& handler, ParseError* error = nullptr) {
  return parse_events(p, detail::span_source(tokens), handler, error);
}

/// Rebuilds the tree from an event stream with a node stack.
class TreeReplayer : public EventHandler {
 public:
  void on_base(const Token& t) override { stack_.push_back(TierTree::base(t)); }

  void on_node_end(NodeKind kind, std::size_t priority, const std::vector<Token>& tokens,
                   std::size_t child_count) override {
    std::vector<TierTree> children(std::make_move_iterator(stack_.end() - static_cast<std::ptrdiff_t>(child_count)),
                                   std::make_move_iterator(stack_.end()));
    stack_.resize(stack_.size() - child_count);
    TierTree node;
    node.kind = kind;
    node.priority = priority;
    node.tokens = tokens;
    node.children = std::move(children);
    stack_.push_back(std::move(node));
  }

  void on_end() override { done_ = true; }

  bool done() const { return done_; }

  TierTree result() const {
    if (stack_.empty()) return TierTree::empty();
    return stack_.back();
  }

  std::size_t depth() const { return stack_.size(); }

 private:
  std::vector<TierTree> stack_;
  bool done_ = false;
};

}  // namespace tiergram

#endif  // TIERGRAM_PARSER_HPP
