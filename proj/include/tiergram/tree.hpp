// Copyright 2026 The tiergram Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TIERGRAM_TREE_HPP
#define TIERGRAM_TREE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tiergram/error.hpp"
#include "tiergram/lexer.hpp"

namespace tiergram {

enum class NodeKind { base, bracket, prefix, postfix, connective, markers, sequence, empty };

inline std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::base: return "base";
    case NodeKind::bracket: return "bracket";
    case NodeKind::prefix: return "prefix";
    case NodeKind::postfix: return "postfix";
    case NodeKind::connective: return "connective";
    case NodeKind::markers: return "markers";
    case NodeKind::sequence: return "seq";
    case NodeKind::empty: return "empty";
  }
  return "?";
}

/// Merged parse tree. One node per rule application; all connectives (or
/// markers) of one priority that glue a run of items share a single node.
///
/// `tokens` holds the node's own terminals: the base token, the bracket pair
/// (open, close), the prefix or postfix operator, or the n connectives or
/// markers separating the n+1 children.
struct TierTree {
  NodeKind kind = NodeKind::empty;
  std::size_t priority = 0;
  std::vector<Token> tokens;
  std::vector<TierTree> children;

  static TierTree empty() { return {}; }
  static TierTree base(Token t) { return {NodeKind::base, 0, {std::move(t)}, {}}; }
  static TierTree bracket(Token open, TierTree child, Token close) {
    return {NodeKind::bracket, 0, {std::move(open), std::move(close)}, {std::move(child)}};
  }
  static TierTree prefix(std::size_t priority, Token op, TierTree child) {
    return {NodeKind::prefix, priority, {std::move(op)}, {std::move(child)}};
  }
  static TierTree postfix(std::size_t priority, TierTree child, Token op) {
    return {NodeKind::postfix, priority, {std::move(op)}, {std::move(child)}};
  }
  static TierTree connective(std::size_t priority, std::vector<TierTree> children, std::vector<Token> ops) {
    return {NodeKind::connective, priority, std::move(ops), std::move(children)};
  }
  static TierTree markers(std::size_t priority, std::vector<TierTree> children, std::vector<Token> marks) {
    return {NodeKind::markers, priority, std::move(marks), std::move(children)};
  }
  static TierTree sequence(std::vector<TierTree> children) {
    return {NodeKind::sequence, 0, {}, std::move(children)};
  }

  friend bool operator==(const TierTree&, const TierTree&) = default;
};

/// Appends the tree's tokens in input order.
inline void yield(const TierTree& t, std::vector<Token>& out) {
  switch (t.kind) {
    case NodeKind::base: out.push_back(t.tokens[0]); break;
    case NodeKind::bracket:
      out.push_back(t.tokens[0]);
      yield(t.children[0], out);
      out.push_back(t.tokens[1]);
      break;
    case NodeKind::prefix:
      out.push_back(t.tokens[0]);
      yield(t.children[0], out);
      break;
    case NodeKind::postfix:
      yield(t.children[0], out);
      out.push_back(t.tokens[0]);
      break;
    case NodeKind::connective:
    case NodeKind::markers:
      for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i) out.push_back(t.tokens[i - 1]);
        yield(t.children[i], out);
      }
      break;
    case NodeKind::sequence:
      for (const auto& c : t.children) yield(c, out);
      break;
    case NodeKind::empty: break;
  }
}

inline std::vector<Token> yield(const TierTree& t) {
  std::vector<Token> out;
  yield(t, out);
  return out;
}

using Json = nlohmann::ordered_json;

namespace detail {

inline Json span_to_json(const Span& s) {
  Json a = Json::array();
  a.push_back(s.start);
  a.push_back(s.end);
  return a;
}

}  // namespace detail

inline Json token_to_json(const Token& t) {
  Json j = Json::object();
  j.emplace("token", t.name);
  j.emplace("lexeme", t.lexeme);
  j.emplace("span", detail::span_to_json(t.span));
  return j;
}

inline Json to_json(const TierTree& t) {
  Json j = Json::object();
  j.emplace("kind", std::string(to_string(t.kind)));
  auto token_array = [](const std::vector<Token>& toks) {
    Json a = Json::array();
    for (const auto& tok : toks) a.push_back(token_to_json(tok));
    return a;
  };
  auto child_array = [](const std::vector<TierTree>& cs) {
    Json a = Json::array();
    for (const auto& c : cs) a.push_back(to_json(c));
    return a;
  };
  switch (t.kind) {
    case NodeKind::base:
      j.emplace("token", t.tokens[0].name);
      j.emplace("lexeme", t.tokens[0].lexeme);
      j.emplace("span", detail::span_to_json(t.tokens[0].span));
      break;
    case NodeKind::bracket:
      j.emplace("open", token_to_json(t.tokens[0]));
      j.emplace("close", token_to_json(t.tokens[1]));
      j.emplace("child", to_json(t.children[0]));
      break;
    case NodeKind::prefix:
    case NodeKind::postfix:
      j.emplace("priority", t.priority);
      j.emplace("operator", token_to_json(t.tokens[0]));
      j.emplace("child", to_json(t.children[0]));
      break;
    case NodeKind::connective:
      j.emplace("priority", t.priority);
      j.emplace("operators", token_array(t.tokens));
      j.emplace("children", child_array(t.children));
      break;
    case NodeKind::markers:
      j.emplace("priority", t.priority);
      j.emplace("markers", token_array(t.tokens));
      j.emplace("children", child_array(t.children));
      break;
    case NodeKind::sequence: j.emplace("children", child_array(t.children)); break;
    case NodeKind::empty: break;
  }
  return j;
}

namespace detail {

inline Token token_from_json(const Json& j) {
  Token t;
  t.name = j.at("token").get<std::string>();
  t.lexeme = j.at("lexeme").get<std::string>();
  t.span.start = j.at("span").at(0).get<std::size_t>();
  t.span.end = j.at("span").at(1).get<std::size_t>();
  return t;
}

}  // namespace detail

/// Inverse of to_json. Line and column are not serialized and read back as 1:1.
inline TierTree tree_from_json(const Json& j) {
  try {
    auto kind = j.at("kind").get<std::string>();
    TierTree t;
    auto tokens = [&](const char* key) {
      std::vector<Token> out;
      for (const auto& x : j.at(key)) out.push_back(detail::token_from_json(x));
      return out;
    };
    auto children = [&] {
      std::vector<TierTree> out;
      for (const auto& x : j.at("children")) out.push_back(tree_from_json(x));
      return out;
    };
    if (kind == "base") {
      t = TierTree::base(detail::token_from_json(j));
    } else if (kind == "bracket") {
      t = TierTree::bracket(detail::token_from_json(j.at("open")), tree_from_json(j.at("child")),
                            detail::token_from_json(j.at("close")));
    } else if (kind == "prefix" || kind == "postfix") {
      t.kind = kind == "prefix" ? NodeKind::prefix : NodeKind::postfix;
      t.priority = j.at("priority").get<std::size_t>();
      t.tokens = {detail::token_from_json(j.at("operator"))};
      t.children.push_back(tree_from_json(j.at("child")));
    } else if (kind == "connective") {
      t = TierTree::connective(j.at("priority").get<std::size_t>(), children(), tokens("operators"));
    } else if (kind == "markers") {
      t = TierTree::markers(j.at("priority").get<std::size_t>(), children(), tokens("markers"));
    } else if (kind == "seq") {
      t = TierTree::sequence(children());
    } else if (kind == "empty") {
      t = TierTree::empty();
    } else {
      throw Error(Errc::syntax, "unknown node kind '" + kind + "'");
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::syntax, std::string("malformed tree document: ") + e.what());
  }
}

/// S-expression rendering for human diffing, e.g.
/// (markers:1 (seq FIELD:"a" FIELD:"b") NL FIELD:"c").
inline void render_sexpr(const TierTree& t, std::string& out) {
  auto head = [&](std::string_view name, bool with_priority) {
    out += '(';
    out += name;
    if (with_priority) out += ":" + std::to_string(t.priority);
  };
  switch (t.kind) {
    case NodeKind::base:
      out += t.tokens[0].name;
      out += ':';
      out += Json(t.tokens[0].lexeme).dump(-1, ' ', false, Json::error_handler_t::replace);
      return;
    case NodeKind::empty: out += "(empty)"; return;
    case NodeKind::bracket:
      head("bracket", false);
      out += ' ' + t.tokens[0].name + ' ';
      render_sexpr(t.children[0], out);
      out += ' ' + t.tokens[1].name;
      break;
    case NodeKind::prefix:
      head("prefix", true);
      out += ' ' + t.tokens[0].name + ' ';
      render_sexpr(t.children[0], out);
      break;
    case NodeKind::postfix:
      head("postfix", true);
      out += ' ';
      render_sexpr(t.children[0], out);
      out += ' ' + t.tokens[0].name;
      break;
    case NodeKind::connective:
    case NodeKind::markers:
      head(to_string(t.kind), true);
      for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i) out += ' ' + t.tokens[i - 1].name;
        out += ' ';
        render_sexpr(t.children[i], out);
      }
      break;
    case NodeKind::sequence:
      head("seq", false);
      for (const auto& c : t.children) {
        out += ' ';
        render_sexpr(c, out);
      }
      break;
  }
  out += ')';
}

inline std::string render_sexpr(const TierTree& t) {
  std::string out;
  render_sexpr(t, out);
  return out;
}

enum class TreeFormat { json, sexpr };

inline std::string render_tree(const TierTree& t, TreeFormat format) {
  if (format == TreeFormat::sexpr) return render_sexpr(t);
  return to_json(t).dump(2, ' ', false, Json::error_handler_t::replace);
}

}  // namespace tiergram

#endif  // TIERGRAM_TREE_HPP
