// Copyright 2026 The tiergram Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TIERGRAM_GRAMMAR_IO_HPP
#define TIERGRAM_GRAMMAR_IO_HPP

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tiergram/error.hpp"
#include "tiergram/grammar.hpp"

namespace tiergram {

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj, std::initializer_list<std::string_view> allowed,
                                std::string_view where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(Errc::syntax, "unknown key '" + key + "' in " + std::string(where));
    }
  }
}

inline std::vector<std::string> read_name_list(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key)) return {};
  const auto& arr = obj.at(key);
  if (!arr.is_array()) throw Error(Errc::syntax, std::string("'") + key + "' must be an array of token names");
  std::vector<std::string> out;
  for (const auto& v : arr) {
    if (!v.is_string()) throw Error(Errc::syntax, std::string("'") + key + "' must contain only strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

inline OperatorKind read_operator_kind(const nlohmann::json& v) {
  if (!v.is_string()) throw Error(Errc::syntax, "operator tier kind must be a string");
  auto s = v.get<std::string>();
  if (s == "prefix") return OperatorKind::prefix;
  if (s == "postfix") return OperatorKind::postfix;
  if (s == "connective") return OperatorKind::connective;
  throw Error(Errc::syntax, "unknown operator tier kind '" + s + "'");
}

}  // namespace detail

/// Reads a grammar document without checking the class constraints.
inline TierGrammar read_grammar_document(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::syntax, e.what());
  }
  if (!doc.is_object()) throw Error(Errc::syntax, "grammar document must be a JSON object");
  detail::reject_unknown_keys(doc, {"version", "tokens", "base", "open", "close", "marker_tiers", "operator_tiers"},
                              "grammar document");
  if (!doc.contains("version") || doc.at("version") != 1) {
    throw Error(Errc::syntax, "grammar document must declare \"version\": 1");
  }

  TierGrammar g;
  if (!doc.contains("tokens") || !doc.at("tokens").is_array()) {
    throw Error(Errc::syntax, "'tokens' must be an array");
  }
  for (const auto& t : doc.at("tokens")) {
    if (!t.is_object()) throw Error(Errc::syntax, "each token must be an object");
    detail::reject_unknown_keys(t, {"name", "pattern", "skip"}, "token definition");
    if (!t.contains("name") || !t.at("name").is_string() || !t.contains("pattern") || !t.at("pattern").is_string()) {
      throw Error(Errc::syntax, "token definitions need string 'name' and 'pattern'");
    }
    TokenDef def{t.at("name").get<std::string>(), t.at("pattern").get<std::string>(), false};
    if (t.contains("skip")) {
      if (!t.at("skip").is_boolean()) throw Error(Errc::syntax, "'skip' must be a boolean");
      def.skip = t.at("skip").get<bool>();
    }
    g.tokens.push_back(std::move(def));
  }

  g.base = detail::read_name_list(doc, "base");
  g.open = detail::read_name_list(doc, "open");
  g.close = detail::read_name_list(doc, "close");

  if (doc.contains("marker_tiers")) {
    const auto& tiers = doc.at("marker_tiers");
    if (!tiers.is_array()) throw Error(Errc::syntax, "'marker_tiers' must be an array");
    for (const auto& tier : tiers) {
      nlohmann::json wrapper{{"tier", tier}};
      g.marker_tiers.push_back(detail::read_name_list(wrapper, "tier"));
    }
  }
  if (doc.contains("operator_tiers")) {
    const auto& tiers = doc.at("operator_tiers");
    if (!tiers.is_array()) throw Error(Errc::syntax, "'operator_tiers' must be an array");
    for (const auto& tier : tiers) {
      if (!tier.is_object()) throw Error(Errc::syntax, "each operator tier must be an object");
      detail::reject_unknown_keys(tier, {"kind", "terminals"}, "operator tier");
      if (!tier.contains("kind")) throw Error(Errc::syntax, "operator tier without 'kind'");
      g.operator_tiers.push_back({detail::read_operator_kind(tier.at("kind")), detail::read_name_list(tier, "terminals")});
    }
  }
  return g;
}

/// Reads and validates a grammar document. Throws the first validation issue.
inline TierGrammar load_grammar(std::string_view document) {
  TierGrammar g = read_grammar_document(document);
  require_valid(g);
  return g;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::syntax, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline TierGrammar load_grammar_file(const std::string& path) { return load_grammar(read_text_file(path)); }

/// Serializes a grammar in the document format. Names inside each class and
/// tier are sorted; token definitions keep declaration order.
inline std::string save_grammar(const TierGrammar& g) {
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  nlohmann::ordered_json doc;
  doc["version"] = 1;
  doc["tokens"] = nlohmann::ordered_json::array();
  for (const auto& t : g.tokens) {
    doc["tokens"].push_back({{"name", t.name}, {"pattern", t.pattern}, {"skip", t.skip}});
  }
  doc["base"] = sorted(g.base);
  doc["open"] = sorted(g.open);
  doc["close"] = sorted(g.close);
  doc["marker_tiers"] = nlohmann::ordered_json::array();
  for (const auto& tier : g.marker_tiers) doc["marker_tiers"].push_back(sorted(tier));
  doc["operator_tiers"] = nlohmann::ordered_json::array();
  for (const auto& tier : g.operator_tiers) {
    doc["operator_tiers"].push_back({{"kind", std::string(to_string(tier.kind))}, {"terminals", sorted(tier.terminals)}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace tiergram

#endif  // TIERGRAM_GRAMMAR_IO_HPP
