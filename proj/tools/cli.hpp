// Copyright 2026 The tiergram Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TIERGRAM_TOOLS_CLI_HPP
#define TIERGRAM_TOOLS_CLI_HPP

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tiergram/testkit.hpp"
#include "tiergram/tiergram.hpp"

namespace tiergram::cli {

enum ExitCode : int { kOk = 0, kReject = 1, kUsage = 2 };

struct CliConfig {
  std::string grammar_path;
  std::string input_path = "-";
  std::string output_path;
  bool lenient = false;
  bool events = false;
  bool chars = false;
  std::string format = "json";
  std::size_t max_len = 4;
};

namespace detail {

inline std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return read_text_file(path);
}

struct Loaded {
  TierGrammar grammar;
  Lexer lexer;
  LexMode mode;
};

inline Loaded load(const CliConfig& c) {
  TierGrammar g = load_grammar_file(c.grammar_path);
  if (c.lenient) g = with_lenient_fallback(std::move(g));
  Lexer lx = compile_lexer(g.tokens);
  return {std::move(g), std::move(lx), c.lenient ? LexMode::lenient : LexMode::strict};
}

inline std::string position(std::size_t line, std::size_t column) {
  return std::to_string(line) + ":" + std::to_string(column);
}

inline std::string quoted(const std::string& lexeme) { return "\"" + escape_lexeme(lexeme) + "\""; }

class EventPrinter : public EventHandler {
 public:
  explicit EventPrinter(std::ostream& out) : out_(out) {}

  void on_base(const Token& t) override { out_ << "base " << t.name << ' ' << quoted(t.lexeme) << '\n'; }
  void on_open(const Token& t) override { out_ << "open " << t.name << ' ' << quoted(t.lexeme) << '\n'; }
  void on_close(const Token& t) override { out_ << "close " << t.name << ' ' << quoted(t.lexeme) << '\n'; }
  void on_node_end(NodeKind kind, std::size_t priority, const std::vector<Token>& tokens,
                   std::size_t child_count) override {
    out_ << "node " << to_string(kind);
    if (kind == NodeKind::prefix || kind == NodeKind::postfix || kind == NodeKind::connective ||
        kind == NodeKind::markers) {
      out_ << ':' << priority;
    }
    out_ << " children=" << child_count;
    if (!tokens.empty()) {
      out_ << " tokens=";
      for (std::size_t i = 0; i < tokens.size(); ++i) out_ << (i ? "," : "") << tokens[i].name;
    }
    out_ << '\n';
  }
  void on_end() override { out_ << "end\n"; }

 private:
  std::ostream& out_;
};

inline void report_parse_error(const ParseError& e, std::ostream& err) {
  err << position(e.line(), e.column()) << ": " << e.describe() << '\n';
}

inline int cmd_validate(const CliConfig& c, std::ostream& out, std::ostream& err) {
  TierGrammar g = read_grammar_document(read_text_file(c.grammar_path));
  auto issues = validate(g);
  if (issues.empty()) {
    compile_lexer(g.tokens);
    out << "ok: " << g.tokens.size() << " tokens, " << g.q() << " marker tiers, " << g.k() << " operator tiers\n";
    return kOk;
  }
  for (const auto& i : issues) err << to_string(i.rule) << ": " << i.message << '\n';
  return kUsage;
}

inline int cmd_lex(const CliConfig& c, std::istream& in, std::ostream& out) {
  auto l = load(c);
  std::string text = read_input(c.input_path, in);
  for (const auto& t : tokenize(l.lexer, text, l.mode)) {
    out << t.name << '\t' << t.span.start << '\t' << t.span.end << '\t' << escape_lexeme(t.lexeme) << '\n';
  }
  return kOk;
}

inline int cmd_parse(const CliConfig& c, std::istream& in, std::ostream& out, std::ostream& err) {
  auto l = load(c);
  Parser p = build_parser(l.grammar);
  std::string text = read_input(c.input_path, in);

  std::ofstream file;
  if (!c.output_path.empty()) {
    file.open(c.output_path, std::ios::binary);
    if (!file) throw Error(Errc::syntax, "cannot write '" + c.output_path + "'");
  }
  std::ostream& sink = c.output_path.empty() ? out : file;

  ParseError error = tiergram::detail::placeholder_error();
  if (c.events) {
    Lexer::Cursor cursor(l.lexer, text, l.mode);
    std::optional<Token> current;
    auto next = [&]() -> const Token* {
      current = cursor.next();
      return current ? &*current : nullptr;
    };
    EventPrinter printer(sink);
    if (!parse_events(p, next, printer, &error)) {
      report_parse_error(error, err);
      return kReject;
    }
    return kOk;
  }

  auto tokens = tokenize(l.lexer, text, l.mode);
  auto tree = try_parse(p, tokens, &error);
  if (!tree) {
    report_parse_error(error, err);
    return kReject;
  }
  sink << render_tree(*tree, c.format == "sexpr" ? TreeFormat::sexpr : TreeFormat::json) << '\n';
  return kOk;
}

inline int cmd_check(const CliConfig& c, std::istream& in, std::ostream& out, std::ostream& err) {
  auto l = load(c);
  std::string text = read_input(c.input_path, in);
  auto tokens = tokenize(l.lexer, text, l.mode);
  if (auto v = check(l.grammar, std::span<const Token>(tokens))) {
    err << to_string(*v) << '\n';
    return kReject;
  }
  out << "accept\n";
  return kOk;
}

inline int cmd_tables(const CliConfig& c, std::ostream& out) {
  out << dump_tables(generate_cfg(load_grammar_file(c.grammar_path)));
  return kOk;
}

inline int cmd_export_regex(const CliConfig& c, std::ostream& out) {
  TierGrammar g = load_grammar_file(c.grammar_path);
  out << (c.chars ? to_char_regex(g) : to_regex(g)) << '\n';
  return kOk;
}

inline int cmd_export_regular_cfg(const CliConfig& c, std::ostream& out) {
  out << render_regular_cfg(to_regular_cfg(load_grammar_file(c.grammar_path))) << '\n';
  return kOk;
}

inline int cmd_enumerate(const CliConfig& c, std::ostream& out) {
  auto language = testkit::enumerate_language(load_grammar_file(c.grammar_path), c.max_len);
  for (const auto& w : language.words()) out << (w.empty() ? "<empty>" : testkit::join(w)) << '\n';
  return kOk;
}

}  // namespace detail

/// Runs one command. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CliConfig c;
  CLI::App app{"Parse and analyse text with tier grammars", "tiergram"};
  app.require_subcommand(1);

  auto* grammar = app.add_subcommand("grammar", "Grammar file operations");
  grammar->require_subcommand(1);
  auto* validate_cmd = grammar->add_subcommand("validate", "Check a grammar document");
  validate_cmd->add_option("grammar", c.grammar_path, "Grammar JSON file")->required();

  auto with_grammar = [&](CLI::App* sub) { sub->add_option("-g,--grammar", c.grammar_path, "Grammar JSON file")->required(); };
  auto with_input = [&](CLI::App* sub) { sub->add_option("input", c.input_path, "Input file, - for stdin"); };

  auto* lex = app.add_subcommand("lex", "Print the token stream");
  with_grammar(lex);
  with_input(lex);
  lex->add_flag("--lenient", c.lenient, "Turn unmatched text into OTHER base tokens");

  auto* parse_cmd = app.add_subcommand("parse", "Print the parse tree or event stream");
  with_grammar(parse_cmd);
  with_input(parse_cmd);
  parse_cmd->add_flag("--lenient", c.lenient, "Turn unmatched text into OTHER base tokens");
  parse_cmd->add_flag("--events", c.events, "Print one event per line instead of a tree");
  parse_cmd->add_option("--format", c.format, "Tree format")->check(CLI::IsMember({"json", "sexpr"}));
  parse_cmd->add_option("-o,--output", c.output_path, "Write the result to a file");

  auto* check_cmd = app.add_subcommand("check", "Decide membership with the local conditions");
  with_grammar(check_cmd);
  with_input(check_cmd);
  check_cmd->add_flag("--lenient", c.lenient, "Turn unmatched text into OTHER base tokens");

  auto* tables = app.add_subcommand("tables", "Print productions, sets and the LL(1) table");
  with_grammar(tables);

  auto* regex = app.add_subcommand("export-regex", "Print the regular expression of a bracket-free grammar");
  with_grammar(regex);
  regex->add_flag("--chars", c.chars, "Use the single-character token patterns as atoms");

  auto* regular = app.add_subcommand("export-regular-cfg", "Print the single-production grammar");
  with_grammar(regular);

  auto* enumerate = app.add_subcommand("enumerate", "List all members up to a length");
  with_grammar(enumerate);
  enumerate->add_option("--max-len", c.max_len, "Maximum length in tokens")->check(CLI::Range(0, 10));

  std::vector<std::string> argv_store{"tiergram"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (validate_cmd->parsed()) return detail::cmd_validate(c, out, err);
    if (lex->parsed()) return detail::cmd_lex(c, in, out);
    if (parse_cmd->parsed()) return detail::cmd_parse(c, in, out, err);
    if (check_cmd->parsed()) return detail::cmd_check(c, in, out, err);
    if (tables->parsed()) return detail::cmd_tables(c, out);
    if (regex->parsed()) return detail::cmd_export_regex(c, out);
    if (regular->parsed()) return detail::cmd_export_regular_cfg(c, out);
    if (enumerate->parsed()) return detail::cmd_enumerate(c, out);
  } catch (const ParseError& e) {
    detail::report_parse_error(e, err);
    return kReject;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace tiergram::cli

#endif  // TIERGRAM_TOOLS_CLI_HPP
