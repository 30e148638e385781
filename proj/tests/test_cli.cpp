// Copyright 2026 The tiergram Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "support.hpp"

namespace tiergram {
namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string g(const char* name) { return test::fixture_path(name); }

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p, std::ios::binary) << body;
  return p;
}

TEST(Cli, Validate) {
  auto r = run({"grammar", "validate", g("g_expr")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "ok: 8 tokens, 0 marker tiers, 3 operator tiers\n");

  auto bad = temp_file("tiergram_bad.json",
                       R"({"tokens":[{"name":"A","pattern":"a"}],"base":["A"],"open":["A"],"close":[],)"
                       R"("marker_tiers":[],"operator_tiers":[]})");
  r = run({"grammar", "validate", bad.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, Lex) {
  auto r = run({"lex", "-g", g("g_expr")}, "12 +x");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "NUM\t0\t2\t12\nPLUS\t3\t4\t+\nID\t4\t5\tx\n");
  r = run({"lex", "-g", g("g_expr")}, "1 $");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(run({"parse", "-g", g("g_expr")}, "1 $").code, 2);
  r = run({"lex", "-g", g("g_expr"), "--lenient"}, "1 $");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("OTHER\t2\t3\t$"), std::string::npos);
}

TEST(Cli, ParseJsonAndSexpr) {
  auto r = run({"parse", "-g", g("g_expr")}, "-(2+3)*4");
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["kind"], "connective");
  EXPECT_EQ(j["priority"], 2);
  r = run({"parse", "-g", g("g_expr"), "--format", "sexpr"}, "1+2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 1), "(");
}

TEST(Cli, ParseError) {
  auto r = run({"parse", "-g", g("g_expr")}, "2+");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err, "1:3: unexpected end of input, expected one of NUM, ID, LPAR, MINUS\n");
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ParseEvents) {
  auto r = run({"parse", "-g", g("g_expr"), "--events"}, "(1)");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "open LPAR \"(\"\nbase NUM \"1\"\nclose RPAR \")\"\n"
            "node bracket children=1 tokens=LPAR,RPAR\nend\n");
}

TEST(Cli, ParseToFileFromFile) {
  auto in = temp_file("tiergram_in.txt", "a,b\nc\n");
  auto out = std::filesystem::temp_directory_path() / "tiergram_out.json";
  auto r = run({"parse", "-g", g("g_csv"), in.string(), "-o", out.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(out);
  auto j = nlohmann::json::parse(f);
  EXPECT_EQ(j["kind"], "markers");
}

TEST(Cli, Check) {
  auto r = run({"check", "-g", g("g_post")}, "w ? !");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "accept\n");
  r = run({"check", "-g", g("g_post")}, "w ! ?");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err.substr(0, 17), "PostfixContext@2:");
}

TEST(Cli, TablesAndExports) {
  auto r = run({"tables", "-g", g("g_expr")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("[E_3, MINUS] E_3 -> MINUS E_3"), std::string::npos);
  r = run({"export-regex", "-g", g("g_csv")});
  EXPECT_EQ(r.out, "FIELD* (COMMA FIELD*)* (NL FIELD* (COMMA FIELD*)*)*\n");
  r = run({"export-regex", "-g", g("g_dyck")});
  EXPECT_EQ(r.code, 2);
  r = run({"export-regular-cfg", "-g", g("g_dyck")});
  EXPECT_EQ(r.out, "S -> ((L S R))*\n");
}

TEST(Cli, Enumerate) {
  auto r = run({"enumerate", "-g", g("g_dyck"), "--max-len", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "<empty>\nL R\nL L R R\nL R L R\n");
  EXPECT_EQ(run({"enumerate", "-g", g("g_dyck"), "--max-len", "11"}).code, 2);
}

TEST(Cli, Usage) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"parse"}).code, 2);
  EXPECT_EQ(run({"parse", "-g", "/nonexistent.json"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

}  // namespace
}  // namespace tiergram
