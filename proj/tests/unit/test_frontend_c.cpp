// Copyright 2026 The polycg Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "polycg/frontend.hpp"

namespace polycg {
namespace {

std::vector<FlowEdge> forward(std::initializer_list<std::pair<std::size_t, std::size_t>> edges,
                              const std::string& scope = "main-body") {
  std::vector<FlowEdge> out;
  for (auto [a, b] : edges) out.push_back(FlowEdge{scope, a, b});
  std::sort(out.begin(), out.end());
  return out;
}

const char* kProgram =
    "#include <stdio.h>\n"
    "static int helper(int n);\n"
    "int helper(int n) {\n"
    "  if (n > 0) return helper(n - 1);\n"
    "  return 0;\n"
    "}\n"
    "int main(int argc, char **argv) {\n"
    "  const char *code = \"print(1)\";\n"
    "  char buf[10];\n"
    "  int i;\n"
    "  for (i = 0; i < 3; i++) {\n"
    "    if (i == 1) continue;\n"
    "    printf(\"%d\", i);\n"
    "  }\n"
    "  while (argc--) { helper(argc); }\n"
    "  code = (const char *)get_code(sizeof(buf));\n"
    "  PyRun_SimpleString(code);\n"
    "  return 0;\n"
    "}\n";

TEST(CFrontend, MainIsTheMainBody) {
  SourceUnit u = parse_unit(kProgram, Language::C, "m.c");
  EXPECT_EQ(u.defined_procs, std::set<std::string>{"helper"});
  EXPECT_EQ(u.statement_count("main-body"), 14u);
  EXPECT_EQ(u.statement_count("helper"), 3u);
}

TEST(CFrontend, ControlFlow) {
  SourceUnit u = parse_unit(kProgram, Language::C, "m.c");
  // 0 code, 1 buf, 2 i, 3 init, 4 head, 5 if, 6 continue, 7 printf, 8 step,
  // 9 while, 10 helper, 11 code =, 12 PyRun, 13 return
  std::vector<FlowEdge> expected = forward({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {4, 9}, {5, 6}, {5, 7}, {6, 4},
                                            {7, 8}, {8, 4}, {9, 10}, {9, 11}, {10, 9}, {11, 12}, {12, 13}});
  auto helper = forward({{0, 1}, {0, 2}}, "helper");
  expected.insert(expected.begin(), helper.begin(), helper.end());
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(build_forward_flow(u), expected);
}

TEST(CFrontend, DeclarationsCastsAndSizeof) {
  SourceUnit u = parse_unit(kProgram, Language::C, "m.c");
  auto as = extract_assignments(u);
  ASSERT_EQ(as.size(), 3u);
  EXPECT_EQ(as[0].variable, "code");
  EXPECT_EQ(as[0].rhs, Expr::literal("print(1)"));
  EXPECT_EQ(as[1].variable, "i");
  EXPECT_TRUE(as[1].rhs.is(Expr::Kind::Dynamic));
  EXPECT_EQ(as[2].label, (Label{"main-body", 11}));
  ASSERT_TRUE(as[2].rhs.is(Expr::Kind::Dynamic));
  EXPECT_EQ(as[2].rhs.text(), "get_code(sizeof(buf))");
  auto calls = extract_calls(u);
  auto get = std::find_if(calls.begin(), calls.end(), [](const CallSite& c) { return c.target == "get_code"; });
  ASSERT_NE(get, calls.end());
  EXPECT_TRUE(get->args.at(0).is(Expr::Kind::Dynamic));
}

TEST(CFrontend, PlusIsNotConcatenationButAdjacentLiteralsJoin) {
  SourceUnit u = parse_unit("int main() {\n  char *s = \"ab\" \"cd\";\n  t = s + 1;\n  s += \"x\";\n}\n",
                            Language::C, "m.c");
  auto as = extract_assignments(u);
  ASSERT_EQ(as.size(), 3u);
  EXPECT_EQ(as[0].rhs, Expr::literal("abcd"));
  EXPECT_TRUE(as[1].rhs.is(Expr::Kind::Dynamic));
  EXPECT_TRUE(as[2].rhs.is(Expr::Kind::Dynamic));
}

TEST(CFrontend, TopLevelCodeOutsideMainIsIgnored) {
  SourceUnit u = parse_unit("int g = 3;\nstruct S { int x; };\nvoid f(void) { a(); }\n", Language::C, "m.c");
  EXPECT_EQ(u.defined_procs, std::set<std::string>{"f"});
  EXPECT_EQ(u.statement_count("main-body"), 0u);
  EXPECT_EQ(extract_scopes(u).front().scope, "main-body");
}

TEST(CFrontend, SwitchAndDoAreUnsupported) {
  std::vector<Diagnostic> warnings;
  SourceUnit u = parse_unit("int main() {\n  switch (x) { case 0: f(); break; }\n  do { g(); } while (0);\n  h();\n}\n",
                            Language::C, "m.c", "m.c", &warnings);
  EXPECT_EQ(warnings.size(), 2u);
  EXPECT_EQ(u.statement_count("main-body"), 3u);
  ASSERT_EQ(extract_calls(u).size(), 1u);
}

TEST(CFrontend, ErrorsNameTheFile) {
  try {
    parse_unit("int main() {\n  f(1);\n", Language::C, "dir/m.c");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.path(), "dir/m.c");
    EXPECT_NE(std::string(e.what()).find("dir/m.c:1:"), std::string::npos);
  }
  EXPECT_THROW(parse_unit("int main() { x = (1 + 2; }\n", Language::C, "m.c"), ParseError);
  EXPECT_THROW(parse_unit("int main() { char *s = \"x; }\n", Language::C, "m.c"), ParseError);
}

TEST(Frontend, ShellIsNotASourceLanguage) {
  EXPECT_THROW(parse_unit("ls\n", Language::Shell, "x.sh"), std::invalid_argument);
}

}  // namespace
}  // namespace polycg
