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

#include <random>

#include "oracles.hpp"
#include "polycg/dataflow.hpp"
#include "polycg/frontend.hpp"
#include "program_gen.hpp"

namespace polycg {
namespace {

using testing::GenOptions;
using testing::GenProgram;

ReachingDefs defs(const std::string& var, std::initializer_list<std::optional<std::size_t>> indices) {
  ReachingDefs out;
  for (auto i : indices) out.insert(ReachingDef{var, i});
  return out;
}

DataflowContext context_of(const std::string& text, Language lang = Language::Python) {
  return DataflowContext::from_unit(parse_unit(text, lang, "t"));
}

TEST(StaticValueTest, KnownAndUnknown) {
  EXPECT_FALSE(StaticValue::unknown().is_known());
  EXPECT_FALSE(StaticValue::known({}).is_known());
  std::set<std::string> many;
  for (int i = 0; i <= static_cast<int>(StaticValue::kCap); ++i) many.insert(std::to_string(i));
  EXPECT_FALSE(StaticValue::known(many).is_known());
  many.erase(many.begin());
  EXPECT_TRUE(StaticValue::known(many).is_known());
  EXPECT_EQ(to_string(StaticValue::known({"b", "a"})), "Known{\"a\", \"b\"}");
  EXPECT_EQ(to_string(StaticValue::unknown()), "Unknown");
}

TEST(ReachingDefinitions, StraightLineKillsEarlierDefinitions) {
  auto ctx = context_of("x = \"a\"\nx = \"b\"\nuse(x)\n");
  EXPECT_EQ(ctx.reaching("main-body", {"x"}, 2), defs("x", {1}));
  EXPECT_EQ(ctx.reaching("main-body", {"x"}, 0), defs("x", {std::nullopt}));
}

TEST(ReachingDefinitions, BranchesMerge) {
  auto ctx = context_of("if p:\n    x = \"a\"\nelse:\n    x = \"b\"\nuse(x)\n");
  EXPECT_EQ(ctx.reaching("main-body", {"x"}, 3), defs("x", {1, 2}));
  auto one_armed = context_of("x = \"a\"\nif p:\n    x = \"b\"\nuse(x)\n");
  EXPECT_EQ(one_armed.reaching("main-body", {"x"}, 3), defs("x", {0, 2}));
}

TEST(ReachingDefinitions, LoopsCarryDefinitionsAround) {
  auto ctx = context_of("x = \"a\"\nwhile p():\n    use(x)\n    x = x + \"b\"\nuse(x)\n");
  EXPECT_EQ(ctx.reaching("main-body", {"x"}, 2), defs("x", {0, 3}));
  EXPECT_EQ(ctx.reaching("main-body", {"x"}, 4), defs("x", {0, 3}));
  EXPECT_GE(ctx.iterations("main-body"), 2u);
}

TEST(ReachingDefinitions, EntryMarkerOnlyWhereUnassignedPathsExist) {
  auto ctx = context_of("if p:\n    x = \"a\"\nuse(x)\ny = \"b\"\nuse(y)\n");
  EXPECT_EQ(ctx.reaching("main-body", {"x"}, 2), defs("x", {std::nullopt, 1}));
  EXPECT_EQ(ctx.reaching("main-body", {"y"}, 4), defs("y", {3}));
  EXPECT_EQ(ctx.reaching("main-body", {"z"}, 4), defs("z", {std::nullopt}));
}

TEST(ReachingDefinitions, UnreachableStatementsSeeNothing) {
  auto ctx = context_of("def f():\n    return 1\n    g(x)\n\nf()\n");
  EXPECT_TRUE(ctx.reaching("f", {"x"}, 1).empty());
}

TEST(ReachingDefinitions, ScopesAreIndependent) {
  auto ctx = context_of("def f():\n    x = \"in\"\n    use(x)\n\nx = \"out\"\nf()\nuse(x)\n");
  EXPECT_EQ(ctx.reaching("f", {"x"}, 1), defs("x", {0}));
  EXPECT_EQ(ctx.reaching("main-body", {"x"}, 2), defs("x", {0}));
  EXPECT_EQ(ctx.scopes(), (std::vector<std::string>{"f", "main-body"}));
}

TEST(ReachingDefinitions, BadQueriesThrow) {
  auto ctx = context_of("x = 1\n");
  try {
    ctx.reaching("nope", {"x"}, 0);
    FAIL();
  } catch (const DataflowError& e) {
    EXPECT_EQ(e.kind(), DataflowError::Kind::UnknownScope);
  }
  try {
    ctx.reaching("main-body", {"x"}, 5);
    FAIL();
  } catch (const DataflowError& e) {
    EXPECT_EQ(e.kind(), DataflowError::Kind::UnknownLabel);
  }
}

TEST(ReachingDefinitions, FreeFunctionInfersScopesFromTables) {
  SourceUnit u = parse_unit("x = \"a\"\nif p:\n    x = \"b\"\nuse(x)\n", Language::Python, "t");
  auto assigns = extract_assignments(u);
  auto rflow = extract_reverse_flow(u);
  EXPECT_EQ(reaching_definitions("main-body", {"x"}, 3, assigns, rflow), defs("x", {0, 2}));
  EXPECT_EQ(static_eval(Expr::var("x"), "main-body", 3, assigns, rflow), StaticValue::known({"a", "b"}));
}

TEST(ReachingDefinitions, SeedsOverrideTheSolver) {
  auto ctx = context_of("x = \"a\"\nx = \"b\"\nuse(x)\n");
  ctx.seed(std::vector<RdefRow>{{"t", "main-body", 2, "x", 0}});
  EXPECT_EQ(ctx.reaching("main-body", {"x"}, 2), defs("x", {0}));
  EXPECT_EQ(ctx.eval(Expr::var("x"), "main-body", 2), StaticValue::known({"a"}));
}

TEST(StaticEval, LiteralsVariablesAndConcatenation) {
  auto ctx = context_of(
      "if p:\n"
      "    a = \"x\"\n"
      "else:\n"
      "    a = \"y\"\n"
      "b = a + \".js\"\n"
      "use(b)\n");
  EXPECT_EQ(ctx.eval(Expr::var("b"), "main-body", 4), StaticValue::known({"x.js", "y.js"}));
  EXPECT_EQ(ctx.eval(Expr::concat(Expr::literal("<"), Expr::var("a")), "main-body", 3),
            StaticValue::known({"<x", "<y"}));
  EXPECT_EQ(ctx.eval(Expr::literal("k"), "main-body", 0), StaticValue::known({"k"}));
}

TEST(StaticEval, UnknownSources) {
  auto ctx = context_of("a = input()\nb = \"s\"\nwhile p():\n    b = b + \"s\"\nuse(a)\n");
  EXPECT_FALSE(ctx.eval(Expr::var("a"), "main-body", 4).is_known());
  EXPECT_FALSE(ctx.eval(Expr::var("never"), "main-body", 4).is_known());
  EXPECT_FALSE(ctx.eval(Expr::var("b"), "main-body", 4).is_known());
  EXPECT_FALSE(ctx.eval(Expr::dynamic("1"), "main-body", 0).is_known());
  EXPECT_FALSE(ctx.eval(Expr::call("f", {}), "main-body", 0).is_known());
}

TEST(StaticEval, ProductOverCapIsUnknown) {
  std::string text;
  // Five two-way choices of a one-letter suffix: 32 combinations.
  text += "s = \"\"\n";
  for (int i = 0; i < 5; ++i) text += "if p():\n    s = s + \"a\"\nelse:\n    s = s + \"b\"\n";
  text += "use(s)\n";
  auto ctx = context_of(text);
  EXPECT_FALSE(ctx.eval(Expr::var("s"), "main-body", 16).is_known());
  EXPECT_EQ(ctx.eval(Expr::var("s"), "main-body", 7).values().size(), 4u);
}

TEST(Rdefs, OneRowPerUsedVariableDefinition) {
  SourceUnit u = parse_unit("x = \"a\"\nif p:\n    x = \"b\"\nf(x, y)\n", Language::Python, "t");
  auto ctx = DataflowContext::from_unit(u);
  UnitFacts facts = extract_facts(u);
  auto rows = compute_rdefs("t", ctx, extract_assignments(u), facts.calls);
  std::vector<RdefRow> expected{{"t", "main-body", 3, "x", 0}, {"t", "main-body", 3, "x", 2},
                                {"t", "main-body", 3, "y", std::nullopt}};
  EXPECT_EQ(rows, expected);
  auto uses = collect_uses(extract_assignments(u), facts.calls);
  EXPECT_EQ(uses.at(Label{"main-body", 3}), (std::vector<std::string>{"x", "y"}));
}

// Property tests against the path-enumeration oracle on generated programs.
class GeneratedPrograms : public ::testing::TestWithParam<Language> {};

TEST_P(GeneratedPrograms, ReachingDefinitionsMatchAllPathsEnumeration) {
  std::mt19937_64 rng(GetParam() == Language::Python ? 101 : 202);
  GenOptions opts;
  for (int round = 0; round < 150; ++round) {
    GenProgram p = testing::generate_program(rng, opts);
    const std::string text = testing::render(p, GetParam());
    SourceUnit u = parse_unit(text, GetParam(), "g");
    ASSERT_EQ(u.statement_count("main-body"), testing::statement_count(p)) << text;
    auto ctx = DataflowContext::from_unit(u);
    auto oracle = testing::enumerate_reaching(p, 3);
    const bool exact = !testing::has_loop(p);
    for (const auto& [point, by_var] : oracle) {
      for (const auto& [v, sites] : by_var) {
        ReachingDefs got = ctx.reaching("main-body", {testing::var_name(v)}, point);
        ReachingDefs want;
        for (const auto& s : sites) want.insert(ReachingDef{testing::var_name(v), s});
        if (exact) {
          EXPECT_EQ(got, want) << text << "at " << point;
        } else {
          EXPECT_TRUE(std::includes(got.begin(), got.end(), want.begin(), want.end())) << text << "at " << point;
        }
      }
    }
  }
}

TEST_P(GeneratedPrograms, StaticEvalMatchesExhaustiveExecution) {
  std::mt19937_64 rng(GetParam() == Language::Python ? 303 : 404);
  GenOptions opts;
  opts.single_var_rhs = true;
  for (int round = 0; round < 150; ++round) {
    GenProgram p = testing::generate_program(rng, opts);
    const std::string text = testing::render(p, GetParam());
    auto ctx = DataflowContext::from_unit(parse_unit(text, GetParam(), "g"));
    for (const auto& [point, by_var] : testing::execute_all_branches(p)) {
      for (const auto& [v, observed] : by_var) {
        StaticValue got = ctx.eval(Expr::var(testing::var_name(v)), "main-body", point);
        StaticValue want = observed.unknown ? StaticValue::unknown() : StaticValue::known(observed.values);
        EXPECT_EQ(got, want) << text << "at " << point << " var " << testing::var_name(v) << ": got "
                             << to_string(got) << " want " << to_string(want);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Languages, GeneratedPrograms, ::testing::Values(Language::Python, Language::JavaScript),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(DataflowProperty, SolverIsDeterministicAndMonotoneInLoopBound) {
  std::mt19937_64 rng(55);
  GenOptions opts;
  for (int round = 0; round < 100; ++round) {
    GenProgram p = testing::generate_program(rng, opts);
    SourceUnit u = parse_unit(testing::render(p, Language::Python), Language::Python, "g");
    auto a = DataflowContext::from_unit(u);
    auto b = DataflowContext::from_unit(u);
    auto small = testing::enumerate_reaching(p, 1);
    auto large = testing::enumerate_reaching(p, 3);
    for (std::size_t i = 0; i < testing::statement_count(p); ++i) {
      for (int v = 0; v < p.vars; ++v) {
        std::set<std::string> q{testing::var_name(v)};
        EXPECT_EQ(a.reaching("main-body", q, i), b.reaching("main-body", q, i));
        const auto& s = small[i][v];
        const auto& l = large[i][v];
        EXPECT_TRUE(std::includes(l.begin(), l.end(), s.begin(), s.end()));
      }
    }
  }
}

}  // namespace
}  // namespace polycg
