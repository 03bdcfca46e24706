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

#include "fixtures.hpp"
#include "polycg/interop.hpp"
#include "polycg/table.hpp"

namespace polycg {
namespace {

using testing::analyze_text;
using testing::interop_rows;

std::vector<CallRow> rewrite_fixture(const std::string& file) {
  auto path = testing::fixture_dir("apis") / file;
  auto lang = path.extension() == ".c" ? Language::C : path.extension() == ".py" ? Language::Python
                                                                                 : Language::JavaScript;
  return interop_rows(analyze_text(read_file(path), lang, file).rewritten);
}

std::vector<std::string> callees(const std::vector<CallRow>& rows) {
  std::vector<std::string> out;
  for (const auto& r : rows) out.push_back(r.callee);
  return out;
}

std::string registry_row(const std::string& fields) {
  return "api_name,source_language,target_language,api_class,payload_arg_index,binder_api,binder_name_index,"
         "arg_packer\n" +
         fields + "\n";
}

TEST(Registry, ShippedRegistryHasEveryRole) {
  ApiRegistry reg = default_registry();
  EXPECT_EQ(reg.size(), 11u);
  EXPECT_NE(reg.find(Language::C, "PyRun_SimpleString", ApiClass::Anonymous), nullptr);
  EXPECT_NE(reg.find(Language::C, "system", ApiClass::Anonymous), nullptr);
  EXPECT_NE(reg.find(Language::Python, "os.system", ApiClass::Anonymous), nullptr);
  EXPECT_NE(reg.find(Language::Python, "*.eval", ApiClass::Anonymous), nullptr);
  EXPECT_NE(reg.find(Language::Python, "*.eval", ApiClass::FileBased), nullptr);
  EXPECT_NE(reg.find(Language::C, "emscripten_run_script", ApiClass::Anonymous), nullptr);
  EXPECT_NE(reg.find(Language::C, "PyRun_SimpleFile", ApiClass::FileBased), nullptr);
  EXPECT_NE(reg.find(Language::JavaScript, "JQuery.ajax", ApiClass::FileBased), nullptr);
  EXPECT_NE(reg.find(Language::C, "PyObject_CallObject", ApiClass::ProcedureBased), nullptr);
  EXPECT_NE(reg.find(Language::C, "JS_CallFunctionName", ApiClass::ProcedureBased), nullptr);
  EXPECT_NE(reg.find(Language::Python, "js.call", ApiClass::ProcedureBased), nullptr);
}

TEST(Registry, ShippedFileMatchesEmbeddedText) {
  EXPECT_EQ(read_file(POLYCG_REGISTRY_CSV), default_registry_text());
  EXPECT_EQ(write_registry(default_registry()), default_registry_text());
}

TEST(Registry, WildcardMatchesAnyReceiver) {
  ApiRegistry reg = default_registry();
  auto m = reg.matching(Language::Python, "ctx.eval");
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0]->api_class, ApiClass::Anonymous);
  EXPECT_EQ(m[1]->api_class, ApiClass::FileBased);
  EXPECT_EQ(reg.matching(Language::Python, "a.b.eval").size(), 2u);
  EXPECT_TRUE(reg.matching(Language::Python, "eval").empty());
  EXPECT_TRUE(reg.matching(Language::Python, "evaluate").empty());
  EXPECT_TRUE(reg.matching(Language::JavaScript, "ctx.eval").empty());
  EXPECT_TRUE(reg.matching(Language::C, "os.system").empty());
}

TEST(Registry, InvalidEntriesReportTheirIndex) {
  auto index_of = [](const std::string& text) -> std::size_t {
    try {
      load_registry(text);
    } catch (const RegistryError& e) {
      return e.entry_index();
    }
    return 999;
  };
  const std::string good = "system,C,Shell,Anonymous,0,,,";
  EXPECT_EQ(index_of(registry_row(good + "\nf,Rust,Python,Anonymous,0,,,")), 1u);
  EXPECT_EQ(index_of(registry_row("f,C,Python,Magic,0,,,")), 0u);
  EXPECT_EQ(index_of(registry_row(good + "\n" + good)), 1u);
  EXPECT_EQ(index_of(registry_row("f,C,Python,FileBased,0,open,,")), 0u);
  EXPECT_EQ(index_of(registry_row("f,C,Python,Anonymous,0,,,pack")), 0u);
  EXPECT_EQ(index_of(registry_row("f,C,Python,Anonymous,0,open,0,")), 0u);
  EXPECT_EQ(index_of(registry_row("*eval,Python,JavaScript,Anonymous,0,,,")), 0u);
  EXPECT_EQ(index_of(registry_row("f,C,C,Anonymous,0,,,")), 0u);
  EXPECT_EQ(index_of(registry_row(good + "\nf,C,Python,Anonymous,x,,,")), 1u);
  EXPECT_THROW(load_registry("api_name,oops\n"), RegistryError);
}

TEST(Registry, CustomRegistriesLoad) {
  ApiRegistry reg = load_registry(registry_row("run_lua,C,Python,Anonymous,1,,,"));
  auto a = analyze_text("int main() { run_lua(L, \"print(1)\"); }\n", Language::C, "m.c");
  InteropContext ctx{nullptr, a.facts.calls};
  auto r = rewrite_call_site(Language::C, "run_lua", a.facts.calls[0].args, a.facts.calls[0].label, reg, ctx);
  ASSERT_TRUE(r);
  ASSERT_EQ(r->size(), 1u);
  EXPECT_EQ((*r)[0].args[1], Expr::literal("print(1)"));
}

TEST(AnonymousFilter, OneNodePerReachingValue) {
  auto rows = rewrite_fixture("pyrun_simplestring.c");
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.callee, "Anonymous");
    EXPECT_EQ(r.flag, NodeFlag::AnonymousResolved);
    EXPECT_EQ(r.target_language, Language::Python);
  }
  EXPECT_EQ(rows[0].label, rows[1].label);
  EXPECT_EQ(rows[0].args, std::vector<Expr>{Expr::literal("print('hello')")});
  EXPECT_EQ(rows[1].args, std::vector<Expr>{Expr::literal("print('verbose')")});
  EXPECT_EQ(rows[2].args, std::vector<Expr>{Expr::literal("import sys")});
}

TEST(AnonymousFilter, UnknownPayloadIsFlaggedDynamic) {
  auto rows = rewrite_fixture("system.c");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].flag, NodeFlag::AnonymousResolved);
  EXPECT_EQ(rows[0].target_language, Language::Shell);
  EXPECT_EQ(rows[1].callee, "Anonymous-Dynamic");
  EXPECT_EQ(rows[1].flag, NodeFlag::AnonymousDynamic);
  EXPECT_EQ(rows[1].target_language, Language::Shell);
}

TEST(AnonymousFilter, PythonAndEmscriptenApis) {
  auto os = rewrite_fixture("os_system.py");
  ASSERT_EQ(os.size(), 1u);
  EXPECT_EQ(os[0].args, std::vector<Expr>{Expr::literal("rm -rf build")});
  EXPECT_EQ(os[0].target_language, Language::Shell);
  auto em = rewrite_fixture("emscripten.c");
  ASSERT_EQ(em.size(), 1u);
  EXPECT_EQ(em[0].target_language, Language::JavaScript);
  EXPECT_EQ(em[0].flag, NodeFlag::AnonymousResolved);
}

TEST(AnonymousFilter, FilterDirectly) {
  ApiEntry e;
  e.api_name = "exec";
  e.source_language = Language::Python;
  e.target_language = Language::JavaScript;
  std::vector<Expr> args{Expr::literal("x()"), Expr::var("extra")};
  auto r = filter_anonymous(e, args, Label{"main-body", 0}, InteropContext{});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].proc, "Anonymous");
  EXPECT_EQ(r[0].args, args);
  auto missing = filter_anonymous(e, {}, Label{"main-body", 0}, InteropContext{});
  ASSERT_EQ(missing.size(), 1u);
  EXPECT_EQ(missing[0].flag, NodeFlag::AnonymousDynamic);
}

TEST(FileBasedFilter, PayloadNamesEachFile) {
  auto rows = rewrite_fixture("pyrun_simplefile.c");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(callees(rows), (std::vector<std::string>{"first.py", "second.py"}));
  for (const auto& r : rows) {
    EXPECT_EQ(r.flag, NodeFlag::None);
    EXPECT_EQ(r.target_language, Language::Python);
    EXPECT_EQ(r.args, std::vector<Expr>{Expr::var("fp")});
  }
}

TEST(FileBasedFilter, EvalOfAFileReadUsesTheBinderRole) {
  auto rows = rewrite_fixture("pyv8_eval.py");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].callee, "Anonymous");
  EXPECT_EQ(rows[1].callee, "widget.js");
  EXPECT_EQ(rows[1].flag, NodeFlag::None);
  EXPECT_EQ(rows[1].target_language, Language::JavaScript);
  EXPECT_TRUE(rows[1].args.empty());
}

TEST(FileBasedFilter, ReadResultHeldInAVariable) {
  auto a = analyze_text(
      "f = open(\"a.js\")\n"
      "if p():\n"
      "    f = open(\"b.js\")\n"
      "code = f.read()\n"
      "ctx.eval(code)\n",
      Language::Python, "t.py");
  auto rows = interop_rows(a.rewritten);
  EXPECT_EQ(callees(rows), (std::vector<std::string>{"a.js", "b.js"}));
}

TEST(FileBasedFilter, DottedReadWithoutCall) {
  auto a = analyze_text("with open(\"k.js\") as jsfile:\n    ctx.eval(jsfile.read)\n", Language::Python, "t.py");
  EXPECT_EQ(callees(interop_rows(a.rewritten)), std::vector<std::string>{"k.js"});
}

TEST(FileBasedFilter, UnknownFileIsDynamic) {
  auto a = analyze_text("with open(input()) as f:\n    ctx.eval(f.read())\n", Language::Python, "t.py");
  auto rows = interop_rows(a.rewritten);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].callee, "FileBased-Dynamic");
  EXPECT_EQ(rows[0].flag, NodeFlag::FileBasedDynamic);
  EXPECT_EQ(rows[0].target_language, Language::JavaScript);

  auto ajax = analyze_text("JQuery.ajax(page + \".py\");\n", Language::JavaScript, "t.js");
  auto arows = interop_rows(ajax.rewritten);
  ASSERT_EQ(arows.size(), 1u);
  EXPECT_EQ(arows[0].flag, NodeFlag::FileBasedDynamic);
}

TEST(FileBasedFilter, JQueryAjax) {
  auto rows = rewrite_fixture("jquery_ajax.js");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].callee, "verify.py");
  EXPECT_EQ(rows[0].label, (Label{"submit", 0}));
  EXPECT_EQ(rows[0].target_language, Language::Python);
}

TEST(ProcedureBasedFilter, BinderAndArgumentPacker) {
  auto rows = rewrite_fixture("pyobject_callobject.c");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].callee, "multiply");
  EXPECT_EQ(rows[0].flag, NodeFlag::None);
  EXPECT_EQ(rows[0].target_language, Language::Python);
  EXPECT_EQ(rows[0].args, (std::vector<Expr>{Expr::var("pValue"), Expr::dynamic("PyLong_FromLong(4)")}));
}

TEST(ProcedureBasedFilter, PackerGapsAndNullArguments) {
  auto gap = analyze_text(
      "int main() {\n"
      "  f = PyObject_GetAttrString(m, \"g\");\n"
      "  PyTuple_SetItem(t, 1, x);\n"
      "  PyObject_CallObject(f, t);\n"
      "  PyObject_CallObject(f, NULL);\n"
      "}\n",
      Language::C, "m.c");
  auto rows = interop_rows(gap.rewritten);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].callee, "g");
  EXPECT_EQ(rows[0].args, std::vector<Expr>{Expr::dynamic("t")});
  EXPECT_TRUE(rows[1].args.empty());
}

TEST(ProcedureBasedFilter, HandleBoundTwiceGivesTwoTargets) {
  auto a = analyze_text(
      "int main(int argc) {\n"
      "  f = PyObject_GetAttrString(m, \"add\");\n"
      "  if (argc) f = PyObject_GetAttrString(m, \"sub\");\n"
      "  PyObject_CallObject(f, NULL);\n"
      "}\n",
      Language::C, "m.c");
  EXPECT_EQ(callees(interop_rows(a.rewritten)), (std::vector<std::string>{"add", "sub"}));
}

TEST(ProcedureBasedFilter, HandleFromElsewhereIsDynamic) {
  auto a = analyze_text("int main() {\n  f = lookup(\"x\");\n  PyObject_CallObject(f, NULL);\n}\n", Language::C,
                        "m.c");
  auto rows = interop_rows(a.rewritten);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].callee, "ProcBased-Dynamic");
  EXPECT_EQ(rows[0].flag, NodeFlag::ProcBasedDynamic);
  EXPECT_EQ(rows[0].target_language, Language::Python);
}

TEST(ProcedureBasedFilter, JsApiAndPythonBond) {
  auto jsapi = rewrite_fixture("js_callfunctionname.c");
  ASSERT_EQ(jsapi.size(), 1u);
  EXPECT_EQ(jsapi[0].callee, "greet");
  EXPECT_EQ(jsapi[0].args.size(), 5u);
  EXPECT_EQ(jsapi[0].args[0], Expr::var("cx"));
  auto bond = rewrite_fixture("js_call.py");
  ASSERT_EQ(bond.size(), 1u);
  EXPECT_EQ(bond[0].callee, "welcomeUser");
  EXPECT_EQ(bond[0].args, std::vector<Expr>{Expr::var("user")});
  EXPECT_EQ(bond[0].target_language, Language::JavaScript);
}

TEST(ResolveHandle, DirectBinderCall) {
  ApiRegistry reg = default_registry();
  const ApiEntry* e = reg.find(Language::C, "PyObject_CallObject", ApiClass::ProcedureBased);
  ASSERT_NE(e, nullptr);
  Expr h = Expr::call("PyObject_GetAttrString", {Expr::var("m"), Expr::literal("fn")});
  EXPECT_EQ(resolve_handle(h, Label{"main-body", 0}, *e, InteropContext{}), StaticValue::known({"fn"}));
  EXPECT_FALSE(resolve_handle(Expr::literal("fn"), Label{"main-body", 0}, *e, InteropContext{}).is_known());
}

TEST(RewriteCalls, RowsWithoutInteropPassThroughAndOrderIsKept) {
  auto a = analyze_text("a()\nos.system(\"x\")\nb()\n", Language::Python, "t.py");
  ASSERT_EQ(a.rewritten.size(), 3u);
  EXPECT_EQ(a.rewritten[0], a.facts.calls[0]);
  EXPECT_EQ(a.rewritten[1].callee, "Anonymous");
  EXPECT_EQ(a.rewritten[2], a.facts.calls[2]);
  // Already rewritten rows are left alone.
  DataflowContext flow;
  EXPECT_EQ(rewrite_calls(a.rewritten, default_registry(), flow), a.rewritten);
}

TEST(RewriteCalls, NoDynamicNodeWithoutTargetLanguage) {
  for (const char* f : {"pyrun_simplestring.c", "system.c", "pyrun_simplefile.c", "pyobject_callobject.c",
                        "js_callfunctionname.c", "emscripten.c"}) {
    for (const auto& r : rewrite_fixture(f)) EXPECT_TRUE(r.target_language.has_value()) << f;
  }
}

TEST(ApplyInterop, GraphFormRewritesLeaves) {
  auto a = analyze_text("x = \"1\"\nif p():\n    x = \"2\"\nos.system(x)\n", Language::Python, "t.py");
  CallGraph g = build_call_tree(UnitCalls::from_unit(a.unit));
  DataflowContext flow = DataflowContext::from_unit(a.unit);
  apply_interop(g, default_registry(), InteropContext{&flow, a.facts.calls});
  EXPECT_EQ(g.stage(), GraphStage::InteropRewritten);
  std::vector<std::string> procs;
  for (const auto& id : g.children(g.root())) procs.push_back(g.node(id).proc);
  EXPECT_EQ(procs, (std::vector<std::string>{"p", "Anonymous", "Anonymous"}));
  for (const auto& id : g.children(g.root())) {
    if (g.node(id).proc == "Anonymous") {
      EXPECT_EQ(g.node(id).target_language, Language::Shell);
    }
  }
}

}  // namespace
}  // namespace polycg
