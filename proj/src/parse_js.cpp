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

#include <set>
#include <string>

#include "parser.hpp"
#include "parsers.hpp"

namespace polycg::detail {

namespace {

const std::set<std::string, std::less<>> kReserved = {
    "if",     "else",   "while",  "for",    "do",     "return",   "break",  "continue", "switch",
    "case",   "default", "function", "var", "let",    "const",    "class",  "new",      "delete",
    "typeof", "void",   "in",     "of",     "instanceof", "try",  "catch",  "finally",  "throw",
    "yield",  "await",  "import", "export", "this",   "true",     "false",  "null",     "async",
    "super",  "extends", "with",  "debugger"};

const std::set<std::string, std::less<>> kStatementWords = {
    "if",  "while", "for",    "do",     "return", "break", "continue", "switch", "function",
    "var", "let",   "const",  "class",  "try",    "throw", "import",   "export"};

class JsParser : public ParserBase {
 public:
  JsParser(std::string_view src, std::string unit_id, std::string path, std::vector<Diagnostic>* warnings)
      : ParserBase(src, Language::JavaScript, std::move(unit_id), std::move(path), warnings) {}

  void run() {
    std::vector<Statement> main;
    statement_list(main, [this] { return at_end(); });
    end_scope(std::move(main));
  }

 protected:
  bool is_reserved(std::string_view word) const override { return kReserved.count(word) != 0; }

  bool is_binop(const Token& t) const override {
    return ParserBase::is_binop(t) || t.punct("&&") || t.punct("||") || t.punct("===") || t.punct("!==") ||
           t.punct("**") || t.punct("??") || t.punct(">>>") || t.ident("instanceof") || t.ident("in");
  }

  bool is_prefix(const Token& t) const override {
    return ParserBase::is_prefix(t) || t.punct("++") || t.punct("--") || t.ident("typeof") || t.ident("void") ||
           t.ident("delete") || t.ident("await") || t.ident("new") || t.ident("yield");
  }

  std::optional<Ast> special_primary() override {
    std::size_t begin = cur().begin;
    if (at_ident("this") || at_ident("true") || at_ident("false") || at_ident("null") || at_ident("super")) {
      take();
      return opaque(begin);
    }
    if (at_ident("async") && (ahead().ident("function") || ahead().punct("(") || ahead().kind == Tok::Ident)) {
      take();
      if (!at_ident("function") && !arrow_ahead()) unsupported("async expression");
    }
    if (at_ident("function")) {
      take();
      accept_punct("*");
      if (cur().kind == Tok::Ident) take();
      if (!at_punct("(")) unsupported("expected parameter list");
      skip_balanced();
      if (!at_punct("{")) unsupported("expected function body");
      skip_balanced();
      return opaque(begin);
    }
    if (arrow_ahead()) {
      if (at_punct("(")) {
        skip_balanced();
      } else {
        take();
      }
      take();  // '=>'
      if (at_punct("{")) {
        skip_balanced();
      } else {
        // Concise body runs later; keep it out of this statement's calls.
        expr();
      }
      return opaque(begin);
    }
    return std::nullopt;
  }

  void statement(std::vector<Statement>& out) override {
    if (accept_punct(";")) return;
    if (at_punct("{")) {
      take();
      statement_list(out, [this] { return accept_punct("}"); });
      return;
    }
    if (at_ident("export")) {
      take();
      accept_ident("default");
    }
    if (at_ident("function")) {
      definition();
      return;
    }
    if (at_ident("if")) {
      take();
      Ast cond = paren_condition();
      Statement s = emit_condition(cond, Statement::Shape::Branch);
      one_statement(s.body);
      if (accept_ident("else")) one_statement(s.else_body);
      out.push_back(std::move(s));
      return;
    }
    if (at_ident("while")) {
      take();
      Ast cond = paren_condition();
      Statement s = emit_condition(cond, Statement::Shape::Loop);
      one_statement(s.body);
      out.push_back(std::move(s));
      return;
    }
    if (at_ident("for")) {
      for_loop(out);
      return;
    }
    if (at_ident("return")) {
      take();
      if (at_statement_end()) {
        end_simple();
        out.push_back(emit_return(nullptr));
        return;
      }
      Ast value = expr();
      end_simple();
      out.push_back(emit_return(&value));
      return;
    }
    if (at_ident("break") || at_ident("continue")) {
      bool brk = at_ident("break");
      take();
      if (cur().kind == Tok::Ident && !cur().nl_before) unsupported("labelled jump");
      end_simple();
      out.push_back(emit_other({}, brk ? Statement::Shape::Break : Statement::Shape::Continue));
      return;
    }
    if (at_ident("throw")) {
      take();
      Ast value = expr();
      end_simple();
      out.push_back(emit_other({&value}, Statement::Shape::Return));
      return;
    }
    if (at_ident("import")) {
      take();
      while (!at_end() && !at_punct(";") && !cur().nl_before) take();
      accept_punct(";");
      out.push_back(emit_other());
      return;
    }
    if (at_ident("var") || at_ident("let") || at_ident("const")) {
      take();
      declaration(out);
      end_simple();
      return;
    }
    if (at_ident("do") || at_ident("switch") || at_ident("try") || at_ident("class") || at_ident("with")) {
      unsupported("statement kind not in subset");
    }
    simple(out);
    end_simple();
  }

  void skip_statement() override {
    bool first = true;
    bool after_group = false;
    while (!at_end()) {
      if (at_punct("}")) return;
      if (!first && cur().nl_before) {
        bool continues = at_ident("else") || at_ident("catch") || at_ident("finally") || at_punct(".") ||
                         at_punct(")") || at_punct(",");
        if (cur().kind == Tok::Ident && kStatementWords.count(cur().text) != 0 && !continues) return;
        if (after_group && !continues && !at_ident("while")) return;
      }
      first = false;
      after_group = false;
      if (accept_punct(";")) return;
      if (at_punct("(") || at_punct("[") || at_punct("{")) {
        bool brace = at_punct("{");
        skip_balanced();
        after_group = brace;
        continue;
      }
      take();
    }
  }

 private:
  Ast opaque(std::size_t begin) const {
    Ast a;
    a.k = Ast::K::Other;
    a.begin = begin;
    a.end = toks_[pos_ - 1].end;
    return a;
  }

  bool arrow_ahead() const {
    if (cur().kind == Tok::Ident && !is_reserved(cur().text)) return ahead().punct("=>");
    if (!at_punct("(")) return false;
    int depth = 0;
    std::size_t i = 0;
    do {
      const Token& t = ahead(i);
      if (t.kind == Tok::End) return false;
      if (t.punct("(") || t.punct("[") || t.punct("{")) ++depth;
      if (t.punct(")") || t.punct("]") || t.punct("}")) --depth;
      ++i;
    } while (depth > 0);
    return ahead(i).punct("=>");
  }

  bool at_statement_end() const { return at_punct(";") || at_punct("}") || at_end() || cur().nl_before; }

  void end_simple() {
    if (accept_punct(";")) return;
    if (at_punct("}") || at_end() || cur().nl_before) return;
    unsupported("expected ';'");
  }

  Ast paren_condition() {
    if (!at_punct("(")) unsupported("expected '('");
    take();
    Ast cond = expr();
    expect_punct(")");
    return cond;
  }

  void simple(std::vector<Statement>& out) {
    Ast target = expr();
    if (is_assign_op(cur())) {
      Token op = take();
      Ast rhs = expr();
      if (is_assign_op(cur())) unsupported("chained assignment");
      out.push_back(emit_assign_op(target, op, rhs));
      return;
    }
    if (at_punct(",")) unsupported("comma expression");
    out.push_back(emit_expression(target));
  }

  void declaration(std::vector<Statement>& out) {
    struct Declarator {
      std::string name;
      std::optional<Ast> init;
    };
    std::vector<Declarator> decls;
    do {
      if (cur().kind != Tok::Ident || is_reserved(cur().text)) unsupported("destructuring declaration");
      Declarator d{take().text, std::nullopt};
      if (accept_punct("=")) d.init = expr();
      decls.push_back(std::move(d));
    } while (accept_punct(","));
    if (decls.size() == 1) {
      if (decls[0].init) {
        const Ast& init = *decls[0].init;
        out.push_back(emit_assignment(decls[0].name, to_expr(init), {&init}));
      } else {
        out.push_back(emit_other());
      }
      return;
    }
    for (const Declarator& d : decls) {
      if (d.init) unsupported("multiple initialized declarators");
    }
    out.push_back(emit_other());
  }

  // `for (init; cond; step) body` runs as init; while (cond) { body; step }.
  // `for (x of xs) body` assigns an unknown value to x at the loop head.
  void for_loop(std::vector<Statement>& out) {
    take();
    if (at_ident("await")) unsupported("for-await");
    expect_punct("(");
    std::size_t i = 0;
    if (cur().ident("var") || cur().ident("let") || cur().ident("const")) i = 1;
    if (ahead(i).kind == Tok::Ident && (ahead(i + 1).ident("of") || ahead(i + 1).ident("in"))) {
      pos_ += i;
      std::string var = take().text;
      take();
      Ast iter = expr();
      expect_punct(")");
      Statement head = emit_assignment(var, Expr::dynamic(source_of(iter)), {&iter});
      head.shape = Statement::Shape::Loop;
      one_statement(head.body);
      out.push_back(std::move(head));
      return;
    }
    if (accept_ident("var") || accept_ident("let") || accept_ident("const")) {
      declaration(out);
      expect_punct(";");
    } else if (!accept_punct(";")) {
      simple(out);
      expect_punct(";");
    }
    Statement head;
    if (at_punct(";")) {
      head = emit_other({}, Statement::Shape::Loop);
    } else {
      Ast cond = expr();
      head = emit_condition(cond, Statement::Shape::Loop);
    }
    expect_punct(";");
    std::size_t step_begin = pos_;
    int depth = 0;
    while (!(depth == 0 && at_punct(")"))) {
      if (at_punct("(")) ++depth;
      if (at_punct(")")) --depth;
      take();
    }
    std::size_t step_end = pos_;
    take();
    one_statement(head.body);
    if (step_end > step_begin) {
      std::size_t resume = pos_;
      pos_ = step_begin;
      simple(head.body);
      if (pos_ != step_end) unsupported("malformed for-loop step");
      pos_ = resume;
    }
    out.push_back(std::move(head));
  }

  void definition() {
    take();
    if (depth_ > 0 || scope_ != kMainBody) unsupported("nested function declaration");
    if (accept_punct("*")) unsupported("generator function");
    if (cur().kind != Tok::Ident) unsupported("expected function name");
    std::string name = take().text;
    if (name == kMainBody || unit_.defined_procs.count(name) != 0) {
      unsupported("duplicate definition of '" + name + "'");
    }
    if (!at_punct("(")) unsupported("expected parameter list");
    skip_balanced();
    if (!at_punct("{")) unsupported("expected function body");
    take();
    begin_scope(name);
    std::vector<Statement> body;
    ++depth_;
    statement_list(body, [this] { return accept_punct("}"); });
    --depth_;
    end_scope(std::move(body));
  }

  int depth_ = 0;
};

}  // namespace

SourceUnit parse_js(std::string_view text, std::string unit_id, std::string path,
                    std::vector<Diagnostic>* warnings) {
  JsParser p(text, std::move(unit_id), std::move(path), warnings);
  p.run();
  return p.finish();
}

}  // namespace polycg::detail
