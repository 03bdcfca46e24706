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
    "if",     "elif",  "else",    "while", "for",   "in",     "def",      "return", "pass",
    "break",  "continue", "import", "from", "as",   "with",   "class",    "try",    "except",
    "finally", "raise", "global", "nonlocal", "lambda", "and", "or",      "not",    "is",
    "del",    "assert", "yield",  "async", "await", "True",   "False",    "None"};

class PythonParser : public ParserBase {
 public:
  PythonParser(std::string_view src, std::string unit_id, std::string path, std::vector<Diagnostic>* warnings)
      : ParserBase(src, Language::Python, std::move(unit_id), std::move(path), warnings) {}

  void run() {
    if (cur().kind == Tok::Indent) hard_error(cur(), "unexpected indent");
    std::vector<Statement> main;
    statement_list(main, [this] { return at_end(); });
    end_scope(std::move(main));
  }

 protected:
  bool is_reserved(std::string_view word) const override { return kReserved.count(word) != 0; }

  bool is_binop(const Token& t) const override {
    return ParserBase::is_binop(t) || t.punct("**") || t.punct("//") || t.punct("@") || t.ident("and") ||
           t.ident("or") || t.ident("in") || t.ident("is");
  }

  bool is_prefix(const Token& t) const override {
    return ParserBase::is_prefix(t) || t.ident("not") || t.ident("await") || t.ident("yield");
  }

  std::optional<Ast> special_primary() override {
    std::size_t begin = cur().begin;
    if (at_ident("True") || at_ident("False") || at_ident("None") || at_punct("...")) {
      take();
      return opaque(begin);
    }
    if (at_ident("lambda")) {
      take();
      while (!at_punct(":")) {
        if (at_end() || cur().kind == Tok::Newline) unsupported("malformed lambda");
        if (at_punct("(") || at_punct("[") || at_punct("{")) {
          skip_balanced();
        } else {
          take();
        }
      }
      take();
      expr();
      // The body runs later, not here: its calls are not collected.
      return opaque(begin);
    }
    return std::nullopt;
  }

  void statement(std::vector<Statement>& out) override {
    line_ended_ = false;
    if (cur().kind == Tok::Newline) {
      take();
      line_ended_ = true;
      return;
    }
    if (cur().kind == Tok::Indent) hard_error(cur(), "unexpected indent");
    if (at_ident("def")) {
      definition();
      return;
    }
    if (at_ident("if")) {
      if_statement(out);
      return;
    }
    if (at_ident("while")) {
      take();
      Ast cond = expr();
      Statement s = emit_condition(cond, Statement::Shape::Loop);
      suite(s.body);
      if (at_ident("else")) unsupported("while-else");
      out.push_back(std::move(s));
      return;
    }
    if (at_ident("for")) {
      for_statement(out);
      return;
    }
    if (at_ident("with")) {
      with_statement(out);
      return;
    }
    if (at_ident("class") || at_ident("try") || at_ident("async") || at_punct("@")) {
      unsupported("statement kind not in subset");
    }
    simple_statement(out);
  }

  void skip_statement() override {
    bool first = true;
    while (first || at_ident("elif") || at_ident("else") || at_ident("except") || at_ident("finally")) {
      first = false;
      while (!at_end() && cur().kind != Tok::Newline) take();
      if (cur().kind == Tok::Newline) take();
      if (cur().kind == Tok::Indent) {
        int depth = 0;
        do {
          if (cur().kind == Tok::Indent) ++depth;
          if (cur().kind == Tok::Dedent) --depth;
          take();
        } while (depth > 0 && !at_end());
      }
    }
    line_ended_ = true;
  }

 private:
  Ast opaque(std::size_t begin) const {
    Ast a;
    a.k = Ast::K::Other;
    a.begin = begin;
    a.end = toks_[pos_ - 1].end;
    return a;
  }

  // After ':' either an indented block or simple statements on the same line.
  void suite(std::vector<Statement>& out) {
    expect_punct(":");
    if (cur().kind == Tok::Newline) {
      take();
      if (cur().kind != Tok::Indent) hard_error(cur(), "expected an indented block");
      take();
      ++depth_;
      statement_list(out, [this] {
        if (cur().kind != Tok::Dedent) return false;
        take();
        return true;
      });
      --depth_;
      return;
    }
    do {
      one_statement(out);
    } while (!line_ended_);
  }

  void end_simple() {
    if (accept_punct(";")) {
      if (cur().kind == Tok::Newline) {
        take();
        line_ended_ = true;
      }
      return;
    }
    if (cur().kind == Tok::Newline) {
      take();
      line_ended_ = true;
      return;
    }
    if (at_end() || cur().kind == Tok::Dedent) {
      line_ended_ = true;
      return;
    }
    unsupported("unexpected token after statement");
  }

  void definition() {
    take();
    if (depth_ > 0 || scope_ != kMainBody) unsupported("nested function definition");
    if (cur().kind != Tok::Ident) unsupported("expected function name");
    std::string name = take().text;
    if (!at_punct("(")) unsupported("expected parameter list");
    skip_balanced();
    if (accept_punct("->")) {
      while (!at_punct(":") && !at_end() && cur().kind != Tok::Newline) take();
    }
    if (unit_.defined_procs.count(name) != 0) unsupported("duplicate definition of '" + name + "'");
    begin_scope(name);
    std::vector<Statement> body;
    suite(body);
    end_scope(std::move(body));
  }

  void if_statement(std::vector<Statement>& out) {
    take();  // 'if' or 'elif'
    Ast cond = expr();
    Statement s = emit_condition(cond, Statement::Shape::Branch);
    suite(s.body);
    if (at_ident("elif")) {
      if_statement(s.else_body);
    } else if (accept_ident("else")) {
      suite(s.else_body);
    }
    out.push_back(std::move(s));
  }

  void for_statement(std::vector<Statement>& out) {
    take();
    std::size_t target_begin = pos_;
    while (!at_ident("in")) {
      if (at_end() || cur().kind == Tok::Newline || at_punct(":")) unsupported("malformed for header");
      if (at_punct("(") || at_punct("[")) {
        skip_balanced();
      } else {
        take();
      }
    }
    bool simple_target = pos_ == target_begin + 1 && toks_[target_begin].kind == Tok::Ident &&
                         !is_reserved(toks_[target_begin].text);
    take();  // 'in'
    Ast iter = expr();
    Statement head;
    if (simple_target) {
      head = emit_assignment(toks_[target_begin].text, Expr::dynamic(source_of(iter)), {&iter});
    } else {
      head = emit_other({&iter});
    }
    head.shape = Statement::Shape::Loop;
    suite(head.body);
    if (at_ident("else")) unsupported("for-else");
    out.push_back(std::move(head));
  }

  void with_statement(std::vector<Statement>& out) {
    take();
    Ast item = expr();
    if (accept_ident("as")) {
      if (cur().kind != Tok::Ident || is_reserved(cur().text) || !ahead().punct(":")) {
        unsupported("with-target form");
      }
      std::string name = take().text;
      out.push_back(emit_assignment(name, to_expr(item), {&item}));
    } else {
      if (at_punct(",")) unsupported("multiple with-items");
      out.push_back(emit_other({&item}));
    }
    suite(out);
  }

  void simple_statement(std::vector<Statement>& out) {
    if (at_ident("return")) {
      take();
      if (cur().kind == Tok::Newline || at_punct(";") || at_end()) {
        out.push_back(emit_return(nullptr));
      } else {
        Ast value = expr();
        if (at_punct(",")) unsupported("tuple return");
        out.push_back(emit_return(&value));
      }
      end_simple();
      return;
    }
    if (at_ident("pass")) {
      take();
      out.push_back(emit_other());
      end_simple();
      return;
    }
    if (at_ident("break") || at_ident("continue")) {
      bool brk = at_ident("break");
      take();
      out.push_back(emit_other({}, brk ? Statement::Shape::Break : Statement::Shape::Continue));
      end_simple();
      return;
    }
    if (at_ident("import") || at_ident("from") || at_ident("global") || at_ident("nonlocal")) {
      while (!at_end() && cur().kind != Tok::Newline && !at_punct(";")) take();
      out.push_back(emit_other());
      end_simple();
      return;
    }
    if (at_ident("del") || at_ident("assert") || at_ident("raise")) {
      bool raise = at_ident("raise");
      take();
      std::vector<Ast> exprs;
      if (cur().kind != Tok::Newline && !at_punct(";") && !at_end()) {
        exprs.push_back(expr());
        while (accept_punct(",") || accept_ident("from")) exprs.push_back(expr());
      }
      std::vector<const Ast*> ptrs;
      for (const Ast& e : exprs) ptrs.push_back(&e);
      out.push_back(emit_other(ptrs, raise ? Statement::Shape::Return : Statement::Shape::Simple));
      end_simple();
      return;
    }
    Ast target = expr();
    if (is_assign_op(cur())) {
      Token op = take();
      Ast rhs = expr();
      if (is_assign_op(cur()) || at_punct(",")) unsupported("chained or tuple assignment");
      out.push_back(emit_assign_op(target, op, rhs));
    } else {
      if (at_punct(",") || at_punct(":")) unsupported("tuple or annotated statement");
      out.push_back(emit_expression(target));
    }
    end_simple();
  }

  int depth_ = 0;
  bool line_ended_ = false;
};

}  // namespace

SourceUnit parse_python(std::string_view text, std::string unit_id, std::string path,
                        std::vector<Diagnostic>* warnings) {
  PythonParser p(text, std::move(unit_id), std::move(path), warnings);
  p.run();
  return p.finish();
}

}  // namespace polycg::detail
