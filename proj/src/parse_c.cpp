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
    "if",     "else",   "while",  "for",    "do",       "return",  "break",   "continue", "switch",
    "case",   "default", "goto",  "typedef", "struct",  "union",   "enum",    "static",   "extern",
    "const",  "volatile", "int",  "char",   "void",     "long",    "short",   "unsigned", "signed",
    "float",  "double", "sizeof", "auto",   "register", "inline",  "restrict"};

const std::set<std::string, std::less<>> kTypeWords = {
    "const", "volatile", "int",  "char",  "void",   "long",   "short",    "unsigned", "signed",
    "float", "double",   "struct", "union", "enum", "static", "register", "size_t",   "auto"};

bool type_like(const Token& t) {
  if (t.kind != Tok::Ident) return false;
  if (kTypeWords.count(t.text) != 0) return true;
  return t.text.size() > 2 && t.text.compare(t.text.size() - 2, 2, "_t") == 0;
}

class CParser : public ParserBase {
 public:
  CParser(std::string_view src, std::string unit_id, std::string path, std::vector<Diagnostic>* warnings)
      : ParserBase(src, Language::C, std::move(unit_id), std::move(path), warnings) {}

  void run() {
    while (!at_end()) external_declaration();
  }

 protected:
  bool is_reserved(std::string_view word) const override { return kReserved.count(word) != 0; }

  bool is_binop(const Token& t) const override {
    return ParserBase::is_binop(t) || t.punct("&&") || t.punct("||");
  }

  bool is_prefix(const Token& t) const override {
    return ParserBase::is_prefix(t) || t.punct("*") || t.punct("&") || t.punct("++") || t.punct("--");
  }

  std::optional<Ast> special_primary() override {
    std::size_t begin = cur().begin;
    if (at_ident("sizeof")) {
      take();
      if (at_punct("(")) {
        skip_balanced();
      } else {
        unary();
      }
      return opaque(begin);
    }
    if (at_punct("(") && cast_ahead()) {
      skip_balanced();
      // The cast is transparent: the operand keeps its own shape.
      return unary();
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
      if (accept_punct(";")) {
        out.push_back(emit_return(nullptr));
        return;
      }
      Ast value = expr();
      expect_punct(";");
      out.push_back(emit_return(&value));
      return;
    }
    if (at_ident("break") || at_ident("continue")) {
      bool brk = at_ident("break");
      take();
      expect_punct(";");
      out.push_back(emit_other({}, brk ? Statement::Shape::Break : Statement::Shape::Continue));
      return;
    }
    if (declaration_ahead()) {
      declaration(out);
      return;
    }
    simple(out);
    expect_punct(";");
  }

  void skip_statement() override {
    while (!at_end()) {
      if (at_punct("}")) return;
      if (accept_punct(";")) return;
      if (at_punct("{")) {
        skip_balanced();
        if (at_ident("else") || at_ident("while") || !cur().nl_before) continue;
        return;
      }
      if (is_opener(cur())) {
        skip_balanced();
        continue;
      }
      take();
    }
  }

 private:
  static bool is_opener(const Token& t) { return t.punct("(") || t.punct("[") || t.punct("{"); }

  Ast opaque(std::size_t begin) {
    Ast a;
    a.k = Ast::K::Other;
    a.begin = begin;
    a.end = toks_[pos_ - 1].end;
    return a;
  }

  bool cast_ahead() const {
    std::size_t i = 1;
    if (!type_like(ahead(i))) return false;
    while (ahead(i).kind == Tok::Ident || ahead(i).punct("*")) ++i;
    if (!ahead(i).punct(")")) return false;
    const Token& next = ahead(i + 1);
    return next.kind == Tok::Ident || next.kind == Tok::String || next.kind == Tok::Number ||
           next.punct("(") || next.punct("&") || next.punct("*") || next.punct("-") || next.punct("!");
  }

  Ast paren_condition() {
    if (!at_punct("(")) unsupported("expected '('");
    take();
    Ast cond = expr();
    expect_punct(")");
    return cond;
  }

  // Expression statement or assignment, without the terminator.
  void simple(std::vector<Statement>& out) {
    Ast target = expr();
    if (is_assign_op(cur())) {
      Token op = take();
      Ast rhs = expr();
      out.push_back(emit_assign_op(target, op, rhs));
      return;
    }
    out.push_back(emit_expression(target));
  }

  // `for (init; cond; step) body` runs as init; while (cond) { body; step }.
  void for_loop(std::vector<Statement>& out) {
    take();
    expect_punct("(");
    if (declaration_ahead()) {
      declaration(out);
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

  bool declaration_ahead() const {
    if (at_ident("struct") || at_ident("union") || at_ident("enum")) return true;
    if (cur().kind != Tok::Ident) return false;
    std::size_t i = 0;
    std::size_t run = 0;
    while (ahead(i).kind == Tok::Ident || ahead(i).punct("*")) {
      if (ahead(i).kind == Tok::Ident && kReserved.count(ahead(i).text) != 0 && kTypeWords.count(ahead(i).text) == 0) {
        return false;
      }
      ++run;
      ++i;
    }
    if (run < 2) return false;
    return ahead(i).punct("=") || ahead(i).punct(";") || ahead(i).punct(",") || ahead(i).punct("[");
  }

  void declaration(std::vector<Statement>& out) {
    struct Declarator {
      std::string name;
      std::optional<Ast> init;
    };
    std::vector<Declarator> decls;
    // Type specifiers and the first declarator name.
    std::string last;
    while (cur().kind == Tok::Ident || at_punct("*")) {
      if (cur().kind == Tok::Ident) last = cur().text;
      take();
    }
    while (true) {
      while (at_punct("[")) skip_balanced();
      Declarator d{last, std::nullopt};
      if (accept_punct("=")) d.init = expr();
      decls.push_back(std::move(d));
      if (!accept_punct(",")) break;
      while (accept_punct("*")) {
      }
      if (cur().kind != Tok::Ident) unsupported("expected declarator");
      last = take().text;
    }
    expect_punct(";");
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

  void external_declaration() {
    if (accept_punct(";")) return;
    // Find the shape: a parameter list followed by '{' is a function.
    std::size_t start = pos_;
    while (!at_end()) {
      if (cur().kind == Tok::Ident && ahead().punct("(")) {
        std::string name = take().text;
        skip_balanced();
        if (at_punct("{")) {
          function_definition(name, start);
          return;
        }
        continue;
      }
      if (at_punct("{")) {
        skip_balanced();
        continue;
      }
      if (accept_punct(";")) return;
      take();
    }
  }

  void function_definition(const std::string& name, std::size_t start) {
    if (name == kMainBody || (name != "main" && unit_.defined_procs.count(name) != 0)) {
      warn(toks_[start], "duplicate definition of '" + name + "' ignored");
      skip_balanced();
      return;
    }
    take();  // '{'
    begin_scope(name == "main" ? std::string(kMainBody) : name);
    std::vector<Statement> body;
    statement_list(body, [this] { return accept_punct("}"); });
    end_scope(std::move(body));
  }
};

}  // namespace

SourceUnit parse_c(std::string_view text, std::string unit_id, std::string path,
                   std::vector<Diagnostic>* warnings) {
  CParser p(text, std::move(unit_id), std::move(path), warnings);
  p.run();
  return p.finish();
}

}  // namespace polycg::detail
