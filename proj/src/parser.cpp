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

#include "parser.hpp"

#include <utility>

namespace polycg::detail {

namespace {

bool is_opener(const Token& t) { return t.punct("(") || t.punct("[") || t.punct("{"); }
bool is_closer(const Token& t) { return t.punct(")") || t.punct("]") || t.punct("}"); }

char closer_for(const std::string& open) { return open == "(" ? ')' : open == "[" ? ']' : '}'; }

// Collapses whitespace runs so Dynamic text stays on one line.
std::string squeeze(std::string_view text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

}  // namespace

ParserBase::ParserBase(std::string_view src, Language lang, std::string unit_id, std::string path,
                       std::vector<Diagnostic>* warnings)
    : src_(src), lang_(lang), path_(std::move(path)), warnings_(warnings) {
  if (path_.empty()) path_ = unit_id;
  toks_ = lex(src_, lang_, path_);
  unit_.unit_id = std::move(unit_id);
  unit_.language = lang_;
  unit_.path = path_;
  scope_ = std::string(kMainBody);
  counters_[scope_] = 0;

  std::vector<const Token*> stack;
  for (const Token& t : toks_) {
    if (is_opener(t)) {
      stack.push_back(&t);
    } else if (is_closer(t)) {
      if (stack.empty() || closer_for(stack.back()->text) != t.text[0]) {
        hard_error(t, "unmatched '" + t.text + "'");
      }
      stack.pop_back();
    }
  }
  if (!stack.empty()) hard_error(*stack.back(), "unclosed '" + stack.back()->text + "'");
}

SourceUnit ParserBase::finish() {
  unit_.structure.try_emplace(std::string(kMainBody));
  return std::move(unit_);
}

const Token& ParserBase::ahead(std::size_t n) const {
  std::size_t i = pos_ + n;
  return i < toks_.size() ? toks_[i] : toks_.back();
}

Token ParserBase::take() {
  Token t = toks_[pos_];
  if (pos_ + 1 < toks_.size()) ++pos_;
  return t;
}

bool ParserBase::accept_punct(std::string_view t) {
  if (!at_punct(t)) return false;
  take();
  return true;
}

bool ParserBase::accept_ident(std::string_view t) {
  if (!at_ident(t)) return false;
  take();
  return true;
}

void ParserBase::expect_punct(std::string_view t) {
  if (!accept_punct(t)) unsupported("expected '" + std::string(t) + "'");
}

void ParserBase::hard_error(const Token& at, const std::string& what) const {
  throw ParseError(path_, at.line, at.col, at.text, what);
}

void ParserBase::unsupported(const std::string& what) const {
  const Token& t = cur();
  std::string msg = what;
  if (t.kind != Tok::End) msg += " near '" + t.text + "'";
  throw Unsupported{msg, t.line, t.col};
}

void ParserBase::warn(const Token& at, const std::string& what) {
  if (warnings_ != nullptr) warnings_->push_back(Diagnostic{path_, at.line, at.col, what});
}

// ---------------------------------------------------------------------------
// Expressions

bool ParserBase::is_binop(const Token& t) const {
  static constexpr std::string_view common[] = {"+",  "-",  "*",  "/",  "%",  "==", "!=", "<",
                                                ">",  "<=", ">=", "&",  "|",  "^",  "<<", ">>"};
  if (t.kind != Tok::Punct) return false;
  for (std::string_view op : common) {
    if (t.text == op) return true;
  }
  return false;
}

bool ParserBase::is_prefix(const Token& t) const {
  return t.punct("-") || t.punct("+") || t.punct("!") || t.punct("~");
}

bool ParserBase::starts_expression(const Token& t) const {
  switch (t.kind) {
    case Tok::String:
    case Tok::Number:
      return true;
    case Tok::Ident:
      return true;
    case Tok::Punct:
      return t.punct("(") || t.punct("[") || t.punct("{") || is_prefix(t);
    default:
      return false;
  }
}

Ast ParserBase::node(Ast::K k, std::size_t begin, std::vector<Ast> kids) const {
  Ast a;
  a.k = k;
  a.kids = std::move(kids);
  a.begin = begin;
  a.end = pos_ > 0 ? toks_[pos_ - 1].end : begin;
  return a;
}

Ast ParserBase::expr() {
  std::size_t begin = cur().begin;
  Ast a = unary();
  while (true) {
    if (lang_ == Language::Python && at_ident("not") && ahead().ident("in")) {
      take();
      take();
      Ast b = unary();
      a = node(Ast::K::Other, begin, {std::move(a), std::move(b)});
      continue;
    }
    if (is_binop(cur())) {
      bool plus = at_punct("+");
      take();
      Ast b = unary();
      bool concat = plus && lang_ != Language::C;
      a = node(concat ? Ast::K::Concat : Ast::K::Other, begin, {std::move(a), std::move(b)});
      continue;
    }
    if (lang_ != Language::Python && at_punct("?")) {
      take();
      Ast then = expr();
      expect_punct(":");
      Ast other = expr();
      a = node(Ast::K::Other, begin, {std::move(a), std::move(then), std::move(other)});
      continue;
    }
    if (lang_ == Language::Python && at_ident("if") && !cur().nl_before) {
      take();
      Ast cond = expr();
      if (!accept_ident("else")) {
        // Comprehension filter: `x for x in xs if cond`.
        a = node(Ast::K::Other, begin, {std::move(a), std::move(cond)});
        continue;
      }
      Ast other = expr();
      a = node(Ast::K::Other, begin, {std::move(a), std::move(cond), std::move(other)});
      continue;
    }
    break;
  }
  return a;
}

Ast ParserBase::unary() {
  std::size_t begin = cur().begin;
  if (is_prefix(cur())) {
    take();
    Ast operand = unary();
    return node(Ast::K::Other, begin, {std::move(operand)});
  }
  return postfix(primary());
}

Ast ParserBase::postfix(Ast a) {
  std::size_t begin = a.begin;
  while (true) {
    if (at_punct("(")) {
      take();
      std::vector<Ast> kids;
      kids.push_back(std::move(a));
      items_until(")", kids);
      a = node(Ast::K::Call, begin, std::move(kids));
      continue;
    }
    if (at_punct(".") || at_punct("?.") || at_punct("->")) {
      bool plain = at_punct(".");
      take();
      if (cur().kind != Tok::Ident) unsupported("expected member name");
      Token name = take();
      if (plain && a.k == Ast::K::Name && !a.paren) {
        a.value += "." + name.text;
        a.end = name.end;
      } else {
        a = node(Ast::K::Other, begin, {std::move(a)});
      }
      continue;
    }
    if (at_punct("[")) {
      take();
      std::vector<Ast> kids;
      kids.push_back(std::move(a));
      items_until("]", kids);
      a = node(Ast::K::Other, begin, std::move(kids));
      continue;
    }
    if (lang_ != Language::Python && (at_punct("++") || at_punct("--")) && !cur().nl_before) {
      take();
      a = node(Ast::K::Other, begin, {std::move(a)});
      continue;
    }
    return a;
  }
}

Ast ParserBase::primary() {
  if (auto special = special_primary()) return std::move(*special);
  const Token& t = cur();
  std::size_t begin = t.begin;
  switch (t.kind) {
    case Tok::String: {
      Ast a;
      a.k = Ast::K::Str;
      a.begin = begin;
      // C and Python join adjacent literals.
      do {
        Token s = take();
        if (s.opaque) a.k = Ast::K::OpaqueStr;
        a.value += s.value;
        a.end = s.end;
      } while (lang_ != Language::JavaScript && cur().kind == Tok::String);
      return a;
    }
    case Tok::Number:
      take();
      return node(Ast::K::Other, begin);
    case Tok::Ident: {
      if (is_reserved(t.text)) unsupported("unexpected keyword");
      Token name = take();
      Ast a = node(Ast::K::Name, begin);
      a.value = name.text;
      return a;
    }
    case Tok::Punct:
      if (t.punct("(")) {
        take();
        ++bracket_depth_;
        Ast inner = expr();
        if (at_punct(",")) {
          // Tuple.
          std::vector<Ast> kids;
          kids.push_back(std::move(inner));
          take();
          --bracket_depth_;
          items_until(")", kids);
          return node(Ast::K::Other, begin, std::move(kids));
        }
        --bracket_depth_;
        expect_punct(")");
        inner.paren = true;
        inner.begin = begin;
        inner.end = toks_[pos_ - 1].end;
        return inner;
      }
      if (t.punct("[") || t.punct("{")) {
        std::string close = t.punct("[") ? "]" : "}";
        take();
        std::vector<Ast> kids;
        items_until(close, kids);
        return node(Ast::K::Other, begin, std::move(kids));
      }
      break;
    default:
      break;
  }
  unsupported("unexpected token in expression");
}

void ParserBase::items_until(std::string_view close, std::vector<Ast>& out) {
  ++bracket_depth_;
  while (!accept_punct(close)) {
    std::size_t begin = cur().begin;
    if (at_punct("*") || at_punct("**") || at_punct("...")) {
      take();
      Ast spread = expr();
      out.push_back(node(Ast::K::Other, begin, {std::move(spread)}));
    } else {
      Ast item = expr();
      if (at_punct("=") && lang_ == Language::Python && item.is_simple_name()) {
        // Keyword argument: kept for call collection, opaque as a value.
        take();
        Ast value = expr();
        item = node(Ast::K::Other, begin, {std::move(value)});
      } else if (at_punct(":")) {
        take();
        Ast value = expr();
        item = node(Ast::K::Other, begin, {std::move(item), std::move(value)});
      }
      if (lang_ == Language::Python && at_ident("for")) {
        // Comprehension: the clause is opaque, inner calls still count.
        std::vector<Ast> kids;
        kids.push_back(std::move(item));
        while (accept_ident("for")) {
          while (!at_ident("in")) {
            if (at_punct(close) || at_end()) unsupported("malformed comprehension");
            take();
          }
          take();
          kids.push_back(expr());
        }
        item = node(Ast::K::Other, begin, std::move(kids));
      }
      out.push_back(std::move(item));
    }
    if (accept_punct(",")) continue;
    if (!at_punct(close)) unsupported("expected ',' or '" + std::string(close) + "'");
  }
  --bracket_depth_;
}

void ParserBase::skip_balanced() {
  int depth = 0;
  do {
    if (is_opener(cur())) ++depth;
    if (is_closer(cur())) --depth;
    take();
  } while (depth > 0 && !at_end());
}

std::string ParserBase::source_of(const Ast& a) const {
  if (a.end <= a.begin) return {};
  return squeeze(src_.substr(a.begin, a.end - a.begin));
}

Expr ParserBase::to_expr(const Ast& a) const {
  switch (a.k) {
    case Ast::K::Str:
      return Expr::literal(a.value);
    case Ast::K::Name:
      return Expr::var(a.value);
    case Ast::K::Concat: {
      Expr lhs = to_expr(a.kids[0]);
      Expr rhs = to_expr(a.kids[1]);
      if (lhs.is(Expr::Kind::Dynamic) || rhs.is(Expr::Kind::Dynamic)) return Expr::dynamic(source_of(a));
      return Expr::concat(std::move(lhs), std::move(rhs));
    }
    case Ast::K::Call: {
      const Ast& callee = a.kids[0];
      if (callee.k != Ast::K::Name) return Expr::dynamic(source_of(a));
      std::vector<Expr> args;
      for (std::size_t i = 1; i < a.kids.size(); ++i) {
        args.push_back(to_expr(a.kids[i]));
        if (args.back().is(Expr::Kind::Dynamic)) return Expr::dynamic(source_of(a));
      }
      return Expr::call(callee.value, std::move(args));
    }
    case Ast::K::OpaqueStr:
    case Ast::K::Other:
      break;
  }
  return Expr::dynamic(source_of(a));
}

void ParserBase::collect_calls(const Ast& a, const Label& label, std::vector<CallSite>& out) const {
  for (const Ast& kid : a.kids) collect_calls(kid, label, out);
  if (a.k != Ast::K::Call) return;
  const Ast& callee = a.kids[0];
  CallSite site;
  site.target = callee.k == Ast::K::Name ? callee.value : source_of(callee);
  for (std::size_t i = 1; i < a.kids.size(); ++i) site.args.push_back(to_expr(a.kids[i]));
  site.label = label;
  out.push_back(std::move(site));
}

// ---------------------------------------------------------------------------
// Blocks

Label ParserBase::next_label() { return Label{scope_, counters_[scope_]++}; }

Statement ParserBase::emit_other(std::vector<const Ast*> exprs, Statement::Shape shape) {
  LabeledBlock b;
  b.label = next_label();
  b.kind = BlockKind::Other;
  for (const Ast* e : exprs) collect_calls(*e, b.label, b.calls);
  Statement s{b.label.index, shape, {}, {}};
  unit_.blocks.push_back(std::move(b));
  return s;
}

Statement ParserBase::emit_condition(const Ast& cond, Statement::Shape shape) {
  LabeledBlock b;
  b.label = next_label();
  b.kind = BlockKind::Condition;
  collect_calls(cond, b.label, b.calls);
  Statement s{b.label.index, shape, {}, {}};
  unit_.blocks.push_back(std::move(b));
  return s;
}

Statement ParserBase::emit_expression(const Ast& e) {
  LabeledBlock b;
  b.label = next_label();
  collect_calls(e, b.label, b.calls);
  if (e.k == Ast::K::Call) {
    b.kind = BlockKind::Call;
    b.payload = b.calls.back();
  }
  Statement s{b.label.index, Statement::Shape::Simple, {}, {}};
  unit_.blocks.push_back(std::move(b));
  return s;
}

Statement ParserBase::emit_return(const Ast* value) {
  LabeledBlock b;
  b.label = next_label();
  b.kind = BlockKind::Return;
  if (value != nullptr) collect_calls(*value, b.label, b.calls);
  Statement s{b.label.index, Statement::Shape::Return, {}, {}};
  unit_.blocks.push_back(std::move(b));
  return s;
}

Statement ParserBase::emit_assignment(const std::string& var, Expr rhs, std::vector<const Ast*> exprs) {
  LabeledBlock b;
  b.label = next_label();
  b.kind = BlockKind::Assignment;
  for (const Ast* e : exprs) collect_calls(*e, b.label, b.calls);
  b.payload = AssignmentRecord{b.label, var, std::move(rhs)};
  Statement s{b.label.index, Statement::Shape::Simple, {}, {}};
  unit_.blocks.push_back(std::move(b));
  return s;
}

bool ParserBase::is_assign_op(const Token& t) const {
  if (t.kind != Tok::Punct || t.text.size() < 1 || t.text.back() != '=') return false;
  if (t.text == "=") return true;
  if (t.text == "==" || t.text == "!=" || t.text == "<=" || t.text == ">=" || t.text == "===" ||
      t.text == "!==") {
    return false;
  }
  return t.text.size() >= 2;
}

Statement ParserBase::emit_assign_op(const Ast& target, const Token& op, const Ast& rhs) {
  if (!target.is_simple_name()) return emit_other({&target, &rhs});
  std::string whole = squeeze(src_.substr(target.begin, rhs.end - target.begin));
  Expr value = Expr::dynamic(whole);
  if (op.text == "=") {
    value = to_expr(rhs);
  } else if (op.text == "+=" && lang_ != Language::C) {
    Expr r = to_expr(rhs);
    if (!r.is(Expr::Kind::Dynamic)) value = Expr::concat(Expr::var(target.value), std::move(r));
  }
  return emit_assignment(target.value, std::move(value), {&rhs});
}

void ParserBase::statement_list(std::vector<Statement>& out, const std::function<bool()>& done) {
  while (!done()) one_statement(out);
}

void ParserBase::one_statement(std::vector<Statement>& out) {
  const std::size_t start = pos_;
  const std::size_t blocks = unit_.blocks.size();
  const std::size_t stmts = out.size();
  const auto counters = counters_;
  const std::string scope = scope_;
  const int depth = bracket_depth_;
  try {
    statement(out);
  } catch (const Unsupported& u) {
    unit_.blocks.resize(blocks);
    out.resize(stmts);
    counters_ = counters;
    scope_ = scope;
    bracket_depth_ = depth;
    pos_ = start;
    const Token at = cur();
    skip_statement();
    if (pos_ == start) take();
    out.push_back(emit_other());
    warn(at, "unsupported construct (" + u.what + "); statement treated as Other");
  }
}

void ParserBase::begin_scope(std::string scope) {
  scope_ = std::move(scope);
  counters_[scope_] = 0;
}

void ParserBase::end_scope(std::vector<Statement> body) {
  unit_.structure[scope_] = std::move(body);
  if (scope_ != kMainBody) unit_.defined_procs.insert(scope_);
  scope_ = std::string(kMainBody);
}

}  // namespace polycg::detail
