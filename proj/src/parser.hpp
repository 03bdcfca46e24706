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

#ifndef POLYCG_SRC_PARSER_HPP
#define POLYCG_SRC_PARSER_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexer.hpp"
#include "polycg/frontend.hpp"
#include "polycg/model.hpp"

namespace polycg::detail {

/// Expression tree as parsed; richer than Expr so calls can be found inside
/// expressions that evaluate to Dynamic.
struct Ast {
  enum class K { Str, OpaqueStr, Name, Call, Concat, Other };

  K k = K::Other;
  std::string value;      // string contents, or dotted name
  std::vector<Ast> kids;  // Call: callee then args; Concat: lhs, rhs
  std::size_t begin = 0;
  std::size_t end = 0;
  bool paren = false;

  bool is_simple_name() const { return k == K::Name && !paren && value.find('.') == std::string::npos; }
};

/// Thrown while parsing a statement that falls outside the subset; the
/// statement list recovers by skipping it.
struct Unsupported {
  std::string what;
  std::size_t line;
  std::size_t col;
};

class ParserBase {
 public:
  SourceUnit finish();

 protected:
  ParserBase(std::string_view src, Language lang, std::string unit_id, std::string path,
             std::vector<Diagnostic>* warnings);
  virtual ~ParserBase() = default;

  // Token cursor.
  const Token& cur() const { return toks_[pos_]; }
  const Token& ahead(std::size_t n = 1) const;
  Token take();
  bool at_punct(std::string_view t) const { return cur().punct(t); }
  bool at_ident(std::string_view t) const { return cur().ident(t); }
  bool accept_punct(std::string_view t);
  bool accept_ident(std::string_view t);
  void expect_punct(std::string_view t);
  bool at_end() const { return cur().kind == Tok::End; }

  [[noreturn]] void hard_error(const Token& at, const std::string& what) const;
  [[noreturn]] void unsupported(const std::string& what) const;
  void warn(const Token& at, const std::string& what);

  // Expressions.
  Ast expr();
  Ast unary();
  virtual bool is_binop(const Token& t) const;
  virtual bool is_prefix(const Token& t) const;
  virtual bool starts_expression(const Token& t) const;
  virtual bool is_reserved(std::string_view word) const = 0;
  /// Optional language hook for primaries such as JS function expressions.
  virtual std::optional<Ast> special_primary() { return std::nullopt; }

  /// Skips a balanced bracket group starting at the current opener.
  void skip_balanced();

  std::string source_of(const Ast& a) const;
  Expr to_expr(const Ast& a) const;
  void collect_calls(const Ast& a, const Label& label, std::vector<CallSite>& out) const;

  // Blocks and labels.
  Label next_label();
  Statement emit_other(std::vector<const Ast*> exprs = {},
                       Statement::Shape shape = Statement::Shape::Simple);
  Statement emit_condition(const Ast& cond, Statement::Shape shape);
  Statement emit_expression(const Ast& e);
  Statement emit_return(const Ast* value);
  Statement emit_assignment(const std::string& var, Expr rhs, std::vector<const Ast*> exprs);

  /// Builds the assignment for `target op= rhs` (or plain `=`).
  Statement emit_assign_op(const Ast& target, const Token& op, const Ast& rhs);
  bool is_assign_op(const Token& t) const;

  /// Parses statements until `done()` holds, recovering from Unsupported.
  void statement_list(std::vector<Statement>& out, const std::function<bool()>& done);
  /// Parses exactly one statement (with recovery) into `out`.
  void one_statement(std::vector<Statement>& out);
  virtual void statement(std::vector<Statement>& out) = 0;
  virtual void skip_statement() = 0;

  void begin_scope(std::string scope);
  void end_scope(std::vector<Statement> body);

  std::string_view src_;
  Language lang_;
  std::string path_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int bracket_depth_ = 0;
  std::string scope_;
  SourceUnit unit_;

 private:
  Ast postfix(Ast a);
  Ast primary();
  void items_until(std::string_view close, std::vector<Ast>& out);
  Ast node(Ast::K k, std::size_t begin, std::vector<Ast> kids = {}) const;

  std::vector<Diagnostic>* warnings_;
  std::map<std::string, std::size_t> counters_;
};

}  // namespace polycg::detail

#endif  // POLYCG_SRC_PARSER_HPP
