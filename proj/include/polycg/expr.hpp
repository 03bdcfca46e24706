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

#ifndef POLYCG_EXPR_HPP
#define POLYCG_EXPR_HPP

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polycg {

/// Argument and right-hand-side expressions, restricted to the forms that
/// static evaluation understands. Everything else is Dynamic.
///
/// Concat and Call never hold a Dynamic child: the factories collapse such
/// an expression into a single Dynamic carrying its rendered source text.
class Expr {
 public:
  enum class Kind { StringLiteral, VarRef, Concat, Call, Dynamic };

  static Expr literal(std::string value);
  static Expr var(std::string name);
  static Expr concat(Expr lhs, Expr rhs);
  /// `callee` must be a dotted name; anything else yields Dynamic.
  static Expr call(std::string callee, std::vector<Expr> args);
  static Expr dynamic(std::string source_text);

  Kind kind() const { return kind_; }
  bool is(Kind k) const { return kind_ == k; }

  /// Literal value, variable name, callee name or opaque source text.
  const std::string& text() const { return text_; }

  const Expr& lhs() const;
  const Expr& rhs() const;
  std::span<const Expr> args() const;

  /// Variables read by this expression, left to right, without duplicates.
  std::vector<std::string> referenced_vars() const;

  /// Approximate source rendering, used for Dynamic collapse and display.
  std::string source() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  Expr(Kind kind, std::string text, std::vector<Expr> children = {});

  Kind kind_;
  std::string text_;
  std::shared_ptr<const std::vector<Expr>> children_;
};

class ExprCodecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat single-string encoding used in the `args` JSON arrays and the
// `rhs_value` column:
//   "text"        string literal (JSON string escaping)
//   name          variable reference (dotted names allowed)
//   a + b         concatenation, right operand parenthesized when it is
//                 itself a concatenation
//   f(a, b)       call with a dotted-name callee
//   ?:text        dynamic, only at top level; text runs to end of string
std::string encode_flat(const Expr& e);
Expr decode_flat(std::string_view text);

/// JSON array of flat strings.
std::string encode_args(std::span<const Expr> args);
std::vector<Expr> decode_args(std::string_view json_text);

std::string_view kind_name(Expr::Kind k);
Expr::Kind parse_kind_name(std::string_view name);

bool is_dotted_name(std::string_view s);

}  // namespace polycg

#endif  // POLYCG_EXPR_HPP
