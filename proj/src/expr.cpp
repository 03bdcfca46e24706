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

#include "polycg/expr.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

namespace polycg {

namespace {

using nlohmann::json;

std::string quote(const std::string& s) {
  return json(s).dump(-1, ' ', false, json::error_handler_t::replace);
}

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool is_name_char(char c) {
  return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

class FlatDecoder {
 public:
  explicit FlatDecoder(std::string_view text) : text_(text) {}

  Expr decode() {
    if (text_.substr(0, 2) == "?:") return Expr::dynamic(std::string(text_.substr(2)));
    Expr e = term();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ExprCodecError("bad flat expression '" + std::string(text_) + "': " + what +
                         " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr term() {
    Expr e = operand();
    while (accept('+')) e = Expr::concat(std::move(e), operand());
    return e;
  }

  Expr operand() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = term();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '"') return Expr::literal(string_literal());
    if (is_name_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (is_name_char(text_[pos_]) || text_[pos_] == '.')) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (!is_dotted_name(name)) fail("bad name");
      if (accept('(')) {
        std::vector<Expr> args;
        if (!accept(')')) {
          do {
            args.push_back(term());
          } while (accept(','));
          if (!accept(')')) fail("expected ')' after arguments");
        }
        return Expr::call(std::move(name), std::move(args));
      }
      return Expr::var(std::move(name));
    }
    fail("unexpected character");
  }

  std::string string_literal() {
    std::size_t start = pos_++;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') ++pos_;
      ++pos_;
    }
    if (pos_ >= text_.size()) fail("unterminated string");
    ++pos_;
    try {
      return json::parse(text_.substr(start, pos_ - start)).get<std::string>();
    } catch (const json::exception&) {
      fail("bad string escape");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr::Expr(Kind kind, std::string text, std::vector<Expr> children)
    : kind_(kind), text_(std::move(text)) {
  if (!children.empty()) children_ = std::make_shared<const std::vector<Expr>>(std::move(children));
}

Expr Expr::literal(std::string value) { return Expr(Kind::StringLiteral, std::move(value)); }

Expr Expr::var(std::string name) { return Expr(Kind::VarRef, std::move(name)); }

Expr Expr::dynamic(std::string source_text) { return Expr(Kind::Dynamic, std::move(source_text)); }

Expr Expr::concat(Expr lhs, Expr rhs) {
  if (lhs.is(Kind::Dynamic) || rhs.is(Kind::Dynamic)) {
    return dynamic(lhs.source() + " + " + rhs.source());
  }
  std::vector<Expr> kids;
  kids.push_back(std::move(lhs));
  kids.push_back(std::move(rhs));
  return Expr(Kind::Concat, {}, std::move(kids));
}

Expr Expr::call(std::string callee, std::vector<Expr> args) {
  bool collapse = !is_dotted_name(callee) ||
                  std::any_of(args.begin(), args.end(), [](const Expr& a) { return a.is(Kind::Dynamic); });
  if (collapse) {
    std::string src = callee + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) src += ", ";
      src += args[i].source();
    }
    return dynamic(src + ")");
  }
  return Expr(Kind::Call, std::move(callee), std::move(args));
}

const Expr& Expr::lhs() const {
  if (kind_ != Kind::Concat) throw std::logic_error("lhs() on non-concat expression");
  return (*children_)[0];
}

const Expr& Expr::rhs() const {
  if (kind_ != Kind::Concat) throw std::logic_error("rhs() on non-concat expression");
  return (*children_)[1];
}

std::span<const Expr> Expr::args() const {
  if (kind_ != Kind::Call || !children_) return {};
  return *children_;
}

std::vector<std::string> Expr::referenced_vars() const {
  std::vector<std::string> out;
  auto walk = [&out](const Expr& e, auto& self) -> void {
    switch (e.kind()) {
      case Kind::VarRef:
        if (std::find(out.begin(), out.end(), e.text()) == out.end()) out.push_back(e.text());
        break;
      case Kind::Concat:
        self(e.lhs(), self);
        self(e.rhs(), self);
        break;
      case Kind::Call:
        for (const Expr& a : e.args()) self(a, self);
        break;
      default:
        break;
    }
  };
  walk(*this, walk);
  return out;
}

std::string Expr::source() const {
  switch (kind_) {
    case Kind::StringLiteral:
      return quote(text_);
    case Kind::VarRef:
    case Kind::Dynamic:
      return text_;
    case Kind::Concat:
      return lhs().source() + " + " + rhs().source();
    case Kind::Call: {
      std::string s = text_ + "(";
      auto as = args();
      for (std::size_t i = 0; i < as.size(); ++i) {
        if (i) s += ", ";
        s += as[i].source();
      }
      return s + ")";
    }
  }
  return text_;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind_ != b.kind_ || a.text_ != b.text_) return false;
  std::size_t na = a.children_ ? a.children_->size() : 0;
  std::size_t nb = b.children_ ? b.children_->size() : 0;
  if (na != nb) return false;
  for (std::size_t i = 0; i < na; ++i) {
    if (!((*a.children_)[i] == (*b.children_)[i])) return false;
  }
  return true;
}

std::string encode_flat(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::StringLiteral:
      return quote(e.text());
    case Expr::Kind::VarRef:
      return e.text();
    case Expr::Kind::Dynamic:
      return "?:" + e.text();
    case Expr::Kind::Concat: {
      std::string rhs = encode_flat(e.rhs());
      if (e.rhs().is(Expr::Kind::Concat)) rhs = "(" + rhs + ")";
      return encode_flat(e.lhs()) + " + " + rhs;
    }
    case Expr::Kind::Call: {
      std::string s = e.text() + "(";
      auto as = e.args();
      for (std::size_t i = 0; i < as.size(); ++i) {
        if (i) s += ", ";
        s += encode_flat(as[i]);
      }
      return s + ")";
    }
  }
  return {};
}

Expr decode_flat(std::string_view text) { return FlatDecoder(text).decode(); }

std::string encode_args(std::span<const Expr> args) {
  json arr = json::array();
  for (const Expr& a : args) arr.push_back(encode_flat(a));
  return arr.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::vector<Expr> decode_args(std::string_view json_text) {
  json arr;
  try {
    arr = json::parse(json_text);
  } catch (const json::exception& ex) {
    throw ExprCodecError("args column is not valid JSON: " + std::string(ex.what()));
  }
  if (!arr.is_array()) throw ExprCodecError("args column must be a JSON array");
  std::vector<Expr> out;
  for (const auto& item : arr) {
    if (!item.is_string()) throw ExprCodecError("args entries must be strings");
    out.push_back(decode_flat(item.get<std::string>()));
  }
  return out;
}

std::string_view kind_name(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::StringLiteral:
      return "literal";
    case Expr::Kind::VarRef:
      return "var";
    case Expr::Kind::Concat:
      return "concat";
    case Expr::Kind::Call:
      return "call";
    case Expr::Kind::Dynamic:
      return "dynamic";
  }
  return "dynamic";
}

Expr::Kind parse_kind_name(std::string_view name) {
  for (auto k : {Expr::Kind::StringLiteral, Expr::Kind::VarRef, Expr::Kind::Concat, Expr::Kind::Call,
                 Expr::Kind::Dynamic}) {
    if (kind_name(k) == name) return k;
  }
  throw ExprCodecError("unknown expression kind '" + std::string(name) + "'");
}

bool is_dotted_name(std::string_view s) {
  if (s.empty()) return false;
  bool at_start = true;
  for (char c : s) {
    if (c == '.') {
      if (at_start) return false;
      at_start = true;
      continue;
    }
    if (at_start ? !is_name_start(c) : !is_name_char(c)) return false;
    at_start = false;
  }
  return !at_start;
}

}  // namespace polycg
