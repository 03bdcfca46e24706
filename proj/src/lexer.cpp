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

#include "lexer.hpp"

#include <array>
#include <cctype>

#include "polycg/frontend.hpp"

namespace polycg::detail {

namespace {

constexpr std::array kPunctC{"<<=", ">>=", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
                             "&&",  "||",  "+=",  "-=", "*=", "/=", "%=", "&=", "|=", "^=", "::"};

constexpr std::array kPunctJs{">>>=", "...", "===", "!==", "**=", "<<=", ">>=", ">>>", "&&=", "||=",
                              "?\?=", "=>",  "==",  "!=",  "<=",  ">=",  "&&",  "||",  "??",  "?.",
                              "++",   "--",  "+=",  "-=",  "*=",  "/=",  "%=",  "&=",  "|=",  "^=",
                              "**",   "<<",  ">>"};

constexpr std::array kPunctPy{"**=", "//=", ">>=", "<<=", "...", "->", ":=", "==", "!=", "<=",
                              ">=",  "**",  "//",  "<<",  ">>",  "+=", "-=", "*=", "/=", "%=",
                              "&=",  "|=",  "^=",  "@="};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

class Lexer {
 public:
  Lexer(std::string_view src, Language lang, const std::string& path) : src_(src), lang_(lang), path_(path) {}

  std::vector<Token> run() {
    if (lang_ == Language::Python) {
      lex_python();
    } else {
      lex_braces();
    }
    Token end;
    end.kind = Tok::End;
    end.line = line_;
    end.col = col();
    end.begin = end.end = src_.size();
    end.nl_before = true;
    out_.push_back(end);
    return std::move(out_);
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::size_t line, std::size_t column,
                         std::string token = {}) const {
    throw ParseError(path_, line, column, std::move(token), what);
  }

  std::size_t col() const { return pos_ - line_start_ + 1; }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0'; }
  bool at_end() const { return pos_ >= src_.size(); }

  void newline() {
    ++line_;
    line_start_ = pos_;
    nl_pending_ = true;
  }

  Token start(Tok kind) const {
    Token t;
    t.kind = kind;
    t.line = line_;
    t.col = col();
    t.begin = pos_;
    t.nl_before = nl_pending_;
    return t;
  }

  void finish(Token t) {
    t.end = pos_;
    if (t.text.empty()) t.text = std::string(src_.substr(t.begin, t.end - t.begin));
    nl_pending_ = false;
    last_significant_ = t;
    have_last_ = true;
    out_.push_back(std::move(t));
  }

  template <std::size_t N>
  void punct(const std::array<const char*, N>& table) {
    Token t = start(Tok::Punct);
    for (const char* p : table) {
      std::string_view cand(p);
      if (src_.substr(pos_, cand.size()) == cand) {
        pos_ += cand.size();
        finish(std::move(t));
        return;
      }
    }
    ++pos_;
    finish(std::move(t));
  }

  void number() {
    Token t = start(Tok::Number);
    while (!at_end() && (ident_char(peek()) || peek() == '.')) {
      char c = peek();
      ++pos_;
      if ((c == 'e' || c == 'E') && (peek() == '+' || peek() == '-')) ++pos_;
    }
    finish(std::move(t));
  }

  void identifier() {
    Token t = start(Tok::Ident);
    while (!at_end() && ident_char(peek())) ++pos_;
    finish(std::move(t));
  }

  // Quoted string starting at pos_ (the opening quote). `raw` disables
  // escape processing.
  void quoted(Token t, char quote, bool triple, bool raw) {
    std::size_t sline = t.line, scol = t.col;
    pos_ += triple ? 3 : 1;
    std::string value;
    while (true) {
      if (at_end()) fail("unterminated string literal", sline, scol);
      char c = peek();
      if (triple) {
        if (c == quote && peek(1) == quote && peek(2) == quote) {
          pos_ += 3;
          break;
        }
      } else if (c == quote) {
        ++pos_;
        break;
      } else if (c == '\n') {
        fail("unterminated string literal", sline, scol);
      }
      if (c == '\\' && pos_ + 1 < src_.size()) {
        char n = src_[pos_ + 1];
        pos_ += 2;
        if (n == '\n') {
          newline();
          nl_pending_ = false;
          continue;
        }
        if (raw) {
          value += '\\';
          value += n;
          continue;
        }
        switch (n) {
          case 'n':
            value += '\n';
            break;
          case 't':
            value += '\t';
            break;
          case 'r':
            value += '\r';
            break;
          case '0':
            value += '\0';
            break;
          case '\\':
          case '\'':
          case '"':
          case '`':
            value += n;
            break;
          default:
            value += '\\';
            value += n;
        }
        continue;
      }
      ++pos_;
      if (c == '\n') {
        newline();
        nl_pending_ = false;
      }
      value += c;
    }
    t.value = std::move(value);
    finish(std::move(t));
  }

  void block_comment() {
    std::size_t sline = line_, scol = col();
    pos_ += 2;
    while (true) {
      if (at_end()) fail("unterminated comment", sline, scol);
      if (peek() == '*' && peek(1) == '/') {
        pos_ += 2;
        return;
      }
      if (peek() == '\n') {
        ++pos_;
        newline();
      } else {
        ++pos_;
      }
    }
  }

  void template_literal() {
    Token t = start(Tok::String);
    t.opaque = true;
    std::size_t sline = line_, scol = col();
    ++pos_;
    int brace = 0;
    while (true) {
      if (at_end()) fail("unterminated template literal", sline, scol);
      char c = peek();
      if (c == '\\') {
        pos_ += 2;
        continue;
      }
      if (c == '`' && brace == 0) {
        ++pos_;
        break;
      }
      if (c == '$' && peek(1) == '{') {
        ++brace;
        pos_ += 2;
        continue;
      }
      if (c == '}' && brace > 0) --brace;
      ++pos_;
      if (c == '\n') {
        newline();
        nl_pending_ = false;
      }
    }
    finish(std::move(t));
  }

  bool regex_allowed() const {
    if (!have_last_) return true;
    const Token& l = last_significant_;
    if (l.kind == Tok::Number || l.kind == Tok::String) return false;
    if (l.kind == Tok::Ident) {
      return l.text == "return" || l.text == "typeof" || l.text == "case" || l.text == "in" ||
             l.text == "of" || l.text == "new" || l.text == "delete" || l.text == "void";
    }
    return !(l.text == ")" || l.text == "]" || l.text == "}");
  }

  void regex() {
    Token t = start(Tok::String);
    t.opaque = true;
    std::size_t sline = line_, scol = col();
    ++pos_;
    bool in_class = false;
    while (true) {
      if (at_end() || peek() == '\n') fail("unterminated regular expression", sline, scol);
      char c = peek();
      ++pos_;
      if (c == '\\') {
        ++pos_;
      } else if (c == '[') {
        in_class = true;
      } else if (c == ']') {
        in_class = false;
      } else if (c == '/' && !in_class) {
        break;
      }
    }
    while (!at_end() && ident_char(peek())) ++pos_;
    finish(std::move(t));
  }

  void lex_braces() {
    bool line_begin = true;
    while (!at_end()) {
      char c = peek();
      if (c == '\n') {
        ++pos_;
        newline();
        line_begin = true;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        ++pos_;
        continue;
      }
      if (lang_ == Language::C && c == '#' && line_begin) {
        // Preprocessor line, including backslash continuations.
        while (!at_end() && peek() != '\n') {
          if (peek() == '\\' && peek(1) == '\n') {
            pos_ += 2;
            newline();
            continue;
          }
          if (peek() == '/' && peek(1) == '*') {
            block_comment();
            continue;
          }
          ++pos_;
        }
        continue;
      }
      line_begin = false;
      if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') ++pos_;
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        block_comment();
        continue;
      }
      if (c == '"' || (lang_ == Language::JavaScript && c == '\'')) {
        quoted(start(Tok::String), c, false, false);
        continue;
      }
      if (lang_ == Language::C && c == '\'') {
        // Character constant: not a string in this subset.
        Token t = start(Tok::Number);
        std::size_t sline = line_, scol = col();
        ++pos_;
        while (!at_end() && peek() != '\'') {
          if (peek() == '\n') fail("unterminated character constant", sline, scol);
          if (peek() == '\\') ++pos_;
          ++pos_;
        }
        if (at_end()) fail("unterminated character constant", sline, scol);
        ++pos_;
        finish(std::move(t));
        continue;
      }
      if (lang_ == Language::C && (c == 'L' || c == 'u' || c == 'U') && (peek(1) == '"')) {
        Token t = start(Tok::String);
        ++pos_;
        quoted(std::move(t), '"', false, false);
        continue;
      }
      if (lang_ == Language::JavaScript && c == '`') {
        template_literal();
        continue;
      }
      if (lang_ == Language::JavaScript && c == '/' && regex_allowed()) {
        regex();
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
        number();
        continue;
      }
      if (ident_start(c)) {
        identifier();
        continue;
      }
      if (lang_ == Language::C) {
        punct(kPunctC);
      } else {
        punct(kPunctJs);
      }
    }
  }

  // --- Python -------------------------------------------------------------

  void emit_layout(Tok kind, std::size_t line, std::size_t column) {
    Token t;
    t.kind = kind;
    t.line = line;
    t.col = column;
    t.begin = t.end = pos_;
    t.text = kind == Tok::Newline ? "<newline>" : kind == Tok::Indent ? "<indent>" : "<dedent>";
    out_.push_back(std::move(t));
  }

  void python_string() {
    Token t = start(Tok::String);
    bool raw = false;
    while (peek() != '\'' && peek() != '"') {
      char p = peek();
      if (p == 'r' || p == 'R') raw = true;
      if (p == 'f' || p == 'F') t.opaque = true;
      ++pos_;
    }
    char q = peek();
    bool triple = peek(1) == q && peek(2) == q;
    quoted(std::move(t), q, triple, raw);
  }

  void lex_python() {
    std::vector<std::size_t> indents{0};
    struct Open {
      char c;
      std::size_t line;
      std::size_t col;
    };
    std::vector<Open> open;
    bool line_has_tokens = false;
    bool at_line_start = true;
    while (true) {
      if (at_line_start && open.empty()) {
        // Measure indentation; skip blank and comment-only lines.
        std::size_t width = 0;
        std::size_t p = pos_;
        while (p < src_.size() && (src_[p] == ' ' || src_[p] == '\t' || src_[p] == '\f')) {
          width = src_[p] == '\t' ? (width / 8 + 1) * 8 : width + 1;
          ++p;
        }
        if (p >= src_.size()) {
          pos_ = p;
          break;
        }
        if (src_[p] == '\n' || src_[p] == '#' || src_[p] == '\r') {
          pos_ = p;
          while (!at_end() && peek() != '\n') ++pos_;
          if (at_end()) break;
          ++pos_;
          newline();
          continue;
        }
        pos_ = p;
        at_line_start = false;
        if (width > indents.back()) {
          indents.push_back(width);
          emit_layout(Tok::Indent, line_, col());
        } else {
          while (width < indents.back()) {
            indents.pop_back();
            emit_layout(Tok::Dedent, line_, col());
          }
          if (width != indents.back()) fail("inconsistent dedent", line_, col());
        }
      }
      if (at_end()) break;
      char c = peek();
      if (c == '\n') {
        ++pos_;
        if (open.empty()) {
          if (line_has_tokens) emit_layout(Tok::Newline, line_, col());
          line_has_tokens = false;
          at_line_start = true;
        }
        newline();
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
        ++pos_;
        continue;
      }
      if (c == '#') {
        while (!at_end() && peek() != '\n') ++pos_;
        continue;
      }
      if (c == '\\' && (peek(1) == '\n' || (peek(1) == '\r' && peek(2) == '\n'))) {
        pos_ += peek(1) == '\r' ? 3 : 2;
        newline();
        nl_pending_ = false;
        continue;
      }
      line_has_tokens = true;
      if (c == '\'' || c == '"' || python_prefix_len() > 0) {
        python_string();
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
        number();
        continue;
      }
      if (ident_start(c)) {
        identifier();
        continue;
      }
      if (c == '(' || c == '[' || c == '{') open.push_back(Open{c, line_, col()});
      if (c == ')' || c == ']' || c == '}') {
        if (open.empty()) fail(std::string("unmatched '") + c + "'", line_, col(), std::string(1, c));
        open.pop_back();
      }
      punct(kPunctPy);
    }
    if (!open.empty()) {
      const Open& o = open.back();
      fail(std::string("unclosed '") + o.c + "'", o.line, o.col, std::string(1, o.c));
    }
    if (line_has_tokens) emit_layout(Tok::Newline, line_, col());
    while (indents.size() > 1) {
      indents.pop_back();
      emit_layout(Tok::Dedent, line_, col());
    }
  }

  std::size_t python_prefix_len() const {
    std::size_t i = 0;
    while (i < 2 && std::string_view("rRbBuUfF").find(peek(i)) != std::string_view::npos) ++i;
    return (peek(i) == '\'' || peek(i) == '"') ? i : 0;
  }

  std::string_view src_;
  Language lang_;
  const std::string& path_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
  bool nl_pending_ = false;
  Token last_significant_;
  bool have_last_ = false;
  std::vector<Token> out_;
};

}  // namespace

std::vector<Token> lex(std::string_view src, Language lang, const std::string& path) {
  return Lexer(src, lang, path).run();
}

}  // namespace polycg::detail
