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

#ifndef POLYCG_SRC_LEXER_HPP
#define POLYCG_SRC_LEXER_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "polycg/model.hpp"

namespace polycg::detail {

enum class Tok { Ident, String, Number, Punct, Newline, Indent, Dedent, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;   // raw spelling
  std::string value;  // decoded string contents (String only)
  bool opaque = false;  // f-string, template literal, regex: not a plain literal
  bool nl_before = false;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t begin = 0;  // byte offsets into the source
  std::size_t end = 0;

  bool is(Tok k, std::string_view t) const { return kind == k && text == t; }
  bool punct(std::string_view t) const { return is(Tok::Punct, t); }
  bool ident(std::string_view t) const { return is(Tok::Ident, t); }
};

/// Throws ParseError on unterminated strings/comments and bad indentation.
std::vector<Token> lex(std::string_view src, Language lang, const std::string& path);

}  // namespace polycg::detail

#endif  // POLYCG_SRC_LEXER_HPP
