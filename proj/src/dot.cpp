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

#include "polycg/dot.hpp"

#include <algorithm>

namespace polycg {

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        break;
      default:
        out += c;
    }
  }
  return out + "\"";
}

}  // namespace

Language display_language(const CgNode& node) { return node.target_language.value_or(node.language); }

std::string_view dot_shape(Language lang) {
  switch (lang) {
    case Language::C:
      return "ellipse";
    case Language::Python:
      return "box";
    case Language::JavaScript:
      return "hexagon";
    case Language::Shell:
      return "note";
  }
  return "ellipse";
}

std::string dot_label(const CgNode& node) {
  if (node.flag != NodeFlag::AnonymousResolved) return node.proc;
  auto code = std::find_if(node.args.begin(), node.args.end(),
                           [](const Expr& e) { return e.is(Expr::Kind::StringLiteral); });
  if (code == node.args.end()) return node.proc;
  const std::string& text = code->text();
  if (text.size() <= kDotLabelMax) return text;
  return text.substr(0, kDotLabelMax - 3) + "...";
}

std::string emit_dot(const CallGraph& cg) {
  std::string out = "digraph polycg {\n";
  for (const std::string& id : cg.node_ids()) {
    const CgNode& n = cg.node(id);
    out += "  " + quote(id) + " [label=" + quote(dot_label(n)) + ", shape=" +
           std::string(dot_shape(display_language(n)));
    if (is_dynamic(n.flag) || n.flag == NodeFlag::CrossLangCycle) {
      out += ", style=dotted, peripheries=2";
    } else if (n.flag == NodeFlag::Recursive) {
      out += ", style=dotted";
    }
    out += "];\n";
  }
  for (const auto& [from, to] : cg.edges()) out += "  " + quote(from) + " -> " + quote(to) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace polycg
