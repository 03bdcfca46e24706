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

#ifndef POLYCG_DOT_HPP
#define POLYCG_DOT_HPP

#include <string>
#include <string_view>

#include "polycg/model.hpp"

namespace polycg {

/// Longest label rendered in full; longer code strings are cut.
inline constexpr std::size_t kDotLabelMax = 40;

/// Language a node is drawn as: the target language of a rewritten call,
/// otherwise the language of its call site.
Language display_language(const CgNode& node);

std::string_view dot_shape(Language lang);
/// Node label: the procedure name, or the code string of a resolved
/// anonymous call.
std::string dot_label(const CgNode& node);

/// DOT digraph with nodes and edges in sorted order.
std::string emit_dot(const CallGraph& cg);

}  // namespace polycg

#endif  // POLYCG_DOT_HPP
