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

#ifndef POLYCG_SRC_CALL_TREE_HPP
#define POLYCG_SRC_CALL_TREE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polycg/callgraph.hpp"

namespace polycg::detail {

/// Where a rewritten (cross-language) leaf continues, if anywhere.
struct Continuation {
  DefinitionRef definition;
  const UnitCalls* unit = nullptr;
};

using CrossResolver = std::function<std::optional<Continuation>(const CgNode& leaf)>;

/// Adds the calls of `scope` in `unit` beneath `parent`, recursing through
/// local definitions and, when `resolve` is set, across languages. `path`
/// holds the definitions on the current ancestry path.
void expand_scope(CallGraph& g, const std::string& parent, const UnitCalls& unit, const std::string& scope,
                  std::vector<DefinitionRef>& path, const CrossResolver& resolve);

}  // namespace polycg::detail

#endif  // POLYCG_SRC_CALL_TREE_HPP
