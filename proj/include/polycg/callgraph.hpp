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

#ifndef POLYCG_CALLGRAPH_HPP
#define POLYCG_CALLGRAPH_HPP

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polycg/model.hpp"
#include "polycg/table.hpp"

namespace polycg {

/// The call sites of one unit grouped by scope, as read from calls.csv (or
/// its interop-rewritten form) plus units.csv.
struct UnitCalls {
  std::string unit_id;
  Language language = Language::C;
  std::string path;
  std::set<std::string> defined_procs;
  /// Rows of each scope in label order; post-order within a statement.
  std::map<std::string, std::vector<CallRow>> by_scope;

  static UnitCalls from_unit(const SourceUnit& unit);
  /// Throws std::invalid_argument if the rows mention more than one unit.
  static UnitCalls from_rows(std::span<const UnitRow> scopes, std::span<const CallRow> calls);

  std::vector<CallRow> rows() const;
};

/// Last path component of a unit path ("dir/S.py" -> "S.py").
std::string path_basename(std::string_view path);

/// Root pseudo-node of a unit: its main-body, named after the file.
CgNode root_node(const UnitCalls& unit);

/// Call tree of `unit` from its main-body. Calls to locally defined
/// procedures expand through their bodies once per ancestry path; a repeat
/// keeps its definition but no children. Rewritten and dynamic rows stay
/// leaves.
CallGraph build_call_tree(const UnitCalls& unit);

/// Monolingual call graph with recursion annotated.
CallGraph build_mono_cg(const SourceUnit& unit);

/// Flags every ancestry repeat: CrossLangCycle when the code along the
/// cycle spans two or more languages, Recursive otherwise.
void annotate_cycles(CallGraph& cg);

/// mcg.csv rows in pre-order.
std::vector<McgRow> to_rows(const CallGraph& cg);
/// Rebuilds a graph from mcg.csv rows (definitions are not restored).
CallGraph from_rows(std::span<const McgRow> rows, GraphStage stage);

}  // namespace polycg

#endif  // POLYCG_CALLGRAPH_HPP
