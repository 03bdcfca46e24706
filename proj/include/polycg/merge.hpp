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

#ifndef POLYCG_MERGE_HPP
#define POLYCG_MERGE_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polycg/callgraph.hpp"
#include "polycg/frontend.hpp"
#include "polycg/model.hpp"

namespace polycg {

/// Where cross-language calls may continue: unit main-bodies by file
/// basename, and defined procedures by name, each per language. Holds
/// pointers into the units it was built from.
class DefinitionIndex {
 public:
  DefinitionIndex() = default;
  explicit DefinitionIndex(std::span<const UnitCalls> units);

  /// Candidates for `name` in sorted unit order. File names win over
  /// procedure names.
  std::vector<DefinitionRef> candidates(std::string_view name, Language lang) const;
  const UnitCalls* unit(std::string_view unit_id) const;

 private:
  using Key = std::pair<std::string, Language>;
  std::map<Key, std::vector<DefinitionRef>> files_;
  std::map<Key, std::vector<DefinitionRef>> procs_;
  std::map<std::string, const UnitCalls*, std::less<>> units_;
};

/// First candidate by unit_id; more than one appends an ambiguity
/// diagnostic to `diags` when given.
std::optional<DefinitionRef> find_definition(std::string_view name, Language lang, const DefinitionIndex& defs,
                                             std::vector<Diagnostic>* diags = nullptr);

/// Grafts target-language definitions beneath every rewritten leaf of
/// `cg_m`, recursively, at most once per body along each ancestry path,
/// then annotates cycles. The result has stage Multilingual.
CallGraph merge_multilingual(const CallGraph& cg_m, const DefinitionIndex& defs,
                             std::vector<Diagnostic>* diags = nullptr);

/// Interop-rewritten call tree of `entry_unit` merged across `units`.
/// Throws std::invalid_argument if the entry unit is absent.
CallGraph build_multilingual(std::span<const UnitCalls> units, std::string_view entry_unit,
                             std::vector<Diagnostic>* diags = nullptr);

}  // namespace polycg

#endif  // POLYCG_MERGE_HPP
