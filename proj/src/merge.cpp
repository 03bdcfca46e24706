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

#include "polycg/merge.hpp"

#include <algorithm>
#include <stdexcept>

#include "call_tree.hpp"

namespace polycg {

DefinitionIndex::DefinitionIndex(std::span<const UnitCalls> units) {
  for (const UnitCalls& u : units) {
    units_[u.unit_id] = &u;
    files_[{path_basename(u.path), u.language}].push_back(DefinitionRef{u.unit_id, std::string(kMainBody)});
    for (const std::string& p : u.defined_procs) procs_[{p, u.language}].push_back(DefinitionRef{u.unit_id, p});
  }
  for (auto* table : {&files_, &procs_}) {
    for (auto& [key, refs] : *table) std::sort(refs.begin(), refs.end());
  }
}

std::vector<DefinitionRef> DefinitionIndex::candidates(std::string_view name, Language lang) const {
  Key key{std::string(name), lang};
  if (auto it = files_.find(key); it != files_.end()) return it->second;
  if (auto it = procs_.find(key); it != procs_.end()) return it->second;
  return {};
}

const UnitCalls* DefinitionIndex::unit(std::string_view unit_id) const {
  auto it = units_.find(unit_id);
  return it == units_.end() ? nullptr : it->second;
}

std::optional<DefinitionRef> find_definition(std::string_view name, Language lang, const DefinitionIndex& defs,
                                             std::vector<Diagnostic>* diags) {
  std::vector<DefinitionRef> found = defs.candidates(name, lang);
  if (found.empty()) return std::nullopt;
  if (found.size() > 1 && diags != nullptr) {
    std::string units;
    for (const DefinitionRef& d : found) units += (units.empty() ? "" : ", ") + d.unit_id;
    diags->push_back(Diagnostic{found.front().unit_id, 0, 0,
                                "ambiguous definition of '" + std::string(name) + "' (" +
                                    std::string(to_string(lang)) + ") in " + units + "; using " +
                                    found.front().unit_id});
  }
  return found.front();
}

namespace {

// Definitions are not serialized; recover them for graphs read from rows.
void restore_definitions(CallGraph& g, const DefinitionIndex& defs) {
  for (const std::string& id : g.node_ids()) {
    const CgNode& n = g.node(id);
    if (n.definition) continue;
    if (id == g.root()) {
      g.set_definition(id, DefinitionRef{n.unit_id, std::string(kMainBody)});
      continue;
    }
    if (n.target_language || n.flag != NodeFlag::None) continue;
    const UnitCalls* u = defs.unit(n.unit_id);
    if (u != nullptr && u->defined_procs.count(n.proc) != 0) g.set_definition(id, DefinitionRef{n.unit_id, n.proc});
  }
}

void dedupe(std::vector<Diagnostic>& diags, std::size_t from) {
  std::vector<Diagnostic> seen(diags.begin(), diags.begin() + static_cast<std::ptrdiff_t>(from));
  for (std::size_t i = from; i < diags.size(); ++i) {
    bool dup = std::any_of(seen.begin(), seen.end(),
                           [&](const Diagnostic& d) { return d.to_string() == diags[i].to_string(); });
    if (!dup) seen.push_back(diags[i]);
  }
  diags = std::move(seen);
}

}  // namespace

CallGraph merge_multilingual(const CallGraph& cg_m, const DefinitionIndex& defs, std::vector<Diagnostic>* diags) {
  CallGraph g = cg_m;
  const std::size_t first_diag = diags != nullptr ? diags->size() : 0;
  restore_definitions(g, defs);

  detail::CrossResolver resolve = [&](const CgNode& leaf) -> std::optional<detail::Continuation> {
    auto def = find_definition(leaf.proc, *leaf.target_language, defs, diags);
    if (!def) return std::nullopt;
    const UnitCalls* u = defs.unit(def->unit_id);
    if (u == nullptr) return std::nullopt;
    return detail::Continuation{*def, u};
  };

  for (const std::string& id : g.preorder()) {
    const CgNode& n = g.node(id);
    if (!n.target_language || n.flag != NodeFlag::None || !g.is_leaf(id)) continue;
    auto cont = resolve(n);
    if (!cont) continue;
    std::vector<DefinitionRef> path;
    for (const std::string& a : g.ancestry(id)) {
      if (a != id && g.node(a).definition) path.push_back(*g.node(a).definition);
    }
    g.set_definition(id, cont->definition);
    if (std::find(path.begin(), path.end(), cont->definition) != path.end()) continue;
    path.push_back(cont->definition);
    detail::expand_scope(g, id, *cont->unit, cont->definition.scope, path, resolve);
  }

  annotate_cycles(g);
  g.set_stage(GraphStage::Multilingual);
  if (diags != nullptr) dedupe(*diags, first_diag);
  return g;
}

CallGraph build_multilingual(std::span<const UnitCalls> units, std::string_view entry_unit,
                             std::vector<Diagnostic>* diags) {
  auto entry = std::find_if(units.begin(), units.end(), [&](const UnitCalls& u) { return u.unit_id == entry_unit; });
  if (entry == units.end()) throw std::invalid_argument("entry unit '" + std::string(entry_unit) + "' not found");
  CallGraph cg = build_call_tree(*entry);
  cg.set_stage(GraphStage::InteropRewritten);
  return merge_multilingual(cg, DefinitionIndex(units), diags);
}

}  // namespace polycg
