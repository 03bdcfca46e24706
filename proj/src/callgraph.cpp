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

#include "polycg/callgraph.hpp"

#include <algorithm>
#include <stdexcept>

#include "call_tree.hpp"
#include "polycg/frontend.hpp"

namespace polycg {

UnitCalls UnitCalls::from_unit(const SourceUnit& unit) {
  UnitCalls u;
  u.unit_id = unit.unit_id;
  u.language = unit.language;
  u.path = unit.path;
  u.defined_procs = unit.defined_procs;
  u.by_scope[std::string(kMainBody)];
  for (CallRow& row : extract_facts(unit).calls) u.by_scope[row.label.scope].push_back(std::move(row));
  return u;
}

UnitCalls UnitCalls::from_rows(std::span<const UnitRow> scopes, std::span<const CallRow> calls) {
  UnitCalls u;
  bool have = false;
  auto claim = [&](const std::string& id, Language lang) {
    if (!have) {
      u.unit_id = id;
      u.language = lang;
      have = true;
    } else if (id != u.unit_id) {
      throw std::invalid_argument("rows of more than one unit: '" + u.unit_id + "' and '" + id + "'");
    }
  };
  for (const UnitRow& r : scopes) {
    claim(r.unit_id, r.language);
    u.path = r.path;
    if (r.scope != kMainBody) u.defined_procs.insert(r.scope);
  }
  u.by_scope[std::string(kMainBody)];
  for (const CallRow& c : calls) {
    claim(c.unit_id, c.language);
    u.by_scope[c.label.scope].push_back(c);
  }
  if (u.path.empty()) u.path = u.unit_id;
  return u;
}

std::vector<CallRow> UnitCalls::rows() const {
  std::vector<CallRow> out;
  for (const auto& [scope, rows] : by_scope) out.insert(out.end(), rows.begin(), rows.end());
  std::stable_sort(out.begin(), out.end(), [](const CallRow& a, const CallRow& b) { return a.label < b.label; });
  return out;
}

std::string path_basename(std::string_view path) {
  auto slash = path.find_last_of("/\\");
  return std::string(slash == std::string_view::npos ? path : path.substr(slash + 1));
}

CgNode root_node(const UnitCalls& unit) {
  CgNode root;
  root.proc = path_basename(unit.path);
  root.label = Label{std::string(kMainBody), 0};
  root.language = unit.language;
  root.unit_id = unit.unit_id;
  root.definition = DefinitionRef{unit.unit_id, std::string(kMainBody)};
  return root;
}

namespace detail {

void expand_scope(CallGraph& g, const std::string& parent, const UnitCalls& unit, const std::string& scope,
                  std::vector<DefinitionRef>& path, const CrossResolver& resolve) {
  auto rows = unit.by_scope.find(scope);
  if (rows == unit.by_scope.end()) return;
  for (const CallRow& row : rows->second) {
    CgNode n;
    n.proc = row.callee;
    n.label = row.label;
    n.args = row.args;
    n.language = unit.language;
    n.target_language = row.target_language;
    n.flag = row.flag;
    n.unit_id = unit.unit_id;
    const std::string id = g.add_child(parent, n);

    DefinitionRef def;
    const UnitCalls* next = nullptr;
    if (row.target_language || row.flag != NodeFlag::None) {
      if (!resolve || row.flag != NodeFlag::None) continue;
      auto cont = resolve(g.node(id));
      if (!cont) continue;
      def = std::move(cont->definition);
      next = cont->unit;
    } else if (unit.defined_procs.count(row.callee) != 0) {
      def = DefinitionRef{unit.unit_id, row.callee};
      next = &unit;
    } else {
      continue;
    }
    g.set_definition(id, def);
    if (std::find(path.begin(), path.end(), def) != path.end()) continue;
    path.push_back(def);
    expand_scope(g, id, *next, def.scope, path, resolve);
    path.pop_back();
  }
}

}  // namespace detail

CallGraph build_call_tree(const UnitCalls& unit) {
  CallGraph g(GraphStage::Monolingual);
  CgNode root = root_node(unit);
  std::vector<DefinitionRef> path{*root.definition};
  const std::string id = g.add_root(std::move(root));
  detail::expand_scope(g, id, unit, std::string(kMainBody), path, nullptr);
  return g;
}

CallGraph build_mono_cg(const SourceUnit& unit) {
  CallGraph g = build_call_tree(UnitCalls::from_unit(unit));
  annotate_cycles(g);
  return g;
}

void annotate_cycles(CallGraph& cg) {
  for (const std::string& id : cg.preorder()) {
    const CgNode& n = cg.node(id);
    if (!n.definition || n.flag != NodeFlag::None) continue;
    std::vector<std::string> up = cg.ancestry(id);
    // up.back() is the node itself; find the nearest ancestor expanding the same body.
    for (std::size_t k = up.size() - 1; k-- > 0;) {
      const CgNode& a = cg.node(up[k]);
      if (a.definition != n.definition) continue;
      std::set<Language> langs;
      for (std::size_t j = k + 1; j < up.size(); ++j) langs.insert(cg.node(up[j]).language);
      cg.set_flag(id, langs.size() >= 2 ? NodeFlag::CrossLangCycle : NodeFlag::Recursive);
      break;
    }
  }
}

std::vector<McgRow> to_rows(const CallGraph& cg) {
  std::vector<McgRow> out;
  for (const std::string& id : cg.preorder()) {
    const CgNode& n = cg.node(id);
    out.push_back(McgRow{n.node_id, cg.parent(id), n.proc, n.unit_id, n.label, n.language, n.target_language, n.args,
                         n.flag});
  }
  return out;
}

CallGraph from_rows(std::span<const McgRow> rows, GraphStage stage) {
  CallGraph g(stage);
  for (const McgRow& r : rows) {
    CgNode n;
    n.node_id = r.node_id;
    n.proc = r.proc;
    n.label = r.label;
    n.args = r.args;
    n.language = r.language;
    n.target_language = r.target_language;
    n.flag = r.flag;
    n.unit_id = r.unit_id;
    if (r.parent_id.empty()) {
      if (!g.root().empty()) throw std::invalid_argument("mcg rows contain more than one root");
      g.add_root(std::move(n), true);
    } else {
      if (!g.contains(r.parent_id)) {
        throw std::invalid_argument("mcg row '" + r.node_id + "' precedes its parent '" + r.parent_id + "'");
      }
      g.add_child(r.parent_id, std::move(n), true);
    }
  }
  return g;
}

}  // namespace polycg
