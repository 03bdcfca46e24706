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

#include "polycg/model.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>

namespace polycg {

std::string_view to_string(Language lang) {
  switch (lang) {
    case Language::C:
      return "C";
    case Language::Python:
      return "Python";
    case Language::JavaScript:
      return "JavaScript";
    case Language::Shell:
      return "Shell";
  }
  return "C";
}

std::optional<Language> parse_language(std::string_view name) {
  for (auto l : {Language::C, Language::Python, Language::JavaScript, Language::Shell}) {
    if (to_string(l) == name) return l;
  }
  return std::nullopt;
}

std::string to_string(const Label& label) { return label.scope + ":" + std::to_string(label.index); }

std::size_t SourceUnit::statement_count(std::string_view scope) const {
  std::size_t n = 0;
  for (const auto& b : blocks) {
    if (b.label.scope == scope) n = std::max(n, b.label.index + 1);
  }
  return n;
}

std::set<std::string> procs(const SourceUnit& unit) {
  std::set<std::string> out;
  for (const auto& b : unit.blocks) {
    for (const auto& c : b.calls) out.insert(c.target);
  }
  return out;
}

Codebase::Codebase(std::vector<SourceUnit> units) {
  for (auto& u : units) add(std::move(u));
}

void Codebase::add(SourceUnit unit) {
  if (find(unit.unit_id)) throw std::invalid_argument("duplicate unit id '" + unit.unit_id + "'");
  units_.push_back(std::move(unit));
}

const SourceUnit* Codebase::find(std::string_view unit_id) const {
  for (const auto& u : units_) {
    if (u.unit_id == unit_id) return &u;
  }
  return nullptr;
}

std::set<Language> Codebase::languages() const {
  std::set<Language> out;
  for (const auto& u : units_) out.insert(u.language);
  return out;
}

std::string_view to_string(NodeFlag flag) {
  switch (flag) {
    case NodeFlag::None:
      return "None";
    case NodeFlag::AnonymousResolved:
      return "AnonymousResolved";
    case NodeFlag::AnonymousDynamic:
      return "AnonymousDynamic";
    case NodeFlag::FileBasedDynamic:
      return "FileBasedDynamic";
    case NodeFlag::ProcBasedDynamic:
      return "ProcBasedDynamic";
    case NodeFlag::CrossLangCycle:
      return "CrossLangCycle";
    case NodeFlag::Recursive:
      return "Recursive";
  }
  return "None";
}

std::optional<NodeFlag> parse_flag(std::string_view name) {
  for (auto f : {NodeFlag::None, NodeFlag::AnonymousResolved, NodeFlag::AnonymousDynamic,
                 NodeFlag::FileBasedDynamic, NodeFlag::ProcBasedDynamic, NodeFlag::CrossLangCycle,
                 NodeFlag::Recursive}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

bool is_dynamic(NodeFlag flag) {
  return flag == NodeFlag::AnonymousDynamic || flag == NodeFlag::FileBasedDynamic ||
         flag == NodeFlag::ProcBasedDynamic;
}

std::string_view to_string(GraphStage stage) {
  switch (stage) {
    case GraphStage::Monolingual:
      return "Monolingual";
    case GraphStage::InteropRewritten:
      return "InteropRewritten";
    case GraphStage::Multilingual:
      return "Multilingual";
  }
  return "Monolingual";
}

std::string make_node_id(std::string_view unit_id, std::string_view proc, const Label& label,
                         std::size_t occurrence) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0x1f;
    h *= 1099511628211ull;
  };
  mix(unit_id);
  mix(proc);
  mix(label.scope);
  mix(std::to_string(label.index));
  mix(std::to_string(occurrence));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string CallGraph::assign_id(CgNode& node, bool keep_id) {
  if (!(keep_id && !node.node_id.empty())) {
    std::string key = node.unit_id + '\x1f' + node.proc + '\x1f' + node.label.scope + '\x1f' +
                      std::to_string(node.label.index);
    std::size_t& n = occurrences_[key];
    node.node_id = make_node_id(node.unit_id, node.proc, node.label, n++);
  }
  if (entries_.count(node.node_id)) throw std::logic_error("node id collision: " + node.node_id);
  return node.node_id;
}

const std::string& CallGraph::add_root(CgNode node, bool keep_id) {
  if (!root_.empty()) throw std::logic_error("call graph already has a root");
  std::string id = assign_id(node, keep_id);
  auto [it, _] = entries_.emplace(id, Entry{std::move(node), {}, {}});
  root_ = id;
  return it->first;
}

const std::string& CallGraph::add_child(const std::string& parent, CgNode node, bool keep_id) {
  entry(parent);
  std::string id = assign_id(node, keep_id);
  auto [it, _] = entries_.emplace(id, Entry{std::move(node), parent, {}});
  entry(parent).children.push_back(id);
  return it->first;
}

std::vector<std::string> CallGraph::replace(const std::string& id, std::vector<CgNode> replacements) {
  if (id == root_) throw std::logic_error("cannot replace the root node");
  std::string parent = entry(id).parent;
  auto& siblings = entry(parent).children;
  auto pos = std::find(siblings.begin(), siblings.end(), id) - siblings.begin();
  erase_subtree(id);
  auto& sibs = entry(parent).children;
  sibs.erase(sibs.begin() + pos);

  std::vector<std::string> ids;
  for (auto& r : replacements) {
    std::string nid = assign_id(r, false);
    entries_.emplace(nid, Entry{std::move(r), parent, {}});
    ids.push_back(nid);
  }
  auto& kids = entry(parent).children;
  kids.insert(kids.begin() + pos, ids.begin(), ids.end());
  return ids;
}

void CallGraph::erase_subtree(const std::string& id) {
  std::vector<std::string> kids = entry(id).children;
  for (const auto& k : kids) erase_subtree(k);
  entries_.erase(id);
}

CallGraph::Entry& CallGraph::entry(std::string_view id) {
  auto it = entries_.find(std::string(id));
  if (it == entries_.end()) throw std::out_of_range("unknown node id '" + std::string(id) + "'");
  return it->second;
}

const CallGraph::Entry& CallGraph::entry(std::string_view id) const {
  auto it = entries_.find(std::string(id));
  if (it == entries_.end()) throw std::out_of_range("unknown node id '" + std::string(id) + "'");
  return it->second;
}

const CgNode& CallGraph::node(std::string_view id) const { return entry(id).node; }

void CallGraph::set_flag(std::string_view id, NodeFlag flag) { entry(id).node.flag = flag; }

void CallGraph::set_definition(std::string_view id, DefinitionRef def) {
  entry(id).node.definition = std::move(def);
}

const std::vector<std::string>& CallGraph::children(std::string_view id) const { return entry(id).children; }

const std::string& CallGraph::parent(std::string_view id) const { return entry(id).parent; }

std::vector<std::string> CallGraph::preorder() const {
  std::vector<std::string> out;
  if (root_.empty()) return out;
  std::vector<std::string> stack{root_};
  while (!stack.empty()) {
    std::string id = std::move(stack.back());
    stack.pop_back();
    const auto& kids = children(id);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    out.push_back(std::move(id));
  }
  return out;
}

std::vector<std::string> CallGraph::node_ids() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [id, _] : entries_) out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<std::string, std::string>> CallGraph::edges() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [id, e] : entries_) {
    for (const auto& c : e.children) out.emplace_back(id, c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> CallGraph::ancestry(std::string_view id) const {
  std::vector<std::string> out;
  std::string cur(id);
  while (!cur.empty()) {
    out.push_back(cur);
    cur = parent(cur);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace polycg
