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

#include "polycg/dataflow.hpp"

#include <algorithm>
#include <deque>
#include <utility>

#include "polycg/frontend.hpp"

namespace polycg {

StaticValue StaticValue::known(std::set<std::string> values) {
  StaticValue v;
  if (values.empty() || values.size() > kCap) return v;
  v.known_ = true;
  v.values_ = std::move(values);
  return v;
}

std::string to_string(const StaticValue& v) {
  if (!v.is_known()) return "Unknown";
  std::string out = "Known{";
  bool first = true;
  for (const std::string& s : v.values()) {
    if (!first) out += ", ";
    first = false;
    out += '"' + s + '"';
  }
  return out + "}";
}

DataflowContext::DataflowContext(std::vector<AssignmentRecord> assigns, std::vector<FlowEdge> rflow,
                                 std::map<std::string, std::size_t> scope_sizes) {
  for (auto& [name, size] : scope_sizes) {
    Scope& s = scopes_[name];
    s.size = size;
    s.preds.resize(size);
  }
  for (FlowEdge& e : rflow) {
    auto it = scopes_.find(e.scope);
    if (it == scopes_.end()) throw DataflowError(DataflowError::Kind::UnknownScope, "flow edge in unknown scope '" + e.scope + "'");
    Scope& s = it->second;
    if (e.from_index >= s.size || e.to_index >= s.size) {
      throw DataflowError(DataflowError::Kind::UnknownLabel, "flow edge out of range in scope '" + e.scope + "'");
    }
    // Reverse edge: from = successor, to = predecessor.
    s.preds[e.from_index].push_back(e.to_index);
  }
  for (AssignmentRecord& a : assigns) {
    auto it = scopes_.find(a.label.scope);
    if (it == scopes_.end()) {
      throw DataflowError(DataflowError::Kind::UnknownScope, "assignment in unknown scope '" + a.label.scope + "'");
    }
    Scope& s = it->second;
    if (a.label.index >= s.size) {
      throw DataflowError(DataflowError::Kind::UnknownLabel, "assignment out of range: " + to_string(a.label));
    }
    s.assigned_vars.insert(a.variable);
    std::size_t index = a.label.index;
    s.assigns.insert_or_assign(index, std::move(a));
  }
  for (auto& [name, s] : scopes_) {
    for (auto& p : s.preds) {
      std::sort(p.begin(), p.end());
      p.erase(std::unique(p.begin(), p.end()), p.end());
    }
    solve(s);
  }
}

DataflowContext DataflowContext::from_unit(const SourceUnit& unit) {
  std::map<std::string, std::size_t> sizes;
  sizes[std::string(kMainBody)] = unit.statement_count(kMainBody);
  for (const std::string& p : unit.defined_procs) sizes[p] = unit.statement_count(p);
  std::vector<AssignmentRecord> assigns;
  for (const LabeledBlock& b : unit.blocks) {
    if (const auto* a = std::get_if<AssignmentRecord>(&b.payload)) assigns.push_back(*a);
  }
  return DataflowContext(std::move(assigns), extract_reverse_flow(unit), std::move(sizes));
}

DataflowContext DataflowContext::from_rows(std::span<const UnitRow> scopes, std::span<const AssignRow> assigns,
                                           std::span<const FlowRow> rflow) {
  std::map<std::string, std::size_t> sizes;
  for (const UnitRow& r : scopes) sizes[r.scope] = r.statements;
  std::vector<AssignmentRecord> a;
  a.reserve(assigns.size());
  for (const AssignRow& r : assigns) a.push_back(r.record);
  std::vector<FlowEdge> f;
  f.reserve(rflow.size());
  for (const FlowRow& r : rflow) f.push_back(r.edge);
  return DataflowContext(std::move(a), std::move(f), std::move(sizes));
}

void DataflowContext::seed(std::span<const RdefRow> rows) {
  for (const RdefRow& r : rows) {
    seeds_[SeedKey{r.scope, r.use_index, r.variable}].insert(ReachingDef{r.variable, r.def_index});
  }
}

std::size_t DataflowContext::statement_count(std::string_view name) const { return scope(name).size; }

std::vector<std::string> DataflowContext::scopes() const {
  std::vector<std::string> out;
  for (const auto& [name, s] : scopes_) out.push_back(name);
  return out;
}

const DataflowContext::Scope& DataflowContext::scope(std::string_view name) const {
  auto it = scopes_.find(name);
  if (it == scopes_.end()) {
    throw DataflowError(DataflowError::Kind::UnknownScope, "unknown scope '" + std::string(name) + "'");
  }
  return it->second;
}

void DataflowContext::solve(Scope& s) {
  const std::size_t n = s.size;
  s.in.assign(n, {});
  s.reachable.assign(n, false);
  if (n == 0) return;

  std::vector<std::vector<std::size_t>> succs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p : s.preds[i]) succs[p].push_back(i);
  }
  std::deque<std::size_t> work{0};
  s.reachable[0] = true;
  while (!work.empty()) {
    std::size_t i = work.front();
    work.pop_front();
    for (std::size_t j : succs[i]) {
      if (!s.reachable[j]) {
        s.reachable[j] = true;
        work.push_back(j);
      }
    }
  }

  ReachingDefs entry;
  for (const std::string& v : s.assigned_vars) entry.insert(ReachingDef{v, std::nullopt});

  std::vector<ReachingDefs> out(n);
  auto transfer = [&s](std::size_t i, const ReachingDefs& in) {
    auto it = s.assigns.find(i);
    if (it == s.assigns.end()) return in;
    const std::string& var = it->second.variable;
    ReachingDefs o;
    for (const ReachingDef& d : in) {
      if (d.variable != var) o.insert(d);
    }
    o.insert(ReachingDef{var, i});
    return o;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      ReachingDefs in = i == 0 ? entry : ReachingDefs{};
      for (std::size_t p : s.preds[i]) in.insert(out[p].begin(), out[p].end());
      ReachingDefs o = transfer(i, in);
      if (o != out[i] || in != s.in[i]) {
        changed = true;
        out[i] = std::move(o);
        s.in[i] = std::move(in);
      }
    }
    if (changed) ++s.iterations;
  }
}

ReachingDefs DataflowContext::reaching(std::string_view name, const std::set<std::string>& vars,
                                       std::size_t at) const {
  const Scope& s = scope(name);
  if (at >= s.size) {
    throw DataflowError(DataflowError::Kind::UnknownLabel,
                        "no statement " + std::to_string(at) + " in scope '" + std::string(name) + "'");
  }
  ReachingDefs out;
  for (const std::string& x : vars) {
    auto seeded = seeds_.find(SeedKey{std::string(name), at, x});
    if (seeded != seeds_.end()) {
      out.insert(seeded->second.begin(), seeded->second.end());
      continue;
    }
    for (const ReachingDef& d : s.in[at]) {
      if (d.variable == x) out.insert(d);
    }
    if (s.reachable[at] && s.assigned_vars.count(x) == 0) out.insert(ReachingDef{x, std::nullopt});
  }
  return out;
}

const AssignmentRecord* DataflowContext::assignment(std::string_view name, std::size_t index) const {
  auto it = scopes_.find(name);
  if (it == scopes_.end()) return nullptr;
  auto a = it->second.assigns.find(index);
  return a == it->second.assigns.end() ? nullptr : &a->second;
}

std::size_t DataflowContext::iterations(std::string_view name) const { return scope(name).iterations; }

StaticValue DataflowContext::eval(const Expr& e, std::string_view name, std::size_t at) const {
  std::set<std::size_t> active;
  return eval_in(e, std::string(name), at, active);
}

StaticValue DataflowContext::eval(const ReachingDef& def, std::string_view name) const {
  std::set<std::size_t> active;
  return eval_def(def, std::string(name), active);
}

StaticValue DataflowContext::eval_in(const Expr& e, const std::string& name, std::size_t at,
                                     std::set<std::size_t>& active) const {
  switch (e.kind()) {
    case Expr::Kind::StringLiteral:
      return StaticValue::known({e.text()});
    case Expr::Kind::VarRef: {
      ReachingDefs defs = reaching(name, {e.text()}, at);
      std::set<std::string> values;
      for (const ReachingDef& d : defs) {
        StaticValue v = eval_def(d, name, active);
        if (!v.is_known()) return StaticValue::unknown();
        values.insert(v.values().begin(), v.values().end());
        if (values.size() > StaticValue::kCap) return StaticValue::unknown();
      }
      return StaticValue::known(std::move(values));
    }
    case Expr::Kind::Concat: {
      StaticValue l = eval_in(e.lhs(), name, at, active);
      if (!l.is_known()) return l;
      StaticValue r = eval_in(e.rhs(), name, at, active);
      if (!r.is_known()) return r;
      if (l.values().size() * r.values().size() > StaticValue::kCap) return StaticValue::unknown();
      std::set<std::string> values;
      for (const std::string& a : l.values()) {
        for (const std::string& b : r.values()) values.insert(a + b);
      }
      return StaticValue::known(std::move(values));
    }
    case Expr::Kind::Call:
    case Expr::Kind::Dynamic:
      break;
  }
  return StaticValue::unknown();
}

StaticValue DataflowContext::eval_def(const ReachingDef& def, const std::string& name,
                                      std::set<std::size_t>& active) const {
  if (def.is_entry()) return StaticValue::unknown();
  const std::size_t index = *def.index;
  const AssignmentRecord* a = assignment(name, index);
  if (a == nullptr || a->variable != def.variable || active.count(index) != 0) return StaticValue::unknown();
  active.insert(index);
  StaticValue v = eval_in(a->rhs, name, index, active);
  active.erase(index);
  return v;
}

namespace {

DataflowContext inferred_context(std::span<const AssignmentRecord> assigns, std::span<const FlowEdge> rflow) {
  std::map<std::string, std::size_t> sizes;
  auto grow = [&sizes](const std::string& scope, std::size_t index) {
    std::size_t& n = sizes[scope];
    n = std::max(n, index + 1);
  };
  for (const AssignmentRecord& a : assigns) grow(a.label.scope, a.label.index);
  for (const FlowEdge& e : rflow) {
    grow(e.scope, e.from_index);
    grow(e.scope, e.to_index);
  }
  return DataflowContext({assigns.begin(), assigns.end()}, {rflow.begin(), rflow.end()}, std::move(sizes));
}

}  // namespace

ReachingDefs reaching_definitions(std::string_view proc, const std::set<std::string>& vars, std::size_t at,
                                  std::span<const AssignmentRecord> assigns, std::span<const FlowEdge> rflow) {
  return inferred_context(assigns, rflow).reaching(proc, vars, at);
}

StaticValue static_eval(const Expr& e, std::string_view proc, std::size_t at,
                        std::span<const AssignmentRecord> assigns, std::span<const FlowEdge> rflow) {
  return inferred_context(assigns, rflow).eval(e, proc, at);
}

StaticValue static_eval(const ReachingDef& def, std::string_view proc, std::span<const AssignmentRecord> assigns,
                        std::span<const FlowEdge> rflow) {
  return inferred_context(assigns, rflow).eval(def, proc);
}

std::map<Label, std::vector<std::string>> collect_uses(std::span<const AssignmentRecord> assigns,
                                                       std::span<const CallRow> calls) {
  std::map<Label, std::set<std::string>> uses;
  for (const AssignmentRecord& a : assigns) {
    for (std::string& v : a.rhs.referenced_vars()) uses[a.label].insert(std::move(v));
  }
  for (const CallRow& c : calls) {
    for (const Expr& arg : c.args) {
      for (std::string& v : arg.referenced_vars()) uses[c.label].insert(std::move(v));
    }
  }
  std::map<Label, std::vector<std::string>> out;
  for (auto& [label, vars] : uses) {
    if (!vars.empty()) out[label] = {vars.begin(), vars.end()};
  }
  return out;
}

std::vector<RdefRow> compute_rdefs(std::string_view unit_id, const DataflowContext& ctx,
                                   std::span<const AssignmentRecord> assigns, std::span<const CallRow> calls) {
  std::vector<RdefRow> rows;
  for (const auto& [label, vars] : collect_uses(assigns, calls)) {
    if (!ctx.has_scope(label.scope)) continue;
    std::set<std::string> query(vars.begin(), vars.end());
    for (const ReachingDef& d : ctx.reaching(label.scope, query, label.index)) {
      rows.push_back(RdefRow{std::string(unit_id), label.scope, label.index, d.variable, d.index});
    }
  }
  return rows;
}

}  // namespace polycg
