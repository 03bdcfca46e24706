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

#include "polycg/frontend.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "parsers.hpp"

namespace polycg {

namespace {

std::string describe(const std::string& path, std::size_t line, std::size_t column, const std::string& token,
                     const std::string& what) {
  std::string out = path + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  if (!token.empty()) out += " (at '" + token + "')";
  return out;
}

// Forward CFG of one scope, built from the statement structure.
class FlowBuilder {
 public:
  explicit FlowBuilder(std::string scope) : scope_(std::move(scope)) {}

  void run(const std::vector<Statement>& body) { sequence(body, {}); }

  std::vector<FlowEdge> edges() const {
    std::vector<FlowEdge> out;
    out.reserve(edges_.size());
    for (const auto& [from, to] : edges_) out.push_back(FlowEdge{scope_, from, to});
    return out;
  }

 private:
  using Points = std::set<std::size_t>;

  struct LoopContext {
    std::size_t head;
    Points breaks;
  };

  Points sequence(const std::vector<Statement>& body, Points preds) {
    for (const Statement& s : body) preds = statement(s, preds);
    return preds;
  }

  Points statement(const Statement& s, const Points& preds) {
    const std::size_t i = s.index;
    for (std::size_t p : preds) edges_.emplace(p, i);
    switch (s.shape) {
      case Statement::Shape::Simple:
        return {i};
      case Statement::Shape::Return:
        return {};
      case Statement::Shape::Break:
        if (loops_.empty()) return {i};
        loops_.back().breaks.insert(i);
        return {};
      case Statement::Shape::Continue:
        if (loops_.empty()) return {i};
        edges_.emplace(i, loops_.back().head);
        return {};
      case Statement::Shape::Branch: {
        Points out = sequence(s.body, {i});
        Points other = s.else_body.empty() ? Points{i} : sequence(s.else_body, {i});
        out.insert(other.begin(), other.end());
        return out;
      }
      case Statement::Shape::Loop: {
        loops_.push_back(LoopContext{i, {}});
        Points tail = sequence(s.body, {i});
        for (std::size_t p : tail) edges_.emplace(p, i);
        Points out = std::move(loops_.back().breaks);
        loops_.pop_back();
        out.insert(i);
        return out;
      }
    }
    return {i};
  }

  std::string scope_;
  std::set<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<LoopContext> loops_;
};

std::vector<const LabeledBlock*> sorted_blocks(const SourceUnit& unit) {
  std::vector<const LabeledBlock*> out;
  out.reserve(unit.blocks.size());
  for (const LabeledBlock& b : unit.blocks) out.push_back(&b);
  std::sort(out.begin(), out.end(), [](const LabeledBlock* a, const LabeledBlock* b) { return a->label < b->label; });
  return out;
}

}  // namespace

std::string Diagnostic::to_string() const { return describe(path, line, column, {}, message); }

ParseError::ParseError(std::string path, std::size_t line, std::size_t column, std::string token,
                       const std::string& what)
    : std::runtime_error(describe(path, line, column, token, what)),
      path_(std::move(path)),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

SourceUnit parse_unit(std::string_view text, Language language, std::string unit_id, std::string path,
                      std::vector<Diagnostic>* warnings) {
  switch (language) {
    case Language::C:
      return detail::parse_c(text, std::move(unit_id), std::move(path), warnings);
    case Language::Python:
      return detail::parse_python(text, std::move(unit_id), std::move(path), warnings);
    case Language::JavaScript:
      return detail::parse_js(text, std::move(unit_id), std::move(path), warnings);
    case Language::Shell:
      break;
  }
  throw std::invalid_argument("no frontend for language " + std::string(to_string(language)));
}

std::vector<AssignmentRecord> extract_assignments(const SourceUnit& unit) {
  std::vector<AssignmentRecord> out;
  for (const LabeledBlock* b : sorted_blocks(unit)) {
    if (const auto* rec = std::get_if<AssignmentRecord>(&b->payload)) out.push_back(*rec);
  }
  return out;
}

std::vector<FlowEdge> build_forward_flow(const SourceUnit& unit) {
  std::vector<FlowEdge> out;
  for (const auto& [scope, body] : unit.structure) {
    FlowBuilder builder(scope);
    builder.run(body);
    std::vector<FlowEdge> edges = builder.edges();
    out.insert(out.end(), edges.begin(), edges.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FlowEdge> extract_reverse_flow(const SourceUnit& unit) {
  std::vector<FlowEdge> out = build_forward_flow(unit);
  for (FlowEdge& e : out) std::swap(e.from_index, e.to_index);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CallSite> extract_calls(const SourceUnit& unit) {
  std::vector<CallSite> out;
  for (const LabeledBlock* b : sorted_blocks(unit)) out.insert(out.end(), b->calls.begin(), b->calls.end());
  return out;
}

std::vector<UnitRow> extract_scopes(const SourceUnit& unit) {
  std::vector<UnitRow> out;
  out.push_back(UnitRow{unit.unit_id, unit.language, unit.path, std::string(kMainBody),
                        unit.statement_count(kMainBody)});
  for (const std::string& proc : unit.defined_procs) {
    out.push_back(UnitRow{unit.unit_id, unit.language, unit.path, proc, unit.statement_count(proc)});
  }
  return out;
}

UnitFacts extract_facts(const SourceUnit& unit) {
  UnitFacts facts;
  facts.scopes = extract_scopes(unit);
  for (CallSite& c : extract_calls(unit)) {
    CallRow row;
    row.unit_id = unit.unit_id;
    row.language = unit.language;
    row.label = std::move(c.label);
    row.callee = std::move(c.target);
    row.args = std::move(c.args);
    facts.calls.push_back(std::move(row));
  }
  for (AssignmentRecord& a : extract_assignments(unit)) facts.assigns.push_back(AssignRow{unit.unit_id, std::move(a)});
  for (FlowEdge& e : extract_reverse_flow(unit)) facts.rflow.push_back(FlowRow{unit.unit_id, std::move(e)});
  return facts;
}

}  // namespace polycg
