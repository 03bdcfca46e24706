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

#ifndef POLYCG_DATAFLOW_HPP
#define POLYCG_DATAFLOW_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polycg/model.hpp"
#include "polycg/table.hpp"

namespace polycg {

/// One reaching definition. An empty `index` is the entry marker: the
/// variable may still be unassigned at the query point.
struct ReachingDef {
  std::string variable;
  std::optional<std::size_t> index;

  bool is_entry() const { return !index.has_value(); }

  friend auto operator<=>(const ReachingDef&, const ReachingDef&) = default;
  friend bool operator==(const ReachingDef&, const ReachingDef&) = default;
};

using ReachingDefs = std::set<ReachingDef>;

class DataflowError : public std::runtime_error {
 public:
  enum class Kind { UnknownScope, UnknownLabel };

  DataflowError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Known(values) or Unknown. Known sets are never empty.
class StaticValue {
 public:
  static constexpr std::size_t kCap = 16;

  static StaticValue unknown() { return StaticValue(); }
  /// Falls back to Unknown when `values` is empty or exceeds kCap.
  static StaticValue known(std::set<std::string> values);

  bool is_known() const { return known_; }
  const std::set<std::string>& values() const { return values_; }

  friend bool operator==(const StaticValue&, const StaticValue&) = default;

 private:
  StaticValue() = default;

  bool known_ = false;
  std::set<std::string> values_;
};

std::string to_string(const StaticValue& v);

/// Per-unit dataflow facts: assignments, reverse control flow and the
/// statement count of every scope. Solves reaching definitions for every
/// scope on construction; queries are then read-only and thread-safe.
class DataflowContext {
 public:
  DataflowContext() = default;
  DataflowContext(std::vector<AssignmentRecord> assigns, std::vector<FlowEdge> rflow,
                  std::map<std::string, std::size_t> scope_sizes);

  static DataflowContext from_unit(const SourceUnit& unit);
  static DataflowContext from_rows(std::span<const UnitRow> scopes, std::span<const AssignRow> assigns,
                                   std::span<const FlowRow> rflow);

  /// Precomputed answers (e.g. read back from rdefs.csv) take precedence
  /// over the solver for the points they cover.
  void seed(std::span<const RdefRow> rows);

  bool has_scope(std::string_view scope) const { return scopes_.count(std::string(scope)) != 0; }
  std::size_t statement_count(std::string_view scope) const;
  std::vector<std::string> scopes() const;

  /// Throws DataflowError on an unknown scope or out-of-range index.
  ReachingDefs reaching(std::string_view scope, const std::set<std::string>& vars, std::size_t at) const;

  const AssignmentRecord* assignment(std::string_view scope, std::size_t index) const;

  /// Sweeps of the round-robin solver that changed some set.
  std::size_t iterations(std::string_view scope) const;

  /// Eval of `e` as it appears at statement `at` of `scope`.
  StaticValue eval(const Expr& e, std::string_view scope, std::size_t at) const;
  /// Eval of the value `def` gives its variable.
  StaticValue eval(const ReachingDef& def, std::string_view scope) const;

 private:
  struct Scope {
    std::size_t size = 0;
    std::vector<std::vector<std::size_t>> preds;
    std::map<std::size_t, AssignmentRecord> assigns;
    // Solution: definitions reaching the entry of each statement.
    std::vector<ReachingDefs> in;
    std::vector<bool> reachable;
    std::set<std::string> assigned_vars;
    std::size_t iterations = 0;
  };

  struct SeedKey {
    std::string scope;
    std::size_t at;
    std::string variable;
    friend auto operator<=>(const SeedKey&, const SeedKey&) = default;
  };

  const Scope& scope(std::string_view name) const;
  void solve(Scope& s);
  StaticValue eval_in(const Expr& e, const std::string& scope, std::size_t at,
                      std::set<std::size_t>& active) const;
  StaticValue eval_def(const ReachingDef& def, const std::string& scope, std::set<std::size_t>& active) const;

  std::map<std::string, Scope, std::less<>> scopes_;
  std::map<SeedKey, ReachingDefs> seeds_;
};

/// Reaching definitions of `vars` at statement `at` of `proc`. Scopes and
/// their sizes are inferred from the tables, so a scope must appear in
/// `assigns` or `rflow`.
ReachingDefs reaching_definitions(std::string_view proc, const std::set<std::string>& vars, std::size_t at,
                                  std::span<const AssignmentRecord> assigns, std::span<const FlowEdge> rflow);

/// Eval of an expression, or of a definition point, in `proc`.
StaticValue static_eval(const Expr& e, std::string_view proc, std::size_t at,
                        std::span<const AssignmentRecord> assigns, std::span<const FlowEdge> rflow);
StaticValue static_eval(const ReachingDef& def, std::string_view proc, std::span<const AssignmentRecord> assigns,
                        std::span<const FlowEdge> rflow);

/// Variables read at each labeled statement: assignment right-hand sides
/// and call arguments.
std::map<Label, std::vector<std::string>> collect_uses(std::span<const AssignmentRecord> assigns,
                                                       std::span<const CallRow> calls);

/// The rdefs table for a unit.
std::vector<RdefRow> compute_rdefs(std::string_view unit_id, const DataflowContext& ctx,
                                   std::span<const AssignmentRecord> assigns, std::span<const CallRow> calls);

}  // namespace polycg

#endif  // POLYCG_DATAFLOW_HPP
