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

#ifndef POLYCG_FRONTEND_HPP
#define POLYCG_FRONTEND_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polycg/model.hpp"
#include "polycg/table.hpp"

namespace polycg {

/// Non-fatal frontend finding, e.g. a statement outside the supported subset.
struct Diagnostic {
  std::string path;
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;

  std::string to_string() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, std::size_t line, std::size_t column, std::string token, const std::string& what);

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& token() const { return token_; }

 private:
  std::string path_;
  std::size_t line_;
  std::size_t column_;
  std::string token_;
};

/// Parses one file of the C, Python or JavaScript subset.
///
/// Every statement gets a label (scope, index) numbered in pre-order per
/// scope; function definitions are not statements. In C the body of `main`
/// is the main-body scope. Out-of-subset statements become Other blocks and
/// are reported through `warnings`; structural errors throw ParseError.
SourceUnit parse_unit(std::string_view text, Language language, std::string unit_id, std::string path = {},
                      std::vector<Diagnostic>* warnings = nullptr);

/// Assignment records in label order.
std::vector<AssignmentRecord> extract_assignments(const SourceUnit& unit);

/// Forward control-flow edges (from = predecessor, to = successor), sorted.
std::vector<FlowEdge> build_forward_flow(const SourceUnit& unit);

/// Edge reversal of the forward CFG, sorted by (scope, from, to).
std::vector<FlowEdge> extract_reverse_flow(const SourceUnit& unit);

/// One CallSite per call, statements in label order, post-order inside a
/// statement.
std::vector<CallSite> extract_calls(const SourceUnit& unit);

/// One row per scope (main-body first, then defined procedures by name).
std::vector<UnitRow> extract_scopes(const SourceUnit& unit);

// Fact tables for one unit, as written by the frontend filter.
struct UnitFacts {
  std::vector<UnitRow> scopes;
  std::vector<CallRow> calls;
  std::vector<AssignRow> assigns;
  std::vector<FlowRow> rflow;
};

UnitFacts extract_facts(const SourceUnit& unit);

}  // namespace polycg

#endif  // POLYCG_FRONTEND_HPP
