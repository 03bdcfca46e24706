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

#ifndef POLYCG_TESTS_FIXTURES_HPP
#define POLYCG_TESTS_FIXTURES_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "polycg/callgraph.hpp"
#include "polycg/dataflow.hpp"
#include "polycg/frontend.hpp"
#include "polycg/interop.hpp"
#include "polycg/model.hpp"
#include "polycg/pipeline.hpp"

namespace polycg::testing {

std::filesystem::path fixture_dir(const std::string& name);

// A scratch directory unique to the calling test, emptied on creation.
std::filesystem::path scratch_dir(const std::string& name);

// Facts of one in-memory source text, interop-rewritten with the shipped
// registry.
struct Analyzed {
  SourceUnit unit;
  UnitFacts facts;
  std::vector<CallRow> rewritten;
};

Analyzed analyze_text(const std::string& text, Language lang, const std::string& unit_id);

// Calls of the rewritten table whose callee or flag marks an interop site.
std::vector<CallRow> interop_rows(const std::vector<CallRow>& rows);

// Language of a file by extension, with the default mapping.
Language language_of(const std::filesystem::path& file);

// Rewritten call tables of in-memory units, as merge consumes them.
std::vector<UnitCalls> units_from_texts(const std::vector<std::pair<std::string, std::string>>& files);
// Same, for every source file directly in `dir`.
std::vector<UnitCalls> units_in(const std::filesystem::path& dir);

// Node counts by flag.
std::size_t count_flag(const CallGraph& g, NodeFlag flag);

}  // namespace polycg::testing

#endif  // POLYCG_TESTS_FIXTURES_HPP
