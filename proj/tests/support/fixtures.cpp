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

#include "fixtures.hpp"

#include <unistd.h>

#include <algorithm>
#include <stdexcept>

namespace polycg::testing {

std::filesystem::path fixture_dir(const std::string& name) { return std::filesystem::path(POLYCG_FIXTURES_DIR) / name; }

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("polycg-test-" + std::to_string(::getpid())) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

Analyzed analyze_text(const std::string& text, Language lang, const std::string& unit_id) {
  Analyzed a;
  a.unit = parse_unit(text, lang, unit_id, unit_id);
  a.facts = extract_facts(a.unit);
  DataflowContext flow = DataflowContext::from_unit(a.unit);
  a.rewritten = rewrite_calls(a.facts.calls, default_registry(), flow);
  return a;
}

std::vector<CallRow> interop_rows(const std::vector<CallRow>& rows) {
  std::vector<CallRow> out;
  for (const CallRow& r : rows) {
    if (r.target_language || r.flag != NodeFlag::None) out.push_back(r);
  }
  return out;
}

Language language_of(const std::filesystem::path& file) {
  auto map = default_language_map();
  auto it = map.find(file.extension().string());
  if (it == map.end()) throw std::invalid_argument("no language for " + file.string());
  return it->second;
}

std::vector<UnitCalls> units_from_texts(const std::vector<std::pair<std::string, std::string>>& files) {
  std::vector<UnitCalls> out;
  for (const auto& [id, text] : files) {
    Analyzed a = analyze_text(text, language_of(id), id);
    out.push_back(UnitCalls::from_rows(a.facts.scopes, a.rewritten));
  }
  return out;
}

std::vector<UnitCalls> units_in(const std::filesystem::path& dir) {
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file()) files.emplace_back(e.path().filename().string(), read_file(e.path()));
  }
  std::sort(files.begin(), files.end());
  return units_from_texts(files);
}

std::size_t count_flag(const CallGraph& g, NodeFlag flag) {
  std::size_t n = 0;
  for (const auto& id : g.node_ids()) n += g.node(id).flag == flag;
  return n;
}

}  // namespace polycg::testing
