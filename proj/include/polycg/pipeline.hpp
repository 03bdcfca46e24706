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

#ifndef POLYCG_PIPELINE_HPP
#define POLYCG_PIPELINE_HPP

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "polycg/frontend.hpp"
#include "polycg/interop.hpp"
#include "polycg/model.hpp"
#include "polycg/table.hpp"

namespace polycg {

/// Invalid configuration or inputs that cannot be analyzed at all.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exit statuses of an analysis run.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAnalysisError = 1;
inline constexpr int kExitConfigError = 2;

/// .c/.h -> C, .py -> Python, .js -> JavaScript.
std::map<std::string, Language> default_language_map();

struct PipelineConfig {
  std::vector<std::filesystem::path> roots;
  std::map<std::string, Language> languages = default_language_map();
  /// Empty: the shipped registry.
  std::filesystem::path registry;
  std::filesystem::path out;
  std::string entry;
  bool dot = true;
  bool csv = true;
  bool keep_intermediates = false;
  std::size_t jobs = 1;
};

/// A source file of the codebase. `unit_id` is its path relative to the
/// root it was found under (its file name when the root is the file).
struct UnitSource {
  std::string unit_id;
  Language language = Language::C;
  std::filesystem::path file;
};

/// Files under `roots` with a mapped extension, sorted by unit_id. Throws
/// ConfigError on a missing root, a duplicate unit_id or no units at all.
std::vector<UnitSource> scan_codebase(const std::vector<std::filesystem::path>& roots,
                                      const std::map<std::string, Language>& languages);

/// Throws ConfigError when the registry file is unreadable or invalid.
ApiRegistry load_registry_file(const std::filesystem::path& path);

enum class StageStatus { Pending, Running, Done, Failed, Skipped };

std::string_view to_string(StageStatus s);

/// One filter invocation. A stage runs once every stage in `deps` is Done;
/// if one of them did not complete it is Skipped.
struct StageRecord {
  std::string name;
  std::vector<std::filesystem::path> inputs;
  std::vector<std::filesystem::path> outputs;
  std::vector<std::size_t> deps;
  StageStatus status = StageStatus::Pending;
  std::function<void(StageRecord&)> run;
  /// Warnings and, on failure, the error.
  std::vector<std::string> messages;
  /// Set when the failure was a ParseError.
  bool parse_error = false;
};

/// Runs the DAG on up to `jobs` threads. Each stage checks that its inputs
/// exist before running. Throws std::invalid_argument on a cycle or a bad
/// dependency index.
void run_stages(std::vector<StageRecord>& stages, std::size_t jobs);

struct PipelineResult {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> artifacts;
  /// Warnings and errors, in stage order.
  std::vector<std::string> messages;
  std::vector<StageRecord> stages;
};

/// Runs the file-based filter pipeline: per unit facts, mono call graph,
/// reaching definitions and interop rewriting; then merge and emission.
PipelineResult run_pipeline(const PipelineConfig& config);

/// In-memory results of an analysis.
struct Analysis {
  std::vector<McgRow> mcg;
  std::string mcg_csv;
  std::string dot;
  std::vector<std::string> messages;
};

/// Library mode: the same computation without intermediate files. Output
/// text equals the pipeline's. Throws ConfigError or ParseError.
Analysis analyze(const PipelineConfig& config);

}  // namespace polycg

#endif  // POLYCG_PIPELINE_HPP
