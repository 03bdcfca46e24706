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

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "polycg/callgraph.hpp"
#include "polycg/dot.hpp"
#include "polycg/frontend.hpp"
#include "polycg/interop.hpp"
#include "polycg/pipeline.hpp"
#include "polycg/table.hpp"

namespace fs = std::filesystem;

namespace {

int run_analyze(const polycg::PipelineConfig& config) {
  polycg::PipelineResult r = polycg::run_pipeline(config);
  for (const std::string& m : r.messages) std::cerr << m << '\n';
  for (const fs::path& p : r.artifacts) std::cout << p.string() << '\n';
  return r.exit_code;
}

int run_facts(const fs::path& file, const std::string& unit_id, const fs::path& out_dir) {
  auto lang = polycg::default_language_map().find(file.extension().string());
  if (lang == polycg::default_language_map().end()) {
    std::cerr << "error: unknown language for " << file.string() << '\n';
    return polycg::kExitConfigError;
  }
  std::string id = unit_id.empty() ? file.filename().string() : unit_id;
  std::vector<polycg::Diagnostic> warnings;
  polycg::SourceUnit unit = polycg::parse_unit(polycg::read_file(file), lang->second, id, id, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w.to_string() << '\n';
  polycg::UnitFacts f = polycg::extract_facts(unit);
  polycg::save_rows<polycg::UnitRow>(out_dir / "units.csv", f.scopes);
  polycg::save_rows<polycg::CallRow>(out_dir / "calls.csv", f.calls);
  polycg::save_rows<polycg::AssignRow>(out_dir / "assigns.csv", f.assigns);
  polycg::save_rows<polycg::FlowRow>(out_dir / "rflow.csv", f.rflow);
  return polycg::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilingual call-graph construction for C, Python and JavaScript"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML/INI file");

  polycg::PipelineConfig config;
  std::vector<std::string> roots;
  std::string registry, out, entry;
  bool dot = false, csv = false;
  std::size_t jobs = 1;
  auto* analyze = app.add_subcommand("analyze", "Build the multilingual call graph of a codebase");
  analyze->add_option("roots", roots, "Codebase directories or files")->required();
  analyze->add_option("--registry", registry, "Interoperability API registry (CSV); defaults to the shipped one");
  analyze->add_option("--entry", entry, "Unit whose main body roots the graph")->required();
  analyze->add_option("--out", out, "Output directory")->required();
  analyze->add_flag("--dot", dot, "Emit graph.dot");
  analyze->add_flag("--csv", csv, "Emit mcg.csv");
  analyze->add_flag("--keep-intermediates", config.keep_intermediates, "Keep per-unit tables under <out>/work");
  analyze->add_option("--jobs,-j", jobs, "Concurrent stages")->check(CLI::PositiveNumber);

  std::string facts_file, facts_unit, facts_out = ".";
  auto* facts = app.add_subcommand("facts", "Write the fact tables of one source file");
  facts->add_option("file", facts_file, "Source file")->required()->check(CLI::ExistingFile);
  facts->add_option("--unit", facts_unit, "Unit id (default: file name)");
  facts->add_option("--out", facts_out, "Output directory");

  std::string dot_in;
  auto* dot_cmd = app.add_subcommand("dot", "Render mcg.csv as DOT on stdout");
  dot_cmd->add_option("mcg", dot_in, "mcg.csv")->required()->check(CLI::ExistingFile);

  auto* reg_cmd = app.add_subcommand("registry", "Print the shipped interoperability registry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : polycg::kExitConfigError;
  }

  try {
    if (*analyze) {
      for (const std::string& r : roots) config.roots.emplace_back(r);
      config.registry = registry;
      config.out = out;
      config.entry = entry;
      config.dot = dot || !csv;
      config.csv = csv || !dot;
      config.jobs = jobs;
      return run_analyze(config);
    }
    if (*facts) {
      fs::create_directories(facts_out);
      return run_facts(facts_file, facts_unit, facts_out);
    }
    if (*dot_cmd) {
      auto rows = polycg::load_rows<polycg::McgRow>(dot_in);
      std::cout << polycg::emit_dot(polycg::from_rows(rows, polycg::GraphStage::Multilingual));
      return polycg::kExitOk;
    }
    if (*reg_cmd) {
      std::cout << polycg::default_registry_text();
      return polycg::kExitOk;
    }
  } catch (const polycg::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return polycg::kExitAnalysisError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return polycg::kExitAnalysisError;
  }
  return polycg::kExitOk;
}
