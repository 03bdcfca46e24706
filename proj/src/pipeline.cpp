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

#include "polycg/pipeline.hpp"

#include <algorithm>
#include <condition_variable>
#include <mutex>
#include <random>
#include <thread>

#include "polycg/callgraph.hpp"
#include "polycg/dataflow.hpp"
#include "polycg/dot.hpp"
#include "polycg/merge.hpp"

namespace polycg {

namespace fs = std::filesystem;

std::map<std::string, Language> default_language_map() {
  return {{".c", Language::C}, {".h", Language::C}, {".py", Language::Python}, {".js", Language::JavaScript}};
}

std::vector<UnitSource> scan_codebase(const std::vector<fs::path>& roots, const std::map<std::string, Language>& languages) {
  std::map<std::string, UnitSource> found;
  auto add = [&](const fs::path& file, const fs::path& base) {
    auto lang = languages.find(file.extension().string());
    if (lang == languages.end()) return;
    std::string id = file.lexically_relative(base).generic_string();
    if (found.count(id) != 0) throw ConfigError("duplicate unit '" + id + "' under more than one root");
    found[id] = UnitSource{id, lang->second, file};
  };
  for (const fs::path& root : roots) {
    std::error_code ec;
    if (fs::is_regular_file(root, ec)) {
      add(root, root.parent_path());
    } else if (fs::is_directory(root, ec)) {
      for (const auto& e : fs::recursive_directory_iterator(root, ec)) {
        if (e.is_regular_file()) add(e.path(), root);
      }
      if (ec) throw ConfigError("cannot scan '" + root.string() + "': " + ec.message());
    } else {
      throw ConfigError("root '" + root.string() + "' does not exist");
    }
  }
  if (found.empty()) throw ConfigError("no units found");
  std::vector<UnitSource> out;
  for (auto& [id, u] : found) out.push_back(std::move(u));
  return out;
}

ApiRegistry load_registry_file(const fs::path& path) {
  if (path.empty()) return default_registry();
  try {
    return load_registry(read_file(path));
  } catch (const RegistryError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw ConfigError("cannot read registry '" + path.string() + "': " + e.what());
  }
}

std::string_view to_string(StageStatus s) {
  switch (s) {
    case StageStatus::Pending:
      return "Pending";
    case StageStatus::Running:
      return "Running";
    case StageStatus::Done:
      return "Done";
    case StageStatus::Failed:
      return "Failed";
    case StageStatus::Skipped:
      return "Skipped";
  }
  return "Pending";
}

namespace {

void check_dag(const std::vector<StageRecord>& stages) {
  enum class Mark { None, Active, Done };
  std::vector<Mark> mark(stages.size(), Mark::None);
  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    if (mark[i] == Mark::Done) return;
    if (mark[i] == Mark::Active) throw std::invalid_argument("stage graph has a cycle through '" + stages[i].name + "'");
    mark[i] = Mark::Active;
    for (std::size_t d : stages[i].deps) {
      if (d >= stages.size()) throw std::invalid_argument("stage '" + stages[i].name + "' has a bad dependency");
      visit(d);
    }
    mark[i] = Mark::Done;
  };
  for (std::size_t i = 0; i < stages.size(); ++i) visit(i);
}

void execute(StageRecord& s) {
  for (const fs::path& in : s.inputs) {
    if (!fs::exists(in)) throw std::logic_error("stage '" + s.name + "' is missing input " + in.string());
  }
  for (const fs::path& out : s.outputs) fs::create_directories(out.parent_path());
  s.run(s);
}

}  // namespace

void run_stages(std::vector<StageRecord>& stages, std::size_t jobs) {
  check_dag(stages);
  std::mutex m;
  std::condition_variable cv;
  std::size_t running = 0;

  // Next runnable stage; marks stages whose dependencies failed as skipped.
  auto pick = [&]() -> std::optional<std::size_t> {
    bool changed = true;
    while (changed) {
      changed = false;
      for (StageRecord& s : stages) {
        if (s.status != StageStatus::Pending) continue;
        bool blocked = std::any_of(s.deps.begin(), s.deps.end(), [&](std::size_t d) {
          return stages[d].status == StageStatus::Failed || stages[d].status == StageStatus::Skipped;
        });
        if (blocked) {
          s.status = StageStatus::Skipped;
          changed = true;
        }
      }
    }
    for (std::size_t i = 0; i < stages.size(); ++i) {
      if (stages[i].status != StageStatus::Pending) continue;
      bool ready = std::all_of(stages[i].deps.begin(), stages[i].deps.end(),
                               [&](std::size_t d) { return stages[d].status == StageStatus::Done; });
      if (ready) return i;
    }
    return std::nullopt;
  };

  auto worker = [&] {
    std::unique_lock lock(m);
    for (;;) {
      std::optional<std::size_t> next;
      cv.wait(lock, [&] {
        next = pick();
        return next.has_value() || running == 0;
      });
      if (!next) {
        cv.notify_all();
        return;
      }
      StageRecord& s = stages[*next];
      s.status = StageStatus::Running;
      ++running;
      lock.unlock();
      StageStatus result = StageStatus::Done;
      try {
        execute(s);
      } catch (const ParseError& e) {
        s.messages.push_back(std::string("error: ") + e.what());
        s.parse_error = true;
        result = StageStatus::Failed;
      } catch (const std::exception& e) {
        s.messages.push_back("error: " + s.name + ": " + e.what());
        result = StageStatus::Failed;
      }
      lock.lock();
      s.status = result;
      --running;
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  const std::size_t n = std::max<std::size_t>(1, jobs);
  for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
}

namespace {

std::vector<std::string> warning_lines(const std::vector<Diagnostic>& diags) {
  std::vector<std::string> out;
  for (const Diagnostic& d : diags) out.push_back("warning: " + d.to_string());
  return out;
}

UnitFacts parse_source(const UnitSource& src, std::vector<std::string>& messages) {
  std::vector<Diagnostic> warnings;
  SourceUnit unit = parse_unit(read_file(src.file), src.language, src.unit_id, src.unit_id, &warnings);
  auto lines = warning_lines(warnings);
  messages.insert(messages.end(), lines.begin(), lines.end());
  return extract_facts(unit);
}

std::vector<AssignmentRecord> records(std::span<const AssignRow> rows) {
  std::vector<AssignmentRecord> out;
  for (const AssignRow& r : rows) out.push_back(r.record);
  return out;
}

std::vector<McgRow> mono_rows(std::span<const UnitRow> scopes, std::span<const CallRow> calls) {
  CallGraph g = build_call_tree(UnitCalls::from_rows(scopes, calls));
  annotate_cycles(g);
  return to_rows(g);
}

std::vector<RdefRow> rdefs_rows(std::span<const UnitRow> scopes, std::span<const CallRow> calls,
                                std::span<const AssignRow> assigns, std::span<const FlowRow> rflow) {
  DataflowContext ctx = DataflowContext::from_rows(scopes, assigns, rflow);
  std::string unit_id = scopes.empty() ? std::string() : scopes.front().unit_id;
  return compute_rdefs(unit_id, ctx, records(assigns), calls);
}

std::vector<CallRow> rewritten_rows(std::span<const UnitRow> scopes, std::span<const CallRow> calls,
                                    std::span<const AssignRow> assigns, std::span<const FlowRow> rflow,
                                    std::span<const RdefRow> rdefs, const ApiRegistry& registry) {
  DataflowContext ctx = DataflowContext::from_rows(scopes, assigns, rflow);
  ctx.seed(rdefs);
  return rewrite_calls(calls, registry, ctx);
}

struct UnitTables {
  std::vector<UnitRow> scopes;
  std::vector<CallRow> calls;
};

std::vector<McgRow> merged_rows(const std::vector<UnitTables>& units, const std::string& entry,
                                std::vector<std::string>& messages) {
  std::vector<UnitCalls> all;
  for (const UnitTables& u : units) all.push_back(UnitCalls::from_rows(u.scopes, u.calls));
  std::vector<Diagnostic> diags;
  CallGraph g = build_multilingual(all, entry, &diags);
  auto lines = warning_lines(diags);
  messages.insert(messages.end(), lines.begin(), lines.end());
  return to_rows(g);
}

std::string dot_of(std::span<const McgRow> rows) { return emit_dot(from_rows(rows, GraphStage::Multilingual)); }

void check_entry(const std::vector<UnitSource>& units, const std::string& entry) {
  if (entry.empty()) throw ConfigError("no entry unit given");
  bool known = std::any_of(units.begin(), units.end(), [&](const UnitSource& u) { return u.unit_id == entry; });
  if (!known) throw ConfigError("entry unit '" + entry + "' not found in the codebase");
}

std::size_t add_stage(std::vector<StageRecord>& stages, std::string name, std::vector<fs::path> inputs,
                      std::vector<fs::path> outputs, std::vector<std::size_t> deps,
                      std::function<void(StageRecord&)> run) {
  StageRecord s;
  s.name = std::move(name);
  s.inputs = std::move(inputs);
  s.outputs = std::move(outputs);
  s.deps = std::move(deps);
  s.run = std::move(run);
  stages.push_back(std::move(s));
  return stages.size() - 1;
}

fs::path fresh_temp_dir() {
  std::random_device rd;
  for (int attempt = 0; attempt < 16; ++attempt) {
    fs::path p = fs::temp_directory_path() / ("polycg-" + std::to_string(rd()));
    if (fs::create_directory(p)) return p;
  }
  throw ConfigError("cannot create a temporary directory");
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
  PipelineResult result;
  std::vector<UnitSource> units;
  ApiRegistry registry;
  fs::path work;
  try {
    units = scan_codebase(config.roots, config.languages);
    check_entry(units, config.entry);
    registry = load_registry_file(config.registry);
    if (config.out.empty()) throw ConfigError("no output directory given");
    std::error_code ec;
    fs::create_directories(config.out, ec);
    if (ec || !fs::is_directory(config.out)) throw ConfigError("cannot create output directory '" + config.out.string() + "'");
    work = config.keep_intermediates ? config.out / "work" : fresh_temp_dir();
    fs::create_directories(work);
  } catch (const ConfigError& e) {
    result.exit_code = kExitConfigError;
    result.messages.push_back(std::string("error: ") + e.what());
    return result;
  }

  const bool emit_csv = config.csv || !config.dot;
  const bool emit_dot_file = config.dot || !config.csv;
  std::vector<StageRecord>& stages = result.stages;
  std::vector<std::size_t> interop_stages;
  std::vector<fs::path> merge_inputs;

  for (const UnitSource& src : units) {
    const fs::path dir = work / src.unit_id;
    const fs::path units_csv = dir / "units.csv", calls_csv = dir / "calls.csv", assigns_csv = dir / "assigns.csv",
                   rflow_csv = dir / "rflow.csv", mono_csv = dir / "mono.csv", rdefs_csv = dir / "rdefs.csv",
                   rewritten_csv = dir / "calls.rewritten.csv";

    const std::size_t facts = stages.size();
    add_stage(stages, "facts:" + src.unit_id, {src.file}, {units_csv, calls_csv, assigns_csv, rflow_csv},
                                 {}, [=](StageRecord& s) {
                                   UnitFacts f = parse_source(src, s.messages);
                                   save_rows<UnitRow>(units_csv, f.scopes);
                                   save_rows<CallRow>(calls_csv, f.calls);
                                   save_rows<AssignRow>(assigns_csv, f.assigns);
                                   save_rows<FlowRow>(rflow_csv, f.rflow);
                                 });
    add_stage(stages, "monocg:" + src.unit_id, {units_csv, calls_csv}, {mono_csv}, {facts},
                                 [=](StageRecord&) {
                                   save_rows<McgRow>(mono_csv, mono_rows(load_rows<UnitRow>(units_csv),
                                                                         load_rows<CallRow>(calls_csv)));
                                 });
    const std::size_t rdefs = stages.size();
    add_stage(stages, "rdefs:" + src.unit_id, {units_csv, calls_csv, assigns_csv, rflow_csv}, {rdefs_csv},
                                 {facts}, [=](StageRecord&) {
                                   save_rows<RdefRow>(rdefs_csv, rdefs_rows(load_rows<UnitRow>(units_csv),
                                                                            load_rows<CallRow>(calls_csv),
                                                                            load_rows<AssignRow>(assigns_csv),
                                                                            load_rows<FlowRow>(rflow_csv)));
                                 });
    interop_stages.push_back(stages.size());
    add_stage(stages, "interop:" + src.unit_id,
                                 {units_csv, calls_csv, assigns_csv, rflow_csv, rdefs_csv},
                                 {rewritten_csv},
                                 {facts, rdefs},
                                 [=, &registry](StageRecord&) {
                                   save_rows<CallRow>(
                                       rewritten_csv,
                                       rewritten_rows(load_rows<UnitRow>(units_csv), load_rows<CallRow>(calls_csv),
                                                      load_rows<AssignRow>(assigns_csv),
                                                      load_rows<FlowRow>(rflow_csv), load_rows<RdefRow>(rdefs_csv),
                                                      registry));
                                 });
    merge_inputs.push_back(units_csv);
    merge_inputs.push_back(rewritten_csv);
  }

  const fs::path mcg_work = work / "mcg.csv";
  const std::size_t merge = stages.size();
  const std::string entry = config.entry;
  add_stage(stages, "merge", merge_inputs, {mcg_work}, interop_stages, [=](StageRecord& s) {
                                 std::vector<UnitTables> tables;
                                 for (std::size_t i = 0; i < merge_inputs.size(); i += 2) {
                                   tables.push_back(UnitTables{load_rows<UnitRow>(merge_inputs[i]),
                                                               load_rows<CallRow>(merge_inputs[i + 1])});
                                 }
                                 save_rows<McgRow>(mcg_work, merged_rows(tables, entry, s.messages));
                               });
  std::vector<fs::path> artifacts;
  if (emit_csv) artifacts.push_back(config.out / "mcg.csv");
  if (emit_dot_file) artifacts.push_back(config.out / "graph.dot");
  add_stage(stages, "emit", {mcg_work}, artifacts, {merge}, [=](StageRecord&) {
                                 std::string csv = read_file(mcg_work);
                                 if (emit_csv) write_file(config.out / "mcg.csv", csv);
                                 if (emit_dot_file) {
                                   write_file(config.out / "graph.dot", dot_of(read_rows<McgRow>(csv)));
                                 }
                               });

  run_stages(stages, config.jobs);

  bool failed = false;
  for (const StageRecord& s : stages) {
    result.messages.insert(result.messages.end(), s.messages.begin(), s.messages.end());
    if (s.status != StageStatus::Done) failed = true;
  }
  if (!config.keep_intermediates) {
    std::error_code ec;
    fs::remove_all(work, ec);
  }
  if (failed) {
    result.exit_code = kExitAnalysisError;
  } else {
    result.artifacts = artifacts;
  }
  return result;
}

Analysis analyze(const PipelineConfig& config) {
  std::vector<UnitSource> units = scan_codebase(config.roots, config.languages);
  check_entry(units, config.entry);
  ApiRegistry registry = load_registry_file(config.registry);
  Analysis a;
  std::vector<UnitTables> tables;
  for (const UnitSource& src : units) {
    UnitFacts f = parse_source(src, a.messages);
    auto rdefs = rdefs_rows(f.scopes, f.calls, f.assigns, f.rflow);
    tables.push_back(UnitTables{f.scopes, rewritten_rows(f.scopes, f.calls, f.assigns, f.rflow, rdefs, registry)});
  }
  a.mcg = merged_rows(tables, config.entry, a.messages);
  a.mcg_csv = write_rows<McgRow>(a.mcg);
  a.dot = dot_of(a.mcg);
  return a;
}

}  // namespace polycg
