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

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <random>
#include <thread>

#include "fixtures.hpp"
#include "polycg/pipeline.hpp"

namespace polycg {
namespace {

namespace fs = std::filesystem;

PipelineConfig config_for(const std::string& fixture, const std::string& entry, const fs::path& out) {
  PipelineConfig c;
  c.roots = {testing::fixture_dir(fixture)};
  c.entry = entry;
  c.out = out;
  return c;
}

bool has_message(const std::vector<std::string>& messages, const std::string& part) {
  return std::any_of(messages.begin(), messages.end(),
                     [&](const std::string& m) { return m.find(part) != std::string::npos; });
}

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

TEST(ScanCodebase, RelativeIdsSortedAndFiltered) {
  fs::path dir = testing::scratch_dir("scan");
  write(dir / "b/x.py", "f()\n");
  write(dir / "a.c", "int main() {}\n");
  write(dir / "notes.txt", "hello\n");
  write(dir / "w.js", "f();\n");
  auto units = scan_codebase({dir}, default_language_map());
  ASSERT_EQ(units.size(), 3u);
  EXPECT_EQ(units[0].unit_id, "a.c");
  EXPECT_EQ(units[1].unit_id, "b/x.py");
  EXPECT_EQ(units[1].language, Language::Python);
  EXPECT_EQ(units[2].unit_id, "w.js");
  auto single = scan_codebase({dir / "b/x.py"}, default_language_map());
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].unit_id, "x.py");
}

TEST(ScanCodebase, ConfigurationErrors) {
  fs::path empty = testing::scratch_dir("scan_empty");
  EXPECT_THROW(scan_codebase({empty}, default_language_map()), ConfigError);
  EXPECT_THROW(scan_codebase({empty / "missing"}, default_language_map()), ConfigError);
  fs::path dup = testing::scratch_dir("scan_dup");
  write(dup / "one/m.py", "f()\n");
  write(dup / "two/m.py", "g()\n");
  EXPECT_THROW(scan_codebase({dup / "one", dup / "two"}, default_language_map()), ConfigError);
}

TEST(RunPipeline, EmptyCodebaseIsAConfigError) {
  fs::path dir = testing::scratch_dir("empty");
  PipelineConfig c;
  c.roots = {dir};
  c.entry = "main.c";
  c.out = dir / "out";
  PipelineResult r = run_pipeline(c);
  EXPECT_EQ(r.exit_code, kExitConfigError);
  EXPECT_TRUE(has_message(r.messages, "no units found"));
}

TEST(RunPipeline, MissingEntryOrRegistryIsAConfigError) {
  fs::path out = testing::scratch_dir("bad_entry");
  PipelineResult r = run_pipeline(config_for("c_python_js", "nope.c", out));
  EXPECT_EQ(r.exit_code, kExitConfigError);
  PipelineConfig c = config_for("c_python_js", "main.c", out);
  c.registry = out / "missing.csv";
  EXPECT_EQ(run_pipeline(c).exit_code, kExitConfigError);
  write(out / "bad.csv", "api_name,source_language\nx,C\n");
  c.registry = out / "bad.csv";
  EXPECT_EQ(run_pipeline(c).exit_code, kExitConfigError);
}

TEST(RunPipeline, SyntaxErrorNamesFileAndLine) {
  fs::path out = testing::scratch_dir("broken");
  PipelineResult r = run_pipeline(config_for("broken", "main.c", out));
  EXPECT_EQ(r.exit_code, kExitAnalysisError);
  EXPECT_TRUE(has_message(r.messages, "main.c:")) << ::testing::PrintToString(r.messages);
  EXPECT_TRUE(r.artifacts.empty());
  EXPECT_FALSE(fs::exists(out / "mcg.csv"));
  for (const StageRecord& s : r.stages) {
    if (s.name == "facts:main.c") {
      EXPECT_EQ(s.status, StageStatus::Failed);
      EXPECT_TRUE(s.parse_error);
    } else if (s.name != "rdefs:main.c" || s.status != StageStatus::Done) {
      EXPECT_EQ(s.status, StageStatus::Skipped) << s.name;
    }
  }
}

TEST(RunPipeline, KeepsIntermediatesOnRequest) {
  fs::path out = testing::scratch_dir("keep");
  PipelineConfig c = config_for("c_python_js", "main.c", out);
  c.keep_intermediates = true;
  PipelineResult r = run_pipeline(c);
  ASSERT_EQ(r.exit_code, kExitOk) << ::testing::PrintToString(r.messages);
  for (const char* unit : {"main.c", "S.py", "compute.js"}) {
    for (const char* f :
         {"units.csv", "calls.csv", "assigns.csv", "rflow.csv", "mono.csv", "rdefs.csv", "calls.rewritten.csv"}) {
      EXPECT_TRUE(fs::exists(out / "work" / unit / f)) << unit << "/" << f;
    }
  }
  EXPECT_TRUE(fs::exists(out / "work" / "mcg.csv"));
  EXPECT_EQ(r.artifacts, (std::vector<fs::path>{out / "mcg.csv", out / "graph.dot"}));
  for (const StageRecord& s : r.stages) {
    EXPECT_EQ(s.status, StageStatus::Done) << s.name;
    for (const fs::path& o : s.outputs) EXPECT_TRUE(fs::exists(o)) << o;
  }
  EXPECT_EQ(r.stages.size(), 3u * 4u + 2u);
}

TEST(RunPipeline, WithoutKeepLeavesOnlyArtifacts) {
  fs::path out = testing::scratch_dir("nokeep");
  PipelineConfig c = config_for("c_python_js", "main.c", out);
  c.dot = false;
  PipelineResult r = run_pipeline(c);
  ASSERT_EQ(r.exit_code, kExitOk);
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(out)) names.push_back(e.path().filename().string());
  EXPECT_EQ(names, std::vector<std::string>{"mcg.csv"});
  for (const StageRecord& s : r.stages) {
    for (const fs::path& o : s.outputs) {
      if (o.parent_path() != out) {
        EXPECT_FALSE(fs::exists(o)) << o;
      }
    }
  }
}

TEST(RunPipeline, LibraryModeMatchesFiles) {
  for (const auto& [fixture, entry] : std::vector<std::pair<std::string, std::string>>{
           {"c_python_js", "main.c"}, {"dynamic_handler", "verifyAccount.py"}, {"hidden_cycle", "verifyAccount.py"}}) {
    fs::path out = testing::scratch_dir("lib_" + fixture);
    PipelineConfig c = config_for(fixture, entry, out);
    PipelineResult r = run_pipeline(c);
    ASSERT_EQ(r.exit_code, kExitOk) << fixture;
    Analysis a = analyze(c);
    EXPECT_EQ(read_file(out / "mcg.csv"), a.mcg_csv) << fixture;
    EXPECT_EQ(read_file(out / "graph.dot"), a.dot) << fixture;
    EXPECT_EQ(r.messages, a.messages) << fixture;
  }
}

TEST(RunPipeline, ParallelRunsProduceIdenticalBytes) {
  fs::path one = testing::scratch_dir("jobs1");
  fs::path four = testing::scratch_dir("jobs4");
  PipelineConfig c = config_for("c_python_js", "main.c", one);
  ASSERT_EQ(run_pipeline(c).exit_code, kExitOk);
  c.out = four;
  c.jobs = 4;
  for (int i = 0; i < 5; ++i) {
    ASSERT_EQ(run_pipeline(c).exit_code, kExitOk);
    EXPECT_EQ(read_file(one / "mcg.csv"), read_file(four / "mcg.csv"));
    EXPECT_EQ(read_file(one / "graph.dot"), read_file(four / "graph.dot"));
  }
}

TEST(RunPipeline, UnsupportedConstructsWarnButSucceed) {
  fs::path dir = testing::scratch_dir("warn");
  write(dir / "src/m.py", "class A:\n    pass\n\nf()\n");
  PipelineConfig c;
  c.roots = {dir / "src"};
  c.entry = "m.py";
  c.out = dir / "out";
  PipelineResult r = run_pipeline(c);
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_TRUE(has_message(r.messages, "warning: ")) << ::testing::PrintToString(r.messages);
}

TEST(RunStages, CyclesAndBadIndicesAreRejected) {
  std::vector<StageRecord> cyc(2);
  cyc[0].name = "a";
  cyc[0].deps = {1};
  cyc[1].name = "b";
  cyc[1].deps = {0};
  EXPECT_THROW(run_stages(cyc, 1), std::invalid_argument);
  std::vector<StageRecord> bad(1);
  bad[0].deps = {3};
  EXPECT_THROW(run_stages(bad, 1), std::invalid_argument);
  std::vector<StageRecord> self(1);
  self[0].deps = {0};
  EXPECT_THROW(run_stages(self, 1), std::invalid_argument);
}

TEST(RunStages, MissingInputFailsTheStage) {
  std::vector<StageRecord> s(2);
  s[0].name = "reader";
  s[0].inputs = {testing::scratch_dir("missing_input") / "absent.csv"};
  bool ran = false;
  s[0].run = [&](StageRecord&) { ran = true; };
  s[1].name = "after";
  s[1].deps = {0};
  s[1].run = [](StageRecord&) {};
  run_stages(s, 2);
  EXPECT_FALSE(ran);
  EXPECT_EQ(s[0].status, StageStatus::Failed);
  EXPECT_TRUE(has_message(s[0].messages, "absent.csv"));
  EXPECT_EQ(s[1].status, StageStatus::Skipped);
}

// Random DAGs with random failures, checked against a sequential oracle of
// which stages must run, fail or be skipped.
TEST(RunStagesProperty, RandomDagsRespectDependencies) {
  std::mt19937 rng(99);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 1 + rng() % 14;
    std::vector<StageRecord> stages(n);
    std::vector<bool> fails(n);
    std::mutex m;
    std::vector<std::size_t> order;
    std::atomic<int> concurrent{0};
    std::atomic<int> peak{0};
    for (std::size_t i = 0; i < n; ++i) {
      stages[i].name = "s" + std::to_string(i);
      for (std::size_t j = 0; j < i; ++j) {
        if (rng() % 4 == 0) stages[i].deps.push_back(j);
      }
      fails[i] = rng() % 7 == 0;
      stages[i].run = [&, i, fail = fails[i]](StageRecord&) {
        int now = ++concurrent;
        int prev = peak.load();
        while (now > prev && !peak.compare_exchange_weak(prev, now)) {
        }
        std::this_thread::sleep_for(std::chrono::microseconds(50));
        {
          std::lock_guard lock(m);
          order.push_back(i);
        }
        --concurrent;
        if (fail) throw std::runtime_error("boom");
      };
    }
    // Randomly permute so dependencies also point forward.
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<StageRecord> shuffled(n);
    for (std::size_t i = 0; i < n; ++i) {
      shuffled[perm[i]] = stages[i];
      for (auto& d : shuffled[perm[i]].deps) d = perm[d];
    }

    const std::size_t jobs = 1 + rng() % 4;
    run_stages(shuffled, jobs);

    std::vector<StageStatus> expect(n, StageStatus::Pending);
    for (std::size_t i = 0; i < n; ++i) {
      const StageRecord& s = stages[i];
      bool blocked = std::any_of(s.deps.begin(), s.deps.end(),
                                 [&](std::size_t d) { return expect[d] != StageStatus::Done; });
      expect[i] = blocked ? StageStatus::Skipped : fails[i] ? StageStatus::Failed : StageStatus::Done;
    }
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(shuffled[perm[i]].status, expect[i]) << "round " << round << " stage " << i;
    }
    std::vector<std::size_t> position(n, n);
    for (std::size_t k = 0; k < order.size(); ++k) position[order[k]] = k;
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(position[i] < n, expect[i] != StageStatus::Skipped);
      for (std::size_t d : stages[i].deps) {
        if (position[i] < n) {
          EXPECT_LT(position[d], position[i]);
        }
      }
    }
    EXPECT_LE(peak.load(), static_cast<int>(jobs));
    if (HasFailure()) return;
  }
}

}  // namespace
}  // namespace polycg
