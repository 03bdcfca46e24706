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

#ifndef POLYCG_TESTS_ORACLES_HPP
#define POLYCG_TESTS_ORACLES_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "program_gen.hpp"

namespace polycg::testing {

// Definition of a variable reaching a point; nullopt is the procedure entry.
using DefSite = std::optional<std::size_t>;

// point -> variable -> definitions observed on some enumerated path.
using ReachMap = std::map<std::size_t, std::map<int, std::set<DefSite>>>;

// Walks every path of the program, taking each loop at most `unroll` times,
// and records the last definition of each variable before every statement.
ReachMap enumerate_reaching(const GenProgram& p, int unroll);

// Number of paths the enumeration above walks.
std::size_t count_paths(const GenProgram& p, int unroll);

// Values a variable may hold at a point under every branch outcome.
struct ObservedValue {
  // Some execution reads the variable before any assignment, reads
  // external input, or derives it from an earlier run of the assignment
  // that is being evaluated.
  bool unknown = false;
  std::set<std::string> values;
};

// point -> variable -> observed values, from exhaustive execution of both
// arms of every branch and every loop trip count until no new state appears.
std::map<std::size_t, std::map<int, ObservedValue>> execute_all_branches(const GenProgram& p);

}  // namespace polycg::testing

#endif  // POLYCG_TESTS_ORACLES_HPP
