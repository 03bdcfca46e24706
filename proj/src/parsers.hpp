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

#ifndef POLYCG_SRC_PARSERS_HPP
#define POLYCG_SRC_PARSERS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "polycg/frontend.hpp"
#include "polycg/model.hpp"

namespace polycg::detail {

SourceUnit parse_c(std::string_view text, std::string unit_id, std::string path, std::vector<Diagnostic>* warnings);
SourceUnit parse_python(std::string_view text, std::string unit_id, std::string path,
                        std::vector<Diagnostic>* warnings);
SourceUnit parse_js(std::string_view text, std::string unit_id, std::string path, std::vector<Diagnostic>* warnings);

}  // namespace polycg::detail

#endif  // POLYCG_SRC_PARSERS_HPP
