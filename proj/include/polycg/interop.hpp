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

#ifndef POLYCG_INTEROP_HPP
#define POLYCG_INTEROP_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polycg/callgraph.hpp"
#include "polycg/dataflow.hpp"
#include "polycg/model.hpp"
#include "polycg/table.hpp"

namespace polycg {

enum class ApiClass { Anonymous, FileBased, ProcedureBased };

std::string_view to_string(ApiClass c);
std::optional<ApiClass> parse_api_class(std::string_view name);

/// One interoperability API. `api_name` is a callee name, or `*.method` to
/// match that method on any receiver.
///
/// The binder describes how the payload's value is obtained indirectly:
/// for ProcedureBased it is the call that binds the handle (its argument
/// `binder_name_index` names the procedure); for FileBased it is the call
/// that opens the file whose contents are the payload.
struct ApiEntry {
  std::string api_name;
  Language source_language = Language::C;
  Language target_language = Language::Python;
  ApiClass api_class = ApiClass::Anonymous;
  std::size_t payload_arg_index = 0;
  std::string binder_api;
  std::optional<std::size_t> binder_name_index;
  std::string arg_packer;

  bool matches(std::string_view callee) const;

  friend bool operator==(const ApiEntry&, const ApiEntry&) = default;
};

class RegistryError : public std::runtime_error {
 public:
  /// `entry_index` counts data rows from 0.
  RegistryError(std::size_t entry_index, const std::string& what);
  std::size_t entry_index() const { return entry_index_; }

 private:
  std::size_t entry_index_;
};

/// Entries keyed by (source_language, api_name, api_class).
class ApiRegistry {
 public:
  /// Throws RegistryError on a duplicate key or an inconsistent entry.
  void add(ApiEntry entry);

  std::span<const ApiEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  /// Entries matching a call; exact names before wildcards, then by class.
  std::vector<const ApiEntry*> matching(Language lang, std::string_view callee) const;
  const ApiEntry* find(Language lang, std::string_view api_name, ApiClass c) const;

 private:
  std::vector<ApiEntry> entries_;
};

ApiRegistry load_registry(std::string_view text);
std::string write_registry(const ApiRegistry& registry);

/// The registry shipped with the tool.
std::string_view default_registry_text();
ApiRegistry default_registry();

/// Everything a filter reads about one unit besides the call itself.
struct InteropContext {
  const DataflowContext* flow = nullptr;
  /// Calls of the unit in label order, used to trace argument packers.
  std::span<const CallRow> calls;
};

/// Result of rewriting one call site; one element per resolved value.
struct Rewrite {
  std::string proc;
  std::vector<Expr> args;
  NodeFlag flag = NodeFlag::None;
  Language target_language = Language::C;

  friend bool operator==(const Rewrite&, const Rewrite&) = default;
};

std::vector<Rewrite> filter_anonymous(const ApiEntry& entry, std::span<const Expr> args, const Label& at,
                                      const InteropContext& ctx);
std::vector<Rewrite> filter_file_based(const ApiEntry& entry, std::span<const Expr> args, const Label& at,
                                       const InteropContext& ctx);
std::vector<Rewrite> filter_procedure_based(const ApiEntry& entry, std::span<const Expr> args, const Label& at,
                                            const InteropContext& ctx);

/// Names the handle in `handle` may be bound to at `at`, through the
/// entry's binder call. Any other binding yields Unknown.
StaticValue resolve_handle(const Expr& handle, const Label& at, const ApiEntry& entry, const InteropContext& ctx);

/// Values of a FileBased payload read through a binder (e.g. the name
/// passed to `open` for `f.read()`); nullopt when the payload is not of
/// that shape.
std::optional<StaticValue> resolve_bound_file(const Expr& payload, const Label& at, const ApiEntry& entry,
                                              const InteropContext& ctx);

/// Chooses the registry entry for a call (if any) and applies its filter.
std::optional<std::vector<Rewrite>> rewrite_call_site(Language lang, std::string_view callee,
                                                      std::span<const Expr> args, const Label& at,
                                                      const ApiRegistry& registry, const InteropContext& ctx);

/// Graph form: rewrites matching nodes in node-id order. Rewritten nodes are
/// leaves.
void apply_interop(CallGraph& cg, const ApiRegistry& registry, const InteropContext& ctx);

/// Table form, as written to calls.rewritten.csv.
std::vector<CallRow> rewrite_calls(std::span<const CallRow> calls, const ApiRegistry& registry,
                                   const DataflowContext& flow);

}  // namespace polycg

#endif  // POLYCG_INTEROP_HPP
