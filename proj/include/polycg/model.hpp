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

#ifndef POLYCG_MODEL_HPP
#define POLYCG_MODEL_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "polycg/expr.hpp"

namespace polycg {

/// Shell only ever appears as an interop target (system(), os.system()).
enum class Language { C, Python, JavaScript, Shell };

std::string_view to_string(Language lang);
std::optional<Language> parse_language(std::string_view name);

inline constexpr std::string_view kMainBody = "main-body";

struct Label {
  std::string scope;
  std::size_t index = 0;

  friend auto operator<=>(const Label&, const Label&) = default;
  friend bool operator==(const Label&, const Label&) = default;
};

std::string to_string(const Label& label);

struct CallSite {
  std::string target;
  std::vector<Expr> args;
  Label label;

  friend bool operator==(const CallSite&, const CallSite&) = default;
};

struct AssignmentRecord {
  Label label;
  std::string variable;
  Expr rhs = Expr::dynamic("");

  friend bool operator==(const AssignmentRecord&, const AssignmentRecord&) = default;
};

/// Edge of the reverse control-flow graph: successor -> predecessor.
struct FlowEdge {
  std::string scope;
  std::size_t from_index = 0;
  std::size_t to_index = 0;

  friend auto operator<=>(const FlowEdge&, const FlowEdge&) = default;
  friend bool operator==(const FlowEdge&, const FlowEdge&) = default;
};

enum class BlockKind { Assignment, Call, Condition, Return, Other };

/// One elementary statement. `calls` lists every call inside the statement
/// in post-order (innermost first); for a Call block the payload is the
/// outermost one.
struct LabeledBlock {
  Label label;
  BlockKind kind = BlockKind::Other;
  std::variant<std::monostate, CallSite, AssignmentRecord> payload;
  std::vector<CallSite> calls;
};

/// Control structure of one scope, enough to rebuild its CFG.
struct Statement {
  enum class Shape { Simple, Branch, Loop, Return, Break, Continue };

  std::size_t index = 0;
  Shape shape = Shape::Simple;
  std::vector<Statement> body;       // then-arm or loop body
  std::vector<Statement> else_body;  // Branch only
};

struct SourceUnit {
  std::string unit_id;
  Language language = Language::C;
  std::string path;
  std::vector<LabeledBlock> blocks;
  std::set<std::string> defined_procs;
  std::map<std::string, std::vector<Statement>> structure;

  /// Number of labeled statements in `scope` (0 for unknown scopes).
  std::size_t statement_count(std::string_view scope) const;
};

/// Targets of every call in the unit.
std::set<std::string> procs(const SourceUnit& unit);

class Codebase {
 public:
  Codebase() = default;
  explicit Codebase(std::vector<SourceUnit> units);

  /// Throws std::invalid_argument on a duplicate unit_id.
  void add(SourceUnit unit);

  std::span<const SourceUnit> units() const { return units_; }
  const SourceUnit* find(std::string_view unit_id) const;
  std::set<Language> languages() const;
  std::size_t count() const { return units_.size(); }

 private:
  std::vector<SourceUnit> units_;
};

enum class NodeFlag {
  None,
  AnonymousResolved,
  AnonymousDynamic,
  FileBasedDynamic,
  ProcBasedDynamic,
  CrossLangCycle,
  Recursive,
};

std::string_view to_string(NodeFlag flag);
std::optional<NodeFlag> parse_flag(std::string_view name);
bool is_dynamic(NodeFlag flag);

inline constexpr std::string_view kAnonymous = "Anonymous";
inline constexpr std::string_view kAnonymousDynamic = "Anonymous-Dynamic";
inline constexpr std::string_view kFileBasedDynamic = "FileBased-Dynamic";
inline constexpr std::string_view kProcBasedDynamic = "ProcBased-Dynamic";

/// A procedure body somewhere in the codebase: (unit, scope).
struct DefinitionRef {
  std::string unit_id;
  std::string scope;

  friend auto operator<=>(const DefinitionRef&, const DefinitionRef&) = default;
  friend bool operator==(const DefinitionRef&, const DefinitionRef&) = default;
};

struct CgNode {
  std::string node_id;
  std::string proc;
  Label label;
  std::vector<Expr> args;
  Language language = Language::C;
  std::optional<Language> target_language;
  NodeFlag flag = NodeFlag::None;
  /// Unit containing the call site.
  std::string unit_id;
  /// Body this node was expanded into (or would repeat). Not serialized.
  std::optional<DefinitionRef> definition;

  friend bool operator==(const CgNode&, const CgNode&) = default;
};

enum class GraphStage { Monolingual, InteropRewritten, Multilingual };

std::string_view to_string(GraphStage stage);

/// 64-bit FNV-1a over the identity fields, rendered as 16 hex digits.
std::string make_node_id(std::string_view unit_id, std::string_view proc, const Label& label,
                         std::size_t occurrence);

/// Rooted call graph. Children keep insertion order; node ids are assigned
/// on insertion from (unit_id, proc, label, occurrence counter).
class CallGraph {
 public:
  explicit CallGraph(GraphStage stage = GraphStage::Monolingual) : stage_(stage) {}

  /// Assigns a fresh id unless `keep_id` is set and the node already has one.
  const std::string& add_root(CgNode node, bool keep_id = false);
  const std::string& add_child(const std::string& parent, CgNode node, bool keep_id = false);

  /// Replaces a node (and drops its subtree) with `replacements`, placed at
  /// the same position under the same parent. Returns the new ids.
  std::vector<std::string> replace(const std::string& id, std::vector<CgNode> replacements);

  bool contains(std::string_view id) const { return entries_.count(std::string(id)) != 0; }
  const CgNode& node(std::string_view id) const;
  void set_flag(std::string_view id, NodeFlag flag);
  void set_definition(std::string_view id, DefinitionRef def);

  const std::vector<std::string>& children(std::string_view id) const;
  /// Empty for the root.
  const std::string& parent(std::string_view id) const;
  bool is_leaf(std::string_view id) const { return children(id).empty(); }

  const std::string& root() const { return root_; }
  GraphStage stage() const { return stage_; }
  void set_stage(GraphStage stage) { stage_ = stage; }
  std::size_t size() const { return entries_.size(); }

  /// Depth-first pre-order from the root.
  std::vector<std::string> preorder() const;
  /// All node ids, sorted.
  std::vector<std::string> node_ids() const;
  /// (parent, child) pairs, sorted.
  std::vector<std::pair<std::string, std::string>> edges() const;
  /// Root first, `id` last.
  std::vector<std::string> ancestry(std::string_view id) const;

 private:
  struct Entry {
    CgNode node;
    std::string parent;
    std::vector<std::string> children;
  };

  std::string assign_id(CgNode& node, bool keep_id);
  Entry& entry(std::string_view id);
  const Entry& entry(std::string_view id) const;
  void erase_subtree(const std::string& id);

  GraphStage stage_;
  std::string root_;
  std::unordered_map<std::string, Entry> entries_;
  std::map<std::string, std::size_t> occurrences_;
};

}  // namespace polycg

#endif  // POLYCG_MODEL_HPP
