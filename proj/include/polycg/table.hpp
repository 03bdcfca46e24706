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

#ifndef POLYCG_TABLE_HPP
#define POLYCG_TABLE_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polycg/expr.hpp"
#include "polycg/model.hpp"

namespace polycg {

// RFC-4180 CSV, UTF-8, mandatory header row, LF line endings. Fields are
// quoted only when they contain a comma, quote, CR or LF.

enum class ColumnKind { Text, Integer, JsonArray };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::Text;
};

struct Schema {
  std::string name;
  std::vector<Column> columns;

  std::string header() const;
};

using Record = std::vector<std::string>;

class TableError : public std::runtime_error {
 public:
  enum class Kind { SchemaMismatch, MalformedCsv };

  TableError(Kind kind, std::string table, std::size_t line, const std::string& what);

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

std::string write_table(std::span<const Record> rows, const Schema& schema);
std::vector<Record> read_table(std::string_view bytes, const Schema& schema);

namespace schemas {
const Schema& calls();
const Schema& assigns();
const Schema& rflow();
const Schema& rdefs();
const Schema& mcg();
/// One row per scope of every unit; carries defined procedures and
/// statement counts, which no other table records.
const Schema& units();
const Schema& registry();
}  // namespace schemas

// Typed rows. Each has to_record/from_record and an associated schema.

struct CallRow {
  std::string unit_id;
  Language language = Language::C;
  Label label;
  std::string callee;
  std::vector<Expr> args;
  NodeFlag flag = NodeFlag::None;
  std::optional<Language> target_language;

  friend bool operator==(const CallRow&, const CallRow&) = default;
};

struct AssignRow {
  std::string unit_id;
  AssignmentRecord record;

  friend bool operator==(const AssignRow&, const AssignRow&) = default;
};

struct FlowRow {
  std::string unit_id;
  FlowEdge edge;

  friend bool operator==(const FlowRow&, const FlowRow&) = default;
};

struct RdefRow {
  std::string unit_id;
  std::string scope;
  std::size_t use_index = 0;
  std::string variable;
  /// nullopt is the entry marker (variable possibly unassigned).
  std::optional<std::size_t> def_index;

  friend bool operator==(const RdefRow&, const RdefRow&) = default;
};

struct McgRow {
  std::string node_id;
  std::string parent_id;
  std::string proc;
  std::string unit_id;
  Label label;
  Language language = Language::C;
  std::optional<Language> target_language;
  std::vector<Expr> args;
  NodeFlag flag = NodeFlag::None;

  friend bool operator==(const McgRow&, const McgRow&) = default;
};

struct UnitRow {
  std::string unit_id;
  Language language = Language::C;
  std::string path;
  std::string scope;
  std::size_t statements = 0;

  friend bool operator==(const UnitRow&, const UnitRow&) = default;
};

Record to_record(const CallRow& r);
Record to_record(const AssignRow& r);
Record to_record(const FlowRow& r);
Record to_record(const RdefRow& r);
Record to_record(const McgRow& r);
Record to_record(const UnitRow& r);

template <typename Row>
struct RowTraits;

#define POLYCG_ROW_TRAITS(Row, fn)                                   \
  Row Row##_from_record(const Record& rec, std::size_t line);       \
  template <>                                                        \
  struct RowTraits<Row> {                                            \
    static const Schema& schema() { return schemas::fn(); }          \
    static Row from_record(const Record& rec, std::size_t line) {    \
      return Row##_from_record(rec, line);                           \
    }                                                                \
  };

POLYCG_ROW_TRAITS(CallRow, calls)
POLYCG_ROW_TRAITS(AssignRow, assigns)
POLYCG_ROW_TRAITS(FlowRow, rflow)
POLYCG_ROW_TRAITS(RdefRow, rdefs)
POLYCG_ROW_TRAITS(McgRow, mcg)
POLYCG_ROW_TRAITS(UnitRow, units)

#undef POLYCG_ROW_TRAITS

template <typename Row>
std::string write_rows(std::span<const Row> rows) {
  std::vector<Record> recs;
  recs.reserve(rows.size());
  for (const Row& r : rows) recs.push_back(to_record(r));
  return write_table(recs, RowTraits<Row>::schema());
}

template <typename Row>
std::vector<Row> read_rows(std::string_view bytes) {
  const Schema& schema = RowTraits<Row>::schema();
  std::vector<Record> recs = read_table(bytes, schema);
  std::vector<Row> out;
  out.reserve(recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) out.push_back(RowTraits<Row>::from_record(recs[i], i + 2));
  return out;
}

std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary sibling and renames, so readers never see a
/// partial table.
void write_file(const std::filesystem::path& path, std::string_view bytes);

template <typename Row>
std::vector<Row> load_rows(const std::filesystem::path& path) {
  return read_rows<Row>(read_file(path));
}

template <typename Row>
void save_rows(const std::filesystem::path& path, std::span<const Row> rows) {
  write_file(path, write_rows<Row>(rows));
}

}  // namespace polycg

#endif  // POLYCG_TABLE_HPP
