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

#include "polycg/table.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace polycg {

namespace {

bool needs_quotes(std::string_view field) {
  return field.find_first_of(",\"\r\n") != std::string_view::npos;
}

void append_field(std::string& out, std::string_view field) {
  if (!needs_quotes(field)) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void append_record(std::string& out, const Record& rec) {
  for (std::size_t i = 0; i < rec.size(); ++i) {
    if (i) out += ',';
    append_field(out, rec[i]);
  }
  out += '\n';
}

bool is_integer(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

void check_kinds(const Record& rec, const Schema& schema, std::size_t line) {
  if (rec.size() != schema.columns.size()) {
    throw TableError(TableError::Kind::SchemaMismatch, schema.name, line,
                     "expected " + std::to_string(schema.columns.size()) + " columns, got " +
                         std::to_string(rec.size()));
  }
  for (std::size_t i = 0; i < rec.size(); ++i) {
    const Column& col = schema.columns[i];
    bool ok = true;
    switch (col.kind) {
      case ColumnKind::Text:
        break;
      case ColumnKind::Integer:
        ok = is_integer(rec[i]);
        break;
      case ColumnKind::JsonArray:
        ok = nlohmann::json::accept(rec[i]) && nlohmann::json::parse(rec[i]).is_array();
        break;
    }
    if (!ok) {
      throw TableError(TableError::Kind::SchemaMismatch, schema.name, line,
                       "column '" + col.name + "' has a malformed value '" + rec[i] + "'");
    }
  }
}

// Splits RFC-4180 text into records. Tolerates CRLF line endings.
std::vector<std::pair<Record, std::size_t>> parse_csv(std::string_view bytes, const std::string& table) {
  std::vector<std::pair<Record, std::size_t>> out;
  std::size_t pos = 0;
  std::size_t line = 1;
  while (pos < bytes.size()) {
    Record rec;
    std::size_t start_line = line;
    std::string field;
    bool done = false;
    while (!done) {
      field.clear();
      if (pos < bytes.size() && bytes[pos] == '"') {
        ++pos;
        bool closed = false;
        while (pos < bytes.size()) {
          char c = bytes[pos++];
          if (c == '"') {
            if (pos < bytes.size() && bytes[pos] == '"') {
              field += '"';
              ++pos;
            } else {
              closed = true;
              break;
            }
          } else {
            if (c == '\n') ++line;
            field += c;
          }
        }
        if (!closed) {
          throw TableError(TableError::Kind::MalformedCsv, table, start_line, "unbalanced quotes");
        }
        if (pos < bytes.size() && bytes[pos] != ',' && bytes[pos] != '\n' && bytes[pos] != '\r') {
          throw TableError(TableError::Kind::MalformedCsv, table, line,
                           "unexpected character after closing quote");
        }
      } else {
        while (pos < bytes.size() && bytes[pos] != ',' && bytes[pos] != '\n' && bytes[pos] != '\r') {
          if (bytes[pos] == '"') {
            throw TableError(TableError::Kind::MalformedCsv, table, line, "quote inside unquoted field");
          }
          field += bytes[pos++];
        }
      }
      rec.push_back(field);
      if (pos >= bytes.size()) {
        done = true;
      } else if (bytes[pos] == ',') {
        ++pos;
      } else {
        if (bytes[pos] == '\r') ++pos;
        if (pos < bytes.size() && bytes[pos] == '\n') ++pos;
        ++line;
        done = true;
      }
    }
    out.emplace_back(std::move(rec), start_line);
  }
  return out;
}

std::size_t to_index(const std::string& s, const char* what, std::size_t line) {
  if (s.empty() || s.front() == '-') {
    throw TableError(TableError::Kind::SchemaMismatch, what, line, "expected a non-negative index");
  }
  return static_cast<std::size_t>(std::stoull(s));
}

Language to_language(const std::string& s, const char* table, std::size_t line) {
  auto l = parse_language(s);
  if (!l) throw TableError(TableError::Kind::SchemaMismatch, table, line, "unknown language '" + s + "'");
  return *l;
}

std::optional<Language> to_opt_language(const std::string& s, const char* table, std::size_t line) {
  if (s.empty()) return std::nullopt;
  return to_language(s, table, line);
}

NodeFlag to_flag(const std::string& s, const char* table, std::size_t line) {
  auto f = parse_flag(s);
  if (!f) throw TableError(TableError::Kind::SchemaMismatch, table, line, "unknown flag '" + s + "'");
  return *f;
}

std::vector<Expr> to_args(const std::string& s, const char* table, std::size_t line) {
  try {
    return decode_args(s);
  } catch (const ExprCodecError& ex) {
    throw TableError(TableError::Kind::SchemaMismatch, table, line, ex.what());
  }
}

std::string opt_language(const std::optional<Language>& l) {
  return l ? std::string(to_string(*l)) : std::string();
}

Schema make_schema(std::string name, std::initializer_list<Column> cols) { return Schema{std::move(name), cols}; }

constexpr auto T = ColumnKind::Text;
constexpr auto I = ColumnKind::Integer;
constexpr auto J = ColumnKind::JsonArray;

}  // namespace

TableError::TableError(Kind kind, std::string table, std::size_t line, const std::string& what)
    : std::runtime_error(table + ":" + std::to_string(line) + ": " +
                         (kind == Kind::SchemaMismatch ? "schema mismatch: " : "malformed csv: ") + what),
      kind_(kind),
      line_(line) {}

std::string Schema::header() const {
  std::string h;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) h += ',';
    h += columns[i].name;
  }
  return h;
}

std::string write_table(std::span<const Record> rows, const Schema& schema) {
  std::string out = schema.header() + "\n";
  std::size_t line = 2;
  for (const Record& r : rows) {
    check_kinds(r, schema, line++);
    append_record(out, r);
  }
  return out;
}

std::vector<Record> read_table(std::string_view bytes, const Schema& schema) {
  auto parsed = parse_csv(bytes, schema.name);
  if (parsed.empty()) throw TableError(TableError::Kind::SchemaMismatch, schema.name, 1, "missing header row");
  Record expected;
  for (const auto& c : schema.columns) expected.push_back(c.name);
  if (parsed.front().first != expected) {
    throw TableError(TableError::Kind::SchemaMismatch, schema.name, 1,
                     "header does not match '" + schema.header() + "'");
  }
  std::vector<Record> out;
  for (std::size_t i = 1; i < parsed.size(); ++i) {
    check_kinds(parsed[i].first, schema, parsed[i].second);
    out.push_back(std::move(parsed[i].first));
  }
  return out;
}

namespace schemas {

const Schema& calls() {
  static const Schema s = make_schema("calls.csv", {{"unit_id", T}, {"language", T}, {"scope", T}, {"index", I},
                                                    {"callee", T}, {"args", J}, {"flag", T},
                                                    {"target_language", T}});
  return s;
}

const Schema& assigns() {
  static const Schema s = make_schema("assigns.csv", {{"unit_id", T}, {"scope", T}, {"index", I},
                                                      {"variable", T}, {"rhs_kind", T}, {"rhs_value", T}});
  return s;
}

const Schema& rflow() {
  static const Schema s =
      make_schema("rflow.csv", {{"unit_id", T}, {"scope", T}, {"from_index", I}, {"to_index", I}});
  return s;
}

const Schema& rdefs() {
  static const Schema s = make_schema(
      "rdefs.csv", {{"unit_id", T}, {"scope", T}, {"use_index", I}, {"variable", T}, {"def_index", T}});
  return s;
}

const Schema& mcg() {
  static const Schema s = make_schema("mcg.csv", {{"node_id", T}, {"parent_id", T}, {"proc", T},
                                                  {"unit_id", T}, {"scope", T}, {"index", I},
                                                  {"language", T}, {"target_language", T}, {"args", J},
                                                  {"flag", T}});
  return s;
}

const Schema& units() {
  static const Schema s = make_schema(
      "units.csv", {{"unit_id", T}, {"language", T}, {"path", T}, {"scope", T}, {"statements", I}});
  return s;
}

const Schema& registry() {
  static const Schema s = make_schema("registry.csv", {{"api_name", T}, {"source_language", T},
                                                       {"target_language", T}, {"api_class", T},
                                                       {"payload_arg_index", I}, {"binder_api", T},
                                                       {"binder_name_index", T}, {"arg_packer", T}});
  return s;
}

}  // namespace schemas

Record to_record(const CallRow& r) {
  return {r.unit_id,  std::string(to_string(r.language)), r.label.scope, std::to_string(r.label.index),
          r.callee,   encode_args(r.args),                 std::string(to_string(r.flag)),
          opt_language(r.target_language)};
}

CallRow CallRow_from_record(const Record& rec, std::size_t line) {
  const char* t = "calls.csv";
  CallRow r;
  r.unit_id = rec[0];
  r.language = to_language(rec[1], t, line);
  r.label = Label{rec[2], to_index(rec[3], t, line)};
  r.callee = rec[4];
  r.args = to_args(rec[5], t, line);
  r.flag = to_flag(rec[6], t, line);
  r.target_language = to_opt_language(rec[7], t, line);
  return r;
}

Record to_record(const AssignRow& r) {
  const auto& a = r.record;
  return {r.unit_id,
          a.label.scope,
          std::to_string(a.label.index),
          a.variable,
          std::string(kind_name(a.rhs.kind())),
          encode_flat(a.rhs)};
}

AssignRow AssignRow_from_record(const Record& rec, std::size_t line) {
  const char* t = "assigns.csv";
  AssignRow r;
  r.unit_id = rec[0];
  r.record.label = Label{rec[1], to_index(rec[2], t, line)};
  r.record.variable = rec[3];
  try {
    Expr::Kind declared = parse_kind_name(rec[4]);
    r.record.rhs = decode_flat(rec[5]);
    if (r.record.rhs.kind() != declared) {
      throw TableError(TableError::Kind::SchemaMismatch, t, line, "rhs_kind does not match rhs_value");
    }
  } catch (const ExprCodecError& ex) {
    throw TableError(TableError::Kind::SchemaMismatch, t, line, ex.what());
  }
  return r;
}

Record to_record(const FlowRow& r) {
  return {r.unit_id, r.edge.scope, std::to_string(r.edge.from_index), std::to_string(r.edge.to_index)};
}

FlowRow FlowRow_from_record(const Record& rec, std::size_t line) {
  const char* t = "rflow.csv";
  return FlowRow{rec[0], FlowEdge{rec[1], to_index(rec[2], t, line), to_index(rec[3], t, line)}};
}

Record to_record(const RdefRow& r) {
  return {r.unit_id, r.scope, std::to_string(r.use_index), r.variable,
          r.def_index ? std::to_string(*r.def_index) : std::string("entry")};
}

RdefRow RdefRow_from_record(const Record& rec, std::size_t line) {
  const char* t = "rdefs.csv";
  RdefRow r;
  r.unit_id = rec[0];
  r.scope = rec[1];
  r.use_index = to_index(rec[2], t, line);
  r.variable = rec[3];
  if (rec[4] != "entry") {
    if (!is_integer(rec[4])) throw TableError(TableError::Kind::SchemaMismatch, t, line, "bad def_index");
    r.def_index = to_index(rec[4], t, line);
  }
  return r;
}

Record to_record(const McgRow& r) {
  return {r.node_id,
          r.parent_id,
          r.proc,
          r.unit_id,
          r.label.scope,
          std::to_string(r.label.index),
          std::string(to_string(r.language)),
          opt_language(r.target_language),
          encode_args(r.args),
          std::string(to_string(r.flag))};
}

McgRow McgRow_from_record(const Record& rec, std::size_t line) {
  const char* t = "mcg.csv";
  McgRow r;
  r.node_id = rec[0];
  r.parent_id = rec[1];
  r.proc = rec[2];
  r.unit_id = rec[3];
  r.label = Label{rec[4], to_index(rec[5], t, line)};
  r.language = to_language(rec[6], t, line);
  r.target_language = to_opt_language(rec[7], t, line);
  r.args = to_args(rec[8], t, line);
  r.flag = to_flag(rec[9], t, line);
  return r;
}

Record to_record(const UnitRow& r) {
  return {r.unit_id, std::string(to_string(r.language)), r.path, r.scope, std::to_string(r.statements)};
}

UnitRow UnitRow_from_record(const Record& rec, std::size_t line) {
  const char* t = "units.csv";
  return UnitRow{rec[0], to_language(rec[1], t, line), rec[2], rec[3], to_index(rec[4], t, line)};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace polycg
