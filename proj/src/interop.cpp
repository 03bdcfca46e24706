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

#include "polycg/interop.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace polycg {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::optional<std::size_t> parse_index(std::string_view s) {
  if (!all_digits(s) || s.size() > 9) return std::nullopt;
  return static_cast<std::size_t>(std::stoul(std::string(s)));
}

const Expr* arg_at(std::span<const Expr> args, std::size_t i) { return i < args.size() ? &args[i] : nullptr; }

std::vector<Expr> without(std::span<const Expr> args, std::size_t i) {
  std::vector<Expr> out;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (k != i) out.push_back(args[k]);
  }
  return out;
}

StaticValue eval_at(const Expr& e, const std::string& scope, std::size_t at, const InteropContext& ctx) {
  static const DataflowContext empty;
  const DataflowContext& flow = ctx.flow != nullptr ? *ctx.flow : empty;
  try {
    return flow.eval(e, scope, at);
  } catch (const DataflowError&) {
    return StaticValue::unknown();
  }
}

ReachingDefs defs_at(const std::string& var, const std::string& scope, std::size_t at, const InteropContext& ctx) {
  if (ctx.flow == nullptr) return {ReachingDef{var, std::nullopt}};
  try {
    return ctx.flow->reaching(scope, {var}, at);
  } catch (const DataflowError&) {
    return {ReachingDef{var, std::nullopt}};
  }
}

const AssignmentRecord* def_record(const ReachingDef& d, const std::string& scope, const InteropContext& ctx) {
  if (d.is_entry() || ctx.flow == nullptr) return nullptr;
  return ctx.flow->assignment(scope, *d.index);
}

StaticValue merge_values(const std::vector<StaticValue>& parts) {
  std::set<std::string> all;
  for (const StaticValue& v : parts) {
    if (!v.is_known()) return StaticValue::unknown();
    all.insert(v.values().begin(), v.values().end());
  }
  return StaticValue::known(std::move(all));
}

// Receiver of `h.read()` or `h.read`, when it is a plain name.
std::optional<std::string> receiver_of(const Expr& e) {
  std::string_view name;
  if (e.is(Expr::Kind::Call) && e.args().empty()) {
    name = e.text();
  } else if (e.is(Expr::Kind::VarRef)) {
    name = e.text();
  } else {
    return std::nullopt;
  }
  auto dot = name.rfind('.');
  if (dot == std::string_view::npos) return std::nullopt;
  std::string recv(name.substr(0, dot));
  if (recv.find('.') != std::string::npos) return std::nullopt;
  return recv;
}

// Values of the binder's name argument for every definition of `var`.
StaticValue through_binder(const std::string& var, const Label& at, const ApiEntry& entry,
                           const InteropContext& ctx) {
  const std::size_t idx = entry.binder_name_index.value_or(0);
  std::vector<StaticValue> parts;
  ReachingDefs defs = defs_at(var, at.scope, at.index, ctx);
  if (defs.empty()) return StaticValue::unknown();
  for (const ReachingDef& d : defs) {
    const AssignmentRecord* rec = def_record(d, at.scope, ctx);
    if (rec == nullptr || !rec->rhs.is(Expr::Kind::Call) || rec->rhs.text() != entry.binder_api ||
        idx >= rec->rhs.args().size()) {
      return StaticValue::unknown();
    }
    parts.push_back(eval_at(rec->rhs.args()[idx], at.scope, d.index.value(), ctx));
  }
  return merge_values(parts);
}

// Unpacks the argument tuple built by the entry's packer before `at`.
std::optional<std::vector<Expr>> unpack(const Expr& packed, const Label& at, const ApiEntry& entry,
                                        const InteropContext& ctx) {
  if (!packed.is(Expr::Kind::VarRef)) return std::nullopt;
  if (packed.text() == "NULL") return std::vector<Expr>{};
  std::map<std::size_t, Expr> items;
  for (const CallRow& c : ctx.calls) {
    if (c.callee != entry.arg_packer || c.label.scope != at.scope || c.label.index >= at.index) continue;
    if (c.args.size() < 3 || c.args[0] != packed) continue;
    const Expr& pos = c.args[1];
    std::optional<std::size_t> i;
    if (pos.is(Expr::Kind::Dynamic)) i = parse_index(pos.text());
    if (!i) return std::nullopt;
    items.insert_or_assign(*i, c.args[2]);
  }
  if (items.empty() || items.rbegin()->first + 1 != items.size()) return std::nullopt;
  std::vector<Expr> out;
  for (auto& [i, e] : items) out.push_back(e);
  return out;
}

std::vector<Rewrite> resolved(const StaticValue& v, const ApiEntry& entry, std::string_view dynamic_proc,
                              NodeFlag dynamic_flag, std::span<const Expr> original,
                              const std::function<Rewrite(const std::string&)>& make) {
  if (!v.is_known()) {
    return {Rewrite{std::string(dynamic_proc), {original.begin(), original.end()}, dynamic_flag,
                    entry.target_language}};
  }
  std::vector<Rewrite> out;
  for (const std::string& x : v.values()) out.push_back(make(x));
  return out;
}

}  // namespace

std::string_view to_string(ApiClass c) {
  switch (c) {
    case ApiClass::Anonymous:
      return "Anonymous";
    case ApiClass::FileBased:
      return "FileBased";
    case ApiClass::ProcedureBased:
      return "ProcedureBased";
  }
  return "Anonymous";
}

std::optional<ApiClass> parse_api_class(std::string_view name) {
  for (ApiClass c : {ApiClass::Anonymous, ApiClass::FileBased, ApiClass::ProcedureBased}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

bool ApiEntry::matches(std::string_view callee) const {
  if (api_name.size() > 2 && api_name[0] == '*' && api_name[1] == '.') {
    std::string_view method = std::string_view(api_name).substr(1);  // ".eval"
    return callee.size() > method.size() && callee.substr(callee.size() - method.size()) == method;
  }
  return callee == api_name;
}

RegistryError::RegistryError(std::size_t entry_index, const std::string& what)
    : std::runtime_error("registry entry " + std::to_string(entry_index) + ": " + what), entry_index_(entry_index) {}

void ApiRegistry::add(ApiEntry e) {
  const std::size_t index = entries_.size();
  auto fail = [index](const std::string& what) { throw RegistryError(index, what); };
  if (e.api_name.empty()) fail("empty api_name");
  if (e.api_name[0] == '*' && (e.api_name.size() < 3 || e.api_name[1] != '.' || !is_dotted_name(e.api_name.substr(2)))) {
    fail("wildcard api_name must look like '*.method'");
  }
  if (e.api_name[0] != '*' && !is_dotted_name(e.api_name)) fail("api_name '" + e.api_name + "' is not a name");
  if (e.source_language == Language::Shell) fail("Shell cannot be a source language");
  if (e.source_language == e.target_language) fail("source and target language are the same");
  if (e.binder_api.empty() != !e.binder_name_index.has_value()) {
    fail("binder_api and binder_name_index must be given together");
  }
  if (!e.binder_api.empty() && e.api_class == ApiClass::Anonymous) fail("Anonymous entries take no binder");
  if (!e.arg_packer.empty() && e.api_class != ApiClass::ProcedureBased) {
    fail("arg_packer is only meaningful for ProcedureBased entries");
  }
  if (find(e.source_language, e.api_name, e.api_class) != nullptr) {
    fail("duplicate entry for " + e.api_name + " (" + std::string(to_string(e.source_language)) + ", " +
         std::string(to_string(e.api_class)) + ")");
  }
  entries_.push_back(std::move(e));
}

std::vector<const ApiEntry*> ApiRegistry::matching(Language lang, std::string_view callee) const {
  std::vector<const ApiEntry*> out;
  for (const ApiEntry& e : entries_) {
    if (e.source_language == lang && e.matches(callee)) out.push_back(&e);
  }
  std::stable_sort(out.begin(), out.end(), [](const ApiEntry* a, const ApiEntry* b) {
    bool wa = a->api_name[0] == '*';
    bool wb = b->api_name[0] == '*';
    return std::tie(wa, a->api_class) < std::tie(wb, b->api_class);
  });
  return out;
}

const ApiEntry* ApiRegistry::find(Language lang, std::string_view api_name, ApiClass c) const {
  for (const ApiEntry& e : entries_) {
    if (e.source_language == lang && e.api_name == api_name && e.api_class == c) return &e;
  }
  return nullptr;
}

ApiRegistry load_registry(std::string_view text) {
  std::vector<Record> recs;
  try {
    recs = read_table(text, schemas::registry());
  } catch (const TableError& e) {
    throw RegistryError(e.line() >= 2 ? e.line() - 2 : 0, e.what());
  }
  ApiRegistry reg;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const Record& r = recs[i];
    auto fail = [i](const std::string& what) { throw RegistryError(i, what); };
    ApiEntry e;
    e.api_name = r[0];
    auto src = parse_language(r[1]);
    auto dst = parse_language(r[2]);
    auto cls = parse_api_class(r[3]);
    if (!src) fail("unknown source_language '" + r[1] + "'");
    if (!dst) fail("unknown target_language '" + r[2] + "'");
    if (!cls) fail("unknown api_class '" + r[3] + "'");
    auto payload = parse_index(r[4]);
    if (!payload) fail("bad payload_arg_index '" + r[4] + "'");
    e.source_language = *src;
    e.target_language = *dst;
    e.api_class = *cls;
    e.payload_arg_index = *payload;
    e.binder_api = r[5];
    if (!r[6].empty()) {
      e.binder_name_index = parse_index(r[6]);
      if (!e.binder_name_index) fail("bad binder_name_index '" + r[6] + "'");
    }
    e.arg_packer = r[7];
    reg.add(std::move(e));
  }
  return reg;
}

std::string write_registry(const ApiRegistry& registry) {
  std::vector<Record> recs;
  for (const ApiEntry& e : registry.entries()) {
    recs.push_back({e.api_name, std::string(to_string(e.source_language)), std::string(to_string(e.target_language)),
                    std::string(to_string(e.api_class)), std::to_string(e.payload_arg_index), e.binder_api,
                    e.binder_name_index ? std::to_string(*e.binder_name_index) : std::string(), e.arg_packer});
  }
  return write_table(recs, schemas::registry());
}

ApiRegistry default_registry() { return load_registry(default_registry_text()); }

std::vector<Rewrite> filter_anonymous(const ApiEntry& entry, std::span<const Expr> args, const Label& at,
                                      const InteropContext& ctx) {
  const Expr* payload = arg_at(args, entry.payload_arg_index);
  StaticValue v = payload ? eval_at(*payload, at.scope, at.index, ctx) : StaticValue::unknown();
  return resolved(v, entry, kAnonymousDynamic, NodeFlag::AnonymousDynamic, args, [&](const std::string& code) {
    std::vector<Expr> a(args.begin(), args.end());
    a[entry.payload_arg_index] = Expr::literal(code);
    return Rewrite{std::string(kAnonymous), std::move(a), NodeFlag::AnonymousResolved, entry.target_language};
  });
}

std::optional<StaticValue> resolve_bound_file(const Expr& payload, const Label& at, const ApiEntry& entry,
                                              const InteropContext& ctx) {
  if (entry.binder_api.empty()) return std::nullopt;
  if (auto recv = receiver_of(payload)) return through_binder(*recv, at, entry, ctx);
  if (!payload.is(Expr::Kind::VarRef)) return std::nullopt;
  // A variable holding the contents: every definition must be a read.
  std::vector<StaticValue> parts;
  ReachingDefs defs = defs_at(payload.text(), at.scope, at.index, ctx);
  if (defs.empty()) return std::nullopt;
  for (const ReachingDef& d : defs) {
    const AssignmentRecord* rec = def_record(d, at.scope, ctx);
    if (rec == nullptr) return std::nullopt;
    auto recv = receiver_of(rec->rhs);
    if (!recv || !rec->rhs.is(Expr::Kind::Call)) return std::nullopt;
    parts.push_back(through_binder(*recv, rec->label, entry, ctx));
  }
  return merge_values(parts);
}

std::vector<Rewrite> filter_file_based(const ApiEntry& entry, std::span<const Expr> args, const Label& at,
                                       const InteropContext& ctx) {
  const Expr* payload = arg_at(args, entry.payload_arg_index);
  StaticValue v = StaticValue::unknown();
  if (payload != nullptr) {
    if (!entry.binder_api.empty()) {
      v = resolve_bound_file(*payload, at, entry, ctx).value_or(StaticValue::unknown());
    } else {
      v = eval_at(*payload, at.scope, at.index, ctx);
    }
  }
  return resolved(v, entry, kFileBasedDynamic, NodeFlag::FileBasedDynamic, args, [&](const std::string& file) {
    return Rewrite{file, without(args, entry.payload_arg_index), NodeFlag::None, entry.target_language};
  });
}

StaticValue resolve_handle(const Expr& handle, const Label& at, const ApiEntry& entry, const InteropContext& ctx) {
  const std::size_t idx = entry.binder_name_index.value_or(0);
  if (handle.is(Expr::Kind::Call) && handle.text() == entry.binder_api) {
    if (idx >= handle.args().size()) return StaticValue::unknown();
    return eval_at(handle.args()[idx], at.scope, at.index, ctx);
  }
  if (!handle.is(Expr::Kind::VarRef)) return StaticValue::unknown();
  return through_binder(handle.text(), at, entry, ctx);
}

std::vector<Rewrite> filter_procedure_based(const ApiEntry& entry, std::span<const Expr> args, const Label& at,
                                            const InteropContext& ctx) {
  const Expr* payload = arg_at(args, entry.payload_arg_index);
  StaticValue v = StaticValue::unknown();
  if (payload != nullptr) {
    v = entry.binder_api.empty() ? eval_at(*payload, at.scope, at.index, ctx) : resolve_handle(*payload, at, entry, ctx);
  }
  std::vector<Expr> call_args = without(args, entry.payload_arg_index);
  if (!entry.arg_packer.empty()) {
    if (const Expr* packed = arg_at(args, entry.payload_arg_index + 1)) {
      if (auto items = unpack(*packed, at, entry, ctx)) {
        call_args = std::move(*items);
      } else {
        call_args = {Expr::dynamic(packed->source())};
      }
    }
  }
  return resolved(v, entry, kProcBasedDynamic, NodeFlag::ProcBasedDynamic, args, [&](const std::string& name) {
    return Rewrite{name, call_args, NodeFlag::None, entry.target_language};
  });
}

std::optional<std::vector<Rewrite>> rewrite_call_site(Language lang, std::string_view callee,
                                                      std::span<const Expr> args, const Label& at,
                                                      const ApiRegistry& registry, const InteropContext& ctx) {
  std::vector<const ApiEntry*> cands = registry.matching(lang, callee);
  if (cands.empty()) return std::nullopt;
  // A binder-read FileBased role wins when the payload has its shape;
  // otherwise prefer the other roles of the same API.
  const ApiEntry* chosen = nullptr;
  for (const ApiEntry* e : cands) {
    if (e->api_class != ApiClass::FileBased || e->binder_api.empty()) continue;
    const Expr* payload = arg_at(args, e->payload_arg_index);
    if (payload != nullptr && resolve_bound_file(*payload, at, *e, ctx)) {
      chosen = e;
      break;
    }
  }
  if (chosen == nullptr) {
    for (const ApiEntry* e : cands) {
      if (!(e->api_class == ApiClass::FileBased && !e->binder_api.empty())) {
        chosen = e;
        break;
      }
    }
  }
  if (chosen == nullptr) chosen = cands.front();
  switch (chosen->api_class) {
    case ApiClass::Anonymous:
      return filter_anonymous(*chosen, args, at, ctx);
    case ApiClass::FileBased:
      return filter_file_based(*chosen, args, at, ctx);
    case ApiClass::ProcedureBased:
      return filter_procedure_based(*chosen, args, at, ctx);
  }
  return std::nullopt;
}

void apply_interop(CallGraph& cg, const ApiRegistry& registry, const InteropContext& ctx) {
  for (const std::string& id : cg.node_ids()) {
    if (!cg.contains(id) || id == cg.root()) continue;
    const CgNode& n = cg.node(id);
    if (n.target_language || n.flag != NodeFlag::None) continue;
    auto rewrites = rewrite_call_site(n.language, n.proc, n.args, n.label, registry, ctx);
    if (!rewrites) continue;
    std::vector<CgNode> repl;
    for (Rewrite& r : *rewrites) {
      CgNode c;
      c.proc = std::move(r.proc);
      c.label = n.label;
      c.args = std::move(r.args);
      c.language = n.language;
      c.target_language = r.target_language;
      c.flag = r.flag;
      c.unit_id = n.unit_id;
      repl.push_back(std::move(c));
    }
    cg.replace(id, std::move(repl));
  }
  cg.set_stage(GraphStage::InteropRewritten);
}

std::vector<CallRow> rewrite_calls(std::span<const CallRow> calls, const ApiRegistry& registry,
                                   const DataflowContext& flow) {
  InteropContext ctx{&flow, calls};
  std::vector<CallRow> out;
  for (const CallRow& row : calls) {
    if (row.target_language || row.flag != NodeFlag::None) {
      out.push_back(row);
      continue;
    }
    auto rewrites = rewrite_call_site(row.language, row.callee, row.args, row.label, registry, ctx);
    if (!rewrites) {
      out.push_back(row);
      continue;
    }
    for (Rewrite& r : *rewrites) {
      CallRow c = row;
      c.callee = std::move(r.proc);
      c.args = std::move(r.args);
      c.flag = r.flag;
      c.target_language = r.target_language;
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace polycg
