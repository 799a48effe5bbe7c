/*
 * Copyright 2026 The impid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Canonical JSON forms of the model types. Field order is fixed; optional
// and empty payload fields are omitted.

#ifndef IMPID_SERIALIZE_HPP
#define IMPID_SERIALIZE_HPP

#include <string>
#include <string_view>

#include "json.hpp"

#include "impid/model.hpp"
#include "impid/timestamp.hpp"

namespace impid {

using Json = nlohmann::ordered_json;

class FormatError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string get_string(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_string()) throw FormatError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

inline std::string opt_string(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return {};
  if (!j.at(key).is_string()) throw FormatError(std::string("field '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

template <class T>
T get_number(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer()) throw FormatError(std::string("field '") + key + "' must be an integer");
  if constexpr (std::is_unsigned_v<T>) {
    if (v.is_number_unsigned()) return v.get<T>();
    if (v.get<long long>() < 0) throw FormatError(std::string("field '") + key + "' must be non-negative");
  }
  return v.get<T>();
}

inline bool get_bool(const Json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) throw FormatError(std::string("field '") + key + "' must be a boolean");
  return j.at(key).get<bool>();
}

}  // namespace detail

// --- Span ------------------------------------------------------------------

inline Json to_json(const Span& s) {
  return Json{{"start", s.start}, {"end", s.end}, {"line", s.line}, {"col", s.col}};
}

inline Span span_from_json(const Json& j) {
  Span s;
  s.start = detail::get_number<std::size_t>(j, "start");
  s.end = detail::get_number<std::size_t>(j, "end");
  s.line = j.contains("line") ? detail::get_number<int>(j, "line") : 1;
  s.col = j.contains("col") ? detail::get_number<int>(j, "col") : 1;
  return s;
}

// --- IdentityKey -----------------------------------------------------------

inline Json to_json(const IdentityKey& k) { return k.str(); }

inline IdentityKey identity_from_json(const Json& j) {
  if (!j.is_string()) throw FormatError("identity must be a string");
  IdentityKey key(j.get<std::string>());
  if (!key.valid()) throw FormatError("invalid identity '" + key.str() + "'");
  return key;
}

// --- Occurrence ------------------------------------------------------------

inline EntityKind entity_kind_from_string(std::string_view s) {
  for (auto k : {EntityKind::class_, EntityKind::interface_, EntityKind::enum_, EntityKind::method, EntityKind::field,
                 EntityKind::parameter, EntityKind::local})
    if (to_string(k) == s) return k;
  throw FormatError("unknown entity kind '" + std::string(s) + "'");
}

inline Json to_json(const Occurrence& o) {
  return Json{{"identity", o.identity.str()},
              {"span", to_json(o.span)},
              {"role", to_string(o.role)},
              {"kind", to_string(o.kind)},
              {"name", o.name}};
}

inline Occurrence occurrence_from_json(const Json& j) {
  Occurrence o;
  o.identity = identity_from_json(detail::require(j, "identity"));
  o.span = span_from_json(detail::require(j, "span"));
  std::string role = detail::get_string(j, "role");
  if (role != "declaration" && role != "usage") throw FormatError("unknown role '" + role + "'");
  o.role = role == "declaration" ? Role::declaration : Role::usage;
  o.kind = entity_kind_from_string(detail::get_string(j, "kind"));
  o.name = detail::get_string(j, "name");
  return o;
}

// --- ContextFacts ----------------------------------------------------------

inline Json to_json(const ContextFacts& f) {
  Json j = Json::object();
  Json mods = Json::array();
  for (Modifier m : kAllModifiers)
    if (f.has(m)) mods.push_back(to_string(m));
  j["modifiers"] = mods;
  Json anns = Json::array();
  for (const auto& a : f.annotations) anns.push_back(Json{{"name", a.name}, {"arguments", a.arguments}});
  j["annotations"] = anns;
  j["declaredType"] = Json{{"text", f.declared_type.text}, {"container", f.declared_type.container}};
  j["parameters"] = f.parameters;
  j["returnType"] = f.return_type ? Json(*f.return_type) : Json(nullptr);
  j["supertypes"] = f.supertypes;
  j["initializer"] = f.initializer;
  j["loopHeader"] = f.loop_header;
  return j;
}

inline std::vector<std::string> string_list_from_json(const Json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  const Json& arr = j.at(key);
  if (!arr.is_array()) throw FormatError(std::string("field '") + key + "' must be an array");
  for (const auto& v : arr) {
    if (!v.is_string()) throw FormatError(std::string("field '") + key + "' must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

inline ContextFacts context_facts_from_json(const Json& j) {
  ContextFacts f;
  for (const auto& m : string_list_from_json(j, "modifiers")) {
    auto mod = modifier_from_string(m);
    if (!mod) throw FormatError("unknown modifier '" + m + "'");
    f.modifiers.insert(*mod);
  }
  if (j.contains("annotations"))
    for (const auto& a : j.at("annotations")) f.annotations.push_back({detail::get_string(a, "name"), detail::opt_string(a, "arguments")});
  if (j.contains("declaredType")) {
    const Json& t = j.at("declaredType");
    f.declared_type.text = detail::opt_string(t, "text");
    f.declared_type.container = detail::get_bool(t, "container", false);
  }
  f.parameters = string_list_from_json(j, "parameters");
  if (j.contains("returnType") && !j.at("returnType").is_null()) f.return_type = detail::get_string(j, "returnType");
  f.supertypes = string_list_from_json(j, "supertypes");
  f.initializer = detail::opt_string(j, "initializer");
  f.loop_header = detail::get_bool(j, "loopHeader", false);
  return f;
}

// --- Decoration ------------------------------------------------------------

inline Json to_json(const Decoration& d) {
  return Json{{"span", Json{{"start", d.target.start}, {"end", d.target.end}}},
              {"line", d.target.line},
              {"col", d.target.col},
              {"kind", to_string(d.kind)},
              {"text", d.text},
              {"category", d.category},
              {"priority", d.priority},
              {"description", d.description},
              {"identity", d.identity ? Json(d.identity->str()) : Json(nullptr)}};
}

inline Decoration decoration_from_json(const Json& j) {
  Decoration d;
  const Json& span = detail::require(j, "span");
  d.target.start = detail::get_number<std::size_t>(span, "start");
  d.target.end = detail::get_number<std::size_t>(span, "end");
  d.target.line = detail::get_number<int>(j, "line");
  d.target.col = detail::get_number<int>(j, "col");
  auto kind = decoration_kind_from_string(detail::get_string(j, "kind"));
  if (!kind) throw FormatError("unknown decoration kind");
  d.kind = *kind;
  d.text = detail::get_string(j, "text");
  d.category = detail::get_string(j, "category");
  d.priority = detail::get_number<int>(j, "priority");
  d.description = detail::get_string(j, "description");
  if (j.contains("identity") && !j.at("identity").is_null()) d.identity = identity_from_json(j.at("identity"));
  return d;
}

// --- Finding ---------------------------------------------------------------

inline Json to_json(const Finding& f) {
  return Json{{"rule", to_string(f.rule)}, {"target", f.target.str()}, {"message", f.message}};
}

inline Finding finding_from_json(const Json& j) {
  Finding f;
  auto rule = rule_id_from_string(detail::get_string(j, "rule"));
  if (!rule) throw FormatError("unknown rule id");
  f.rule = *rule;
  f.target = identity_from_json(detail::require(j, "target"));
  f.message = detail::get_string(j, "message");
  if (f.message.empty()) throw FormatError("finding message must be non-empty");
  return f;
}

// --- FactRecord ------------------------------------------------------------

inline Json to_json(const FactRecord& r) {
  Json j = Json::object();
  j["type"] = to_string(r.type);
  if (r.identity) j["identity"] = r.identity->str();
  if (r.span) {
    Json s = Json::object();
    if (r.span->start) s["start"] = *r.span->start;
    if (r.span->end) s["end"] = *r.span->end;
    if (r.span->line) s["line"] = *r.span->line;
    if (r.span->col) s["col"] = *r.span->col;
    j["span"] = s;
  }
  if (r.timestamp) j["timestamp"] = format_timestamp(*r.timestamp);
  auto put = [&](const char* key, const std::string& v) {
    if (!v.empty()) j[key] = v;
  };
  put("author", r.author);
  put("avatar", r.avatar);
  put("previous", r.previous);
  put("rule", r.rule);
  put("severity", r.severity);
  put("message", r.message);
  if (r.status) j["status"] = to_string(*r.status);
  return j;
}

class UnknownFactType : public FormatError {
 public:
  using FormatError::FormatError;
};

inline FactRecord fact_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("record must be an object");
  FactRecord r;
  std::string type = detail::get_string(j, "type");
  auto t = fact_type_from_string(type);
  if (!t) throw UnknownFactType("unknown type '" + type + "'");
  r.type = *t;
  if (j.contains("identity")) r.identity = identity_from_json(j.at("identity"));
  if (j.contains("span")) {
    const Json& s = j.at("span");
    if (!s.is_object()) throw FormatError("span must be an object");
    FactSpan fs;
    if (s.contains("start") || s.contains("end")) {
      fs.start = detail::get_number<std::size_t>(s, "start");
      fs.end = detail::get_number<std::size_t>(s, "end");
      if (*fs.end <= *fs.start) throw FormatError("span end must exceed start");
    }
    if (s.contains("line") || s.contains("col")) {
      fs.line = detail::get_number<int>(s, "line");
      fs.col = detail::get_number<int>(s, "col");
      if (*fs.line < 1 || *fs.col < 1) throw FormatError("span line/col are 1-based");
    }
    if (!fs.start && !fs.line) throw FormatError("span needs start/end or line/col");
    r.span = fs;
  }
  if (!r.identity && !r.span) throw FormatError("record needs an identity or a span");
  if (j.contains("timestamp")) {
    std::string ts = detail::get_string(j, "timestamp");
    auto parsed = parse_timestamp(ts);
    if (!parsed) throw FormatError("unparseable timestamp '" + ts + "'");
    r.timestamp = *parsed;
  }
  r.author = detail::opt_string(j, "author");
  r.avatar = detail::opt_string(j, "avatar");
  r.previous = detail::opt_string(j, "previous");
  r.rule = detail::opt_string(j, "rule");
  r.severity = detail::opt_string(j, "severity");
  r.message = detail::opt_string(j, "message");
  if (j.contains("status")) {
    std::string s = detail::get_string(j, "status");
    auto st = change_status_from_string(s);
    if (!st) throw FormatError("unknown status '" + s + "'");
    r.status = *st;
  }
  if (r.type == FactType::change_status && !r.status) throw FormatError("change-status needs a status");
  if ((r.type == FactType::renamed || r.type == FactType::method_added || r.type == FactType::method_changed) &&
      !r.timestamp)
    throw FormatError(std::string(to_string(r.type)) + " needs a timestamp");
  return r;
}

// --- RenderPlan (decoration stream) ----------------------------------------

inline constexpr int kStreamVersion = 1;

inline Json to_json(const RenderPlan& plan) {
  Json decorations = Json::array();
  int id = 1;
  for (const auto& d : plan.decorations) {
    Json rec = Json::object();
    rec["id"] = id++;
    const Json fields = to_json(d);
    for (auto& [k, v] : fields.items()) rec[k] = v;
    decorations.push_back(std::move(rec));
  }
  return Json{{"version", kStreamVersion},
              {"file", plan.file},
              {"sourceHash", plan.source_hash},
              {"decorations", std::move(decorations)}};
}

inline RenderPlan render_plan_from_json(const Json& j) {
  if (detail::get_number<int>(j, "version") != kStreamVersion) throw FormatError("unsupported stream version");
  RenderPlan plan;
  plan.file = detail::get_string(j, "file");
  plan.source_hash = detail::get_string(j, "sourceHash");
  const Json& arr = detail::require(j, "decorations");
  if (!arr.is_array()) throw FormatError("decorations must be an array");
  for (const auto& d : arr) plan.decorations.push_back(decoration_from_json(d));
  return plan;
}

// Canonical text: two-space indentation, trailing newline.
inline std::string canonical_text(const Json& j) { return j.dump(2, ' ', false) + "\n"; }

}  // namespace impid

#endif  // IMPID_SERIALIZE_HPP
