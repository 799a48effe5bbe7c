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

// Name profiles: personal aliases with display-name injectivity checks,
// display resolution, canonical persistence and merging.

#ifndef IMPID_PROFILES_HPP
#define IMPID_PROFILES_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "impid/glyphs.hpp"
#include "impid/lexer.hpp"
#include "impid/lint.hpp"
#include "impid/model.hpp"
#include "impid/parser.hpp"
#include "impid/serialize.hpp"
#include "impid/transforms.hpp"

namespace impid {

inline constexpr int kProfileVersion = 1;
inline constexpr int kDefaultSlider = 3;

struct CategorySetting {
  bool enabled = true;
  int priority = 1;
  friend bool operator==(const CategorySetting&, const CategorySetting&) = default;
};

struct Profile {
  std::string name = "default";
  std::map<IdentityKey, std::string> aliases;
  std::map<std::string, CategorySetting> categories;
  int slider = kDefaultSlider;
  GlyphMap glyphs;  // overrides of the default glyph map
  TransformConfig transform;
  GlyphRuleSet rules = GlyphRuleSet::defaults();
  Json extra = Json::object();  // unknown top-level fields, kept verbatim

  CategorySetting category(std::string_view id) const {
    auto it = categories.find(std::string(id));
    if (it != categories.end()) return it->second;
    return {true, category::default_priority(id)};
  }
  GlyphMap effective_glyphs() const { return effective_glyph_map(glyphs); }

  friend bool operator==(const Profile&, const Profile&) = default;
};

class InvalidAlias : public Error {
 public:
  using Error::Error;
};

struct AliasConflictInfo {
  std::string display;
  IdentityKey identity;     // identity whose alias was requested
  IdentityKey conflicting;  // other identity already displaying `display`
  std::string scope;        // description of the shared scope
  friend bool operator==(const AliasConflictInfo&, const AliasConflictInfo&) = default;
};

inline std::string describe(const AliasConflictInfo& c) {
  return "'" + c.display + "' for " + c.identity.str() + " collides with " + c.conflicting.str() + " in " + c.scope;
}

class AliasConflict : public Error {
 public:
  explicit AliasConflict(AliasConflictInfo info) : Error("alias conflict: " + describe(info)), info_(std::move(info)) {}
  const AliasConflictInfo& info() const { return info_; }

 private:
  AliasConflictInfo info_;
};

inline bool valid_display_name(std::string_view name) {
  return is_identifier_text(name) && !is_java_keyword(name);
}

// ---------------------------------------------------------------------------
// Display resolution
// ---------------------------------------------------------------------------

enum class Provenance { alias, expansion, accessor_strip, abbreviation, convention, original };

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::alias: return "alias";
    case Provenance::expansion: return "expansion";
    case Provenance::accessor_strip: return "accessor-strip";
    case Provenance::abbreviation: return "abbreviation";
    case Provenance::convention: return "convention";
    case Provenance::original: return "original";
  }
  return "?";
}

struct DisplayResolution {
  std::string display;
  Provenance provenance = Provenance::original;
  friend bool operator==(const DisplayResolution&, const DisplayResolution&) = default;
};

namespace detail {
inline bool all_caps(std::string_view name) {
  return name.size() > 1 && std::none_of(name.begin(), name.end(), [](char c) { return ascii_lower(c); });
}
}  // namespace detail

// First applicable step wins: alias, expansion, accessor-strip,
// abbreviation, convention. `facts` is null for external identities.
inline DisplayResolution resolve_display(const IdentityKey& identity, std::string_view original, EntityKind kind,
                                         const Profile& profile, const ContextFacts* facts) {
  const std::string name(original);
  if (auto it = profile.aliases.find(identity); it != profile.aliases.end()) return {it->second, Provenance::alias};
  const TransformConfig& t = profile.transform;
  if (t.expansion && kind == EntityKind::method && facts && facts->return_type) {
    std::string e = expand_method_name(name, facts->parameters);
    if (e != name) return {e, Provenance::expansion};
  }
  if (t.strip_accessor_prefixes && kind == EntityKind::method) {
    std::string s = strip_accessor_prefix(name);
    if (s != name) return {s, Provenance::accessor_strip};
  }
  if (t.abbreviation != AbbreviationStrategy::none) {
    auto a = abbreviate(name, t.abbreviation, t.abbreviation_min_length, t.word_abbreviations);
    if (a.shortened) return {a.display, Provenance::abbreviation};
  }
  if (t.convention != Convention::none && (is_variable_kind(kind) || kind == EntityKind::method) &&
      !detail::all_caps(name)) {
    std::string c = convert_convention(name, t.convention);
    if (c != name) return {c, Provenance::convention};
  }
  return {name, Provenance::original};
}

// ---------------------------------------------------------------------------
// Visibility model for injectivity
// ---------------------------------------------------------------------------

// One identity of a unit with the scope it is declared in. External
// identities live in the unit scope.
struct VisibleIdentity {
  IdentityKey identity;
  std::string original;
  EntityKind kind = EntityKind::local;
  int scope = 0;
  int arity = -1;  // methods declared in the unit
  const ContextFacts* facts = nullptr;
};

inline std::vector<VisibleIdentity> visible_identities(const ParsedUnit& unit) {
  std::vector<VisibleIdentity> out;
  for (const auto& d : unit.table.declarations) {
    VisibleIdentity v{d.identity, d.occurrence.name, d.occurrence.kind, d.scope, -1, &d.facts};
    if (d.occurrence.kind == EntityKind::method) v.arity = static_cast<int>(d.facts.parameters.size());
    out.push_back(v);
  }
  std::map<IdentityKey, bool> seen;
  for (const auto& o : unit.occurrences) {
    if (!o.identity.is_external() || seen[o.identity]) continue;
    seen[o.identity] = true;
    out.push_back({o.identity, o.name, o.kind, 0, -1, nullptr});
  }
  return out;
}

namespace detail {

enum class Namespace { variable, method, type };

inline Namespace namespace_of(EntityKind k) {
  if (k == EntityKind::method) return Namespace::method;
  if (is_type_kind(k)) return Namespace::type;
  return Namespace::variable;
}

inline bool may_collide(const SymbolTable& table, const VisibleIdentity& a, const VisibleIdentity& b) {
  if (a.identity == b.identity || namespace_of(a.kind) != namespace_of(b.kind)) return false;
  if (a.kind == EntityKind::method && a.arity >= 0 && b.arity >= 0 && a.arity != b.arity) return false;
  return table.is_ancestor_or_self(a.scope, b.scope) || table.is_ancestor_or_self(b.scope, a.scope);
}

inline std::string describe_scope(const SymbolTable& table, int scope) {
  const Scope& s = table.scopes[static_cast<std::size_t>(scope)];
  switch (s.kind) {
    case ScopeKind::unit: return table.package_name.empty() ? "compilation unit" : "package " + table.package_name;
    case ScopeKind::type:
    case ScopeKind::method:
      if (s.owner) return std::string(s.kind == ScopeKind::type ? "type " : "method ") +
                          table.declarations[*s.owner].identity.str();
      return "initializer " + s.member_name;
    case ScopeKind::block: break;
  }
  return "block in " + describe_scope(table, s.parent);
}

}  // namespace detail

inline std::string display_of(const VisibleIdentity& v, const Profile& profile) {
  return resolve_display(v.identity, v.original, v.kind, profile, v.facts).display;
}

// Conflicts that would arise from showing `identity` as `display`, given the
// rest of `profile`.
inline std::vector<AliasConflictInfo> alias_conflicts(const Profile& profile, const IdentityKey& identity,
                                                      const std::string& display, const ParsedUnit& unit) {
  std::vector<AliasConflictInfo> out;
  auto all = visible_identities(unit);
  auto self = std::find_if(all.begin(), all.end(), [&](const VisibleIdentity& v) { return v.identity == identity; });
  if (self == all.end()) return out;
  for (const auto& other : all) {
    if (!detail::may_collide(unit.table, *self, other)) continue;
    if (display_of(other, profile) != display) continue;
    int inner = unit.table.is_ancestor_or_self(self->scope, other.scope) ? other.scope : self->scope;
    out.push_back({display, identity, other.identity, detail::describe_scope(unit.table, inner)});
  }
  return out;
}

inline Profile set_alias(const Profile& profile, const IdentityKey& identity, const std::string& display,
                         const std::vector<const ParsedUnit*>& units) {
  if (!identity.valid()) throw InvalidAlias("invalid identity '" + identity.str() + "'");
  if (!valid_display_name(display)) throw InvalidAlias("invalid display name '" + display + "'");
  Profile candidate = profile;
  candidate.aliases[identity] = display;
  for (const ParsedUnit* unit : units) {
    auto conflicts = alias_conflicts(candidate, identity, display, *unit);
    if (!conflicts.empty()) throw AliasConflict(conflicts.front());
  }
  return candidate;
}

inline Profile set_alias(const Profile& profile, const IdentityKey& identity, const std::string& display,
                         const ParsedUnit& unit) {
  return set_alias(profile, identity, display, std::vector<const ParsedUnit*>{&unit});
}

inline Profile remove_alias(const Profile& profile, const IdentityKey& identity) {
  Profile out = profile;
  out.aliases.erase(identity);
  return out;
}

struct MergeResult {
  Profile profile;
  std::vector<AliasConflictInfo> conflicts;
};

// Base wins per identity and per category; shared fills the gaps. Shared
// aliases that would break injectivity are dropped and reported.
inline MergeResult merge_profiles(const Profile& base, const Profile& shared,
                                  const std::vector<const ParsedUnit*>& units) {
  MergeResult out{base, {}};
  for (const auto& [id, setting] : shared.categories) out.profile.categories.emplace(id, setting);
  for (const auto& [identity, display] : shared.aliases) {
    if (base.aliases.count(identity)) continue;
    try {
      out.profile = set_alias(out.profile, identity, display, units);
    } catch (const AliasConflict& c) {
      out.conflicts.push_back(c.info());
    } catch (const InvalidAlias&) {
      out.conflicts.push_back({display, identity, identity, "invalid display name"});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

class UnsupportedVersion : public Error {
 public:
  using Error::Error;
};

class ProfileParseError : public LocatedError {
 public:
  using LocatedError::LocatedError;
};

namespace detail {

inline Json transform_to_json(const TransformConfig& t) {
  Json words = Json::object();
  for (const auto& [w, a] : t.word_abbreviations) words[w] = a;
  return Json{{"convention", to_string(t.convention)},
              {"abbreviation", to_string(t.abbreviation)},
              {"abbreviationMinLength", t.abbreviation_min_length},
              {"stripAccessorPrefixes", t.strip_accessor_prefixes},
              {"expansion", t.expansion},
              {"parameterHints", t.parameter_hints},
              {"shortenedMarker", t.shortened_marker},
              {"wordAbbreviations", words}};
}

inline TransformConfig transform_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("transform must be an object");
  TransformConfig t;
  if (j.contains("convention")) {
    auto c = convention_from_string(get_string(j, "convention"));
    if (!c) throw FormatError("unknown convention");
    t.convention = *c;
  }
  if (j.contains("abbreviation")) {
    auto a = abbreviation_strategy_from_string(get_string(j, "abbreviation"));
    if (!a) throw FormatError("unknown abbreviation strategy");
    t.abbreviation = *a;
  }
  if (j.contains("abbreviationMinLength")) t.abbreviation_min_length = get_number<int>(j, "abbreviationMinLength");
  if (t.abbreviation_min_length < 1) throw FormatError("abbreviationMinLength must be at least 1");
  t.strip_accessor_prefixes = get_bool(j, "stripAccessorPrefixes", t.strip_accessor_prefixes);
  t.expansion = get_bool(j, "expansion", t.expansion);
  t.parameter_hints = get_bool(j, "parameterHints", t.parameter_hints);
  if (j.contains("shortenedMarker")) t.shortened_marker = get_string(j, "shortenedMarker");
  if (j.contains("wordAbbreviations")) {
    const Json& w = j.at("wordAbbreviations");
    if (!w.is_object()) throw FormatError("wordAbbreviations must be an object");
    t.word_abbreviations.clear();
    for (auto& [k, v] : w.items()) {
      if (!v.is_string()) throw FormatError("wordAbbreviations values must be strings");
      t.word_abbreviations[k] = v.get<std::string>();
    }
  }
  return t;
}

inline Json rules_to_json(const GlyphRuleSet& r) {
  Json mods = Json::object();
  for (const auto& [m, g] : r.modifiers) mods[m] = g;
  Json anns = Json::array();
  for (const auto& a : r.annotations)
    anns.push_back(Json{{"annotation", a.annotation}, {"argument", a.argument}, {"glyph", a.glyph}, {"description", a.description}});
  Json project = Json::array();
  for (const auto& p : r.project)
    project.push_back(Json{{"predicate", to_string(p.predicate)}, {"name", p.name}, {"glyph", p.glyph}, {"description", p.description}});
  Json pairings = Json::array();
  for (const auto& p : r.pairings)
    pairings.push_back(Json{{"open", p.open}, {"close", p.close}, {"openGlyph", p.open_glyph}, {"closeGlyph", p.close_glyph}});
  return Json{{"modifiers", mods},     {"annotations", anns},
              {"project", project},    {"pairings", pairings},
              {"pluralExceptions", r.plural_exceptions}, {"loopIndices", r.loop_indices}};
}

inline void check_pattern(const std::string& p) {
  if (p != "*" && !is_identifier_text(p)) throw FormatError("pattern '" + p + "' must be a name or *");
}

inline GlyphRuleSet rules_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("rules must be an object");
  GlyphRuleSet r = GlyphRuleSet::defaults();
  if (j.contains("modifiers")) {
    const Json& m = j.at("modifiers");
    if (!m.is_object()) throw FormatError("rules.modifiers must be an object");
    r.modifiers.clear();
    for (auto& [k, v] : m.items()) {
      if (k != kAsyncSuffix && !modifier_from_string(k)) throw FormatError("unknown modifier '" + k + "'");
      if (!v.is_string()) throw FormatError("rules.modifiers values must be glyph keys");
      r.modifiers[k] = v.get<std::string>();
    }
  }
  if (j.contains("annotations")) {
    r.annotations.clear();
    for (const auto& a : j.at("annotations")) {
      AnnotationRule rule{get_string(a, "annotation"), get_string(a, "argument"), get_string(a, "glyph"),
                          opt_string(a, "description")};
      check_pattern(rule.annotation);
      check_pattern(rule.argument);
      r.annotations.push_back(std::move(rule));
    }
  }
  if (j.contains("project")) {
    r.project.clear();
    for (const auto& p : j.at("project")) {
      auto pred = project_predicate_from_string(get_string(p, "predicate"));
      if (!pred) throw FormatError("unknown project predicate");
      ProjectRule rule{*pred, get_string(p, "name"), get_string(p, "glyph"), opt_string(p, "description")};
      check_pattern(rule.name);
      r.project.push_back(std::move(rule));
    }
  }
  if (j.contains("pairings")) {
    r.pairings.clear();
    for (const auto& p : j.at("pairings"))
      r.pairings.push_back({get_string(p, "open"), get_string(p, "close"), get_string(p, "openGlyph"),
                            get_string(p, "closeGlyph")});
  }
  if (j.contains("pluralExceptions")) r.plural_exceptions = string_list_from_json(j, "pluralExceptions");
  if (j.contains("loopIndices")) r.loop_indices = string_list_from_json(j, "loopIndices");
  return r;
}

inline const char* const kProfileFields[] = {"version", "name", "aliases", "categories", "slider",
                                             "glyphs",  "transform", "rules"};

inline bool is_profile_field(const std::string& key) {
  return std::any_of(std::begin(kProfileFields), std::end(kProfileFields), [&](const char* f) { return key == f; });
}

}  // namespace detail

// Fixed field order; sections equal to their defaults are omitted, so an
// empty profile is just version and name.
inline Json profile_to_json(const Profile& p) {
  Json j = Json::object();
  j["version"] = kProfileVersion;
  j["name"] = p.name;
  if (!p.aliases.empty()) {
    Json a = Json::object();
    for (const auto& [id, display] : p.aliases) a[id.str()] = display;
    j["aliases"] = a;
  }
  if (!p.categories.empty()) {
    Json c = Json::object();
    for (const auto& [id, s] : p.categories) c[id] = Json{{"enabled", s.enabled}, {"priority", s.priority}};
    j["categories"] = c;
  }
  if (p.slider != kDefaultSlider) j["slider"] = p.slider;
  if (!p.glyphs.empty()) {
    Json g = Json::object();
    for (const auto& [key, glyph] : p.glyphs) g[key] = glyph.notation();
    j["glyphs"] = g;
  }
  if (p.transform != TransformConfig{}) j["transform"] = detail::transform_to_json(p.transform);
  if (p.rules != GlyphRuleSet::defaults()) j["rules"] = detail::rules_to_json(p.rules);
  for (auto& [k, v] : p.extra.items()) j[k] = v;
  return j;
}

inline std::string save_profile(const Profile& p) { return canonical_text(profile_to_json(p)); }

inline Profile profile_from_json(const Json& j) {
  using namespace detail;
  if (!j.is_object()) throw FormatError("profile must be an object");
  if (!j.contains("version")) throw UnsupportedVersion("profile has no version");
  if (!j.at("version").is_number_integer() || j.at("version").get<long long>() != kProfileVersion)
    throw UnsupportedVersion("unsupported profile version " + j.at("version").dump());
  Profile p;
  p.name = j.contains("name") ? get_string(j, "name") : std::string("default");
  if (j.contains("aliases")) {
    const Json& a = j.at("aliases");
    if (!a.is_object()) throw FormatError("aliases must be an object");
    for (auto& [k, v] : a.items()) {
      IdentityKey key(k);
      if (!key.valid()) throw FormatError("invalid identity '" + k + "'");
      if (!v.is_string() || !valid_display_name(v.get<std::string>()))
        throw FormatError("invalid display name for '" + k + "'");
      p.aliases[key] = v.get<std::string>();
    }
  }
  if (j.contains("categories")) {
    const Json& c = j.at("categories");
    if (!c.is_object()) throw FormatError("categories must be an object");
    for (auto& [k, v] : c.items()) {
      CategorySetting s{true, category::default_priority(k)};
      s.enabled = get_bool(v, "enabled", true);
      if (v.contains("priority")) s.priority = get_number<int>(v, "priority");
      if (s.priority < 1) throw FormatError("category priority must be at least 1");
      p.categories[k] = s;
    }
  }
  if (j.contains("slider")) p.slider = get_number<int>(j, "slider");
  if (p.slider < 0) throw FormatError("slider must be non-negative");
  if (j.contains("glyphs")) {
    const Json& g = j.at("glyphs");
    if (!g.is_object()) throw FormatError("glyphs must be an object");
    for (auto& [k, v] : g.items()) {
      auto glyph = v.is_string() ? Glyph::parse(v.get<std::string>()) : std::nullopt;
      if (!glyph) throw FormatError("glyph '" + k + "' is not codepoint notation");
      p.glyphs[k] = *glyph;
    }
  }
  if (j.contains("transform")) p.transform = transform_from_json(j.at("transform"));
  if (j.contains("rules")) p.rules = rules_from_json(j.at("rules"));
  for (auto& [k, v] : j.items())
    if (!is_profile_field(k)) p.extra[k] = v;
  return p;
}

inline Profile load_profile(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, col] = line_col_at(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ProfileParseError("malformed profile", line, col);
  }
  return profile_from_json(j);
}

}  // namespace impid

#endif  // IMPID_PROFILES_HPP
