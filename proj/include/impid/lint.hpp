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

// Naming antipattern detection and glyph decorations for declaration facts:
// modifiers, annotations, project rules and API open/close pairings.

#ifndef IMPID_LINT_HPP
#define IMPID_LINT_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "impid/glyphs.hpp"
#include "impid/model.hpp"
#include "impid/parser.hpp"
#include "impid/transforms.hpp"

namespace impid {

struct AnnotationRule {
  std::string annotation;  // simple name or *
  std::string argument;    // word inside the argument text, or *
  std::string glyph;
  std::string description;
  friend bool operator==(const AnnotationRule&, const AnnotationRule&) = default;
};

enum class ProjectPredicate { field_of_type, class_implements, method_annotated };

inline std::string_view to_string(ProjectPredicate p) {
  switch (p) {
    case ProjectPredicate::field_of_type: return "field-of-type";
    case ProjectPredicate::class_implements: return "class-implements";
    case ProjectPredicate::method_annotated: return "method-annotated";
  }
  return "?";
}

inline std::optional<ProjectPredicate> project_predicate_from_string(std::string_view s) {
  for (auto p : {ProjectPredicate::field_of_type, ProjectPredicate::class_implements,
                 ProjectPredicate::method_annotated})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

struct ProjectRule {
  ProjectPredicate predicate = ProjectPredicate::field_of_type;
  std::string name;  // type, interface or annotation name, or *
  std::string glyph;
  std::string description;
  friend bool operator==(const ProjectRule&, const ProjectRule&) = default;
};

struct PairingRule {
  std::string open;   // initializer token pattern, e.g. "new PrintWriter"
  std::string close;  // member name called on the variable
  std::string open_glyph;
  std::string close_glyph;
  friend bool operator==(const PairingRule&, const PairingRule&) = default;
};

inline constexpr std::string_view kAsyncSuffix = "async-suffix";

struct GlyphRuleSet {
  // Modifier name (or async-suffix) -> glyph key.
  std::map<std::string, std::string> modifiers;
  std::vector<AnnotationRule> annotations;
  std::vector<ProjectRule> project;
  std::vector<PairingRule> pairings;
  std::vector<std::string> plural_exceptions;
  std::vector<std::string> loop_indices;

  static GlyphRuleSet defaults() {
    GlyphRuleSet r;
    r.modifiers = {{"public", "modifier.public"},
                   {"private", "modifier.private"},
                   {"final", "modifier.final"},
                   {"synchronized", "modifier.synchronized"},
                   {std::string(kAsyncSuffix), "modifier.async"}};
    r.annotations = {
        {"TransactionAttribute", "REQUIRES_NEW", "annotation.requires-new", "transaction attribute REQUIRES_NEW"},
        {"TransactionAttribute", "REQUIRES", "annotation.requires", "transaction attribute REQUIRES"},
        {"TransactionAttribute", "NOT_SUPPORTED", "annotation.not-supported", "transaction attribute NOT_SUPPORTED"},
    };
    r.project = {{ProjectPredicate::class_implements, "Serializable", "project.persistent", "persistent entity"}};
    r.pairings = {{"new PrintWriter", "close", "api.open", "api.close"}};
    r.plural_exceptions = {"status", "class", "address", "bus", "alias"};
    r.loop_indices = {"i", "j", "k"};
    return r;
  }

  friend bool operator==(const GlyphRuleSet&, const GlyphRuleSet&) = default;
};

// ---------------------------------------------------------------------------
// Naming findings
// ---------------------------------------------------------------------------

namespace finding_message {
inline constexpr std::string_view singular_holds_many = "says one but contains many";
inline constexpr std::string_view plural_holds_one = "says many but contains one";
inline constexpr std::string_view single_letter = "single-letter name";
inline constexpr std::string_view getter_no_return = "getter does not return";
}  // namespace finding_message

// Plural when the last word ends in s and is not an exception word.
inline bool looks_plural(std::string_view name, const std::vector<std::string>& exceptions) {
  auto words = split_words(name);
  if (words.empty() || name.size() < 2) return false;
  std::string last = detail::lowercase(words.back());
  if (last.size() < 2 || last.back() != 's') return false;
  return std::find(exceptions.begin(), exceptions.end(), last) == exceptions.end();
}

inline std::vector<Finding> detect_naming_issues(const Occurrence& decl, const ContextFacts& facts,
                                                 const GlyphRuleSet& rules) {
  std::vector<Finding> out;
  auto emit = [&](RuleId rule, std::string_view message) {
    out.push_back({rule, decl.identity, std::string(message)});
  };
  const std::string& name = decl.name;
  if (is_variable_kind(decl.kind) && !facts.declared_type.empty() && facts.declared_type.text != "var") {
    const bool plural = looks_plural(name, rules.plural_exceptions);
    if (facts.declared_type.container && !plural)
      emit(RuleId::singular_holds_many, finding_message::singular_holds_many);
    else if (!facts.declared_type.container && plural)
      emit(RuleId::plural_holds_one, finding_message::plural_holds_one);
  }
  if (name.size() == 1) {
    const bool exempt = facts.loop_header &&
                        std::find(rules.loop_indices.begin(), rules.loop_indices.end(), name) != rules.loop_indices.end();
    if (!exempt) emit(RuleId::single_letter, finding_message::single_letter);
  }
  if (decl.kind == EntityKind::method && facts.return_type == "void" && name.size() > 3 &&
      name.compare(0, 3, "get") == 0 && detail::ascii_upper(name[3]))
    emit(RuleId::getter_no_return, finding_message::getter_no_return);
  return out;
}

inline std::string_view glyph_key_for(RuleId rule) {
  switch (rule) {
    case RuleId::singular_holds_many: return glyph_key::singular_holds_many;
    case RuleId::plural_holds_one: return glyph_key::plural_holds_one;
    case RuleId::single_letter: return glyph_key::single_letter;
    case RuleId::getter_no_return: return glyph_key::getter_no_return;
  }
  return {};
}

namespace detail {
inline Decoration glyph_decoration(const Span& span, const IdentityKey& identity, const Glyph& glyph,
                                   std::string_view cat, std::string description,
                                   DecorationKind kind = DecorationKind::suffix_glyph) {
  Decoration d;
  d.target = span;
  d.identity = identity;
  d.kind = kind;
  d.text = glyph.utf8();
  d.category = std::string(cat);
  d.priority = category::default_priority(cat);
  d.description = std::move(description);
  return d;
}
}  // namespace detail

// One suffix glyph per finding at the declaration span. Findings whose
// glyph key is missing from the map are dropped with a warning.
inline std::vector<Decoration> finding_decorations(const std::vector<Finding>& findings, const SymbolTable& table,
                                                   const GlyphMap& glyphs, std::vector<std::string>* warnings = nullptr) {
  std::vector<Decoration> out;
  for (const auto& f : findings) {
    const Declaration* decl = table.find(f.target);
    if (!decl) continue;
    const Glyph* glyph = find_glyph(glyphs, glyph_key_for(f.rule));
    if (!glyph) {
      if (warnings) warnings->push_back("no glyph for " + std::string(glyph_key_for(f.rule)));
      continue;
    }
    out.push_back(detail::glyph_decoration(decl->occurrence.span, f.target, *glyph, category::naming, f.message));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Modifiers and annotations (declaration facts shown at every occurrence)
// ---------------------------------------------------------------------------

inline std::vector<Decoration> modifier_decorations(const Occurrence& occ, const ContextFacts& facts,
                                                    const GlyphRuleSet& rules, const GlyphMap& glyphs) {
  std::vector<Decoration> out;
  for (Modifier m : kAllModifiers) {
    if (!facts.has(m)) continue;
    auto rule = rules.modifiers.find(std::string(to_string(m)));
    if (rule == rules.modifiers.end()) continue;
    if (const Glyph* g = find_glyph(glyphs, rule->second))
      out.push_back(detail::glyph_decoration(occ.span, occ.identity, *g, category::modifiers,
                                             "has the " + std::string(to_string(m)) + " modifier"));
  }
  auto async = rules.modifiers.find(std::string(kAsyncSuffix));
  if (async != rules.modifiers.end() && occ.kind == EntityKind::method && occ.name.size() > 5 &&
      occ.name.compare(occ.name.size() - 5, 5, "Async") == 0) {
    if (const Glyph* g = find_glyph(glyphs, async->second))
      out.push_back(detail::glyph_decoration(occ.span, occ.identity, *g, category::modifiers,
                                             "asynchronous by naming convention"));
  }
  return out;
}

// Substring match that does not split identifier words: REQUIRES does not
// match REQUIRES_NEW.
inline bool contains_word(std::string_view text, std::string_view word) {
  if (word.empty()) return false;
  for (std::size_t pos = text.find(word); pos != std::string_view::npos; pos = text.find(word, pos + 1)) {
    const bool left_ok = pos == 0 || !is_identifier_part(static_cast<unsigned char>(text[pos - 1]));
    const std::size_t after = pos + word.size();
    const bool right_ok = after == text.size() || !is_identifier_part(static_cast<unsigned char>(text[after]));
    if (left_ok && right_ok) return true;
  }
  return false;
}

inline bool annotation_matches(const AnnotationRule& rule, const Annotation& a) {
  if (rule.annotation != "*" && rule.annotation != a.simple_name() && rule.annotation != a.name) return false;
  return rule.argument == "*" || contains_word(a.arguments, rule.argument);
}

inline std::vector<Decoration> annotation_decorations(const Occurrence& occ, const ContextFacts& facts,
                                                      const GlyphRuleSet& rules, const GlyphMap& glyphs) {
  std::vector<Decoration> out;
  for (const auto& rule : rules.annotations) {
    auto it = std::find_if(facts.annotations.begin(), facts.annotations.end(),
                           [&](const Annotation& a) { return annotation_matches(rule, a); });
    if (it == facts.annotations.end()) continue;
    const Glyph* g = find_glyph(glyphs, rule.glyph);
    if (!g) continue;
    std::string description = rule.description;
    if (description.empty())
      description = "annotated @" + it->simple_name() + (it->arguments.empty() ? "" : "(" + it->arguments + ")");
    out.push_back(detail::glyph_decoration(occ.span, occ.identity, *g, category::annotations, description));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Project rules
// ---------------------------------------------------------------------------

inline std::vector<Decoration> project_rule_decorations(const ParsedUnit& unit, const GlyphRuleSet& rules,
                                                        const GlyphMap& glyphs) {
  std::vector<Decoration> out;
  auto matches = [](const std::string& pattern, const std::string& value) { return pattern == "*" || pattern == value; };
  for (const auto& rule : rules.project) {
    const Glyph* g = find_glyph(glyphs, rule.glyph);
    if (!g) continue;
    for (const auto& decl : unit.table.declarations) {
      const Occurrence& d = decl.occurrence;
      bool hit = false;
      bool at_usages = false;
      std::string description = rule.description;
      switch (rule.predicate) {
        case ProjectPredicate::field_of_type:
          hit = d.kind == EntityKind::field && matches(rule.name, decl.facts.declared_type.base_name());
          if (description.empty()) description = "field of type " + decl.facts.declared_type.base_name();
          break;
        case ProjectPredicate::class_implements:
          hit = is_type_kind(d.kind) && std::any_of(decl.facts.supertypes.begin(), decl.facts.supertypes.end(),
                                                    [&](const std::string& s) { return matches(rule.name, s); });
          at_usages = true;
          if (description.empty()) description = "implements " + rule.name;
          break;
        case ProjectPredicate::method_annotated:
          hit = d.kind == EntityKind::method &&
                std::any_of(decl.facts.annotations.begin(), decl.facts.annotations.end(),
                            [&](const Annotation& a) { return matches(rule.name, a.simple_name()); });
          at_usages = true;
          if (description.empty()) description = "annotated @" + rule.name;
          break;
      }
      if (!hit) continue;
      for (const auto& occ : unit.occurrences) {
        if (occ.identity != decl.identity) continue;
        if (occ.role == Role::usage && !at_usages) continue;
        out.push_back(detail::glyph_decoration(occ.span, occ.identity, *g, category::project, description));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// API usage pairings
// ---------------------------------------------------------------------------

namespace detail {
inline std::vector<std::string> whitespace_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline bool contains_sequence(const std::vector<std::string>& hay, const std::vector<std::string>& needle) {
  if (needle.empty()) return false;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}
}  // namespace detail

// Flow-insensitive: a variable initialized by the open pattern gets the open
// glyph at its declaration; calls of the close member on it get the close glyph.
inline std::vector<Decoration> api_usage_decorations(const ParsedUnit& unit, const std::vector<PairingRule>& pairings,
                                                     const GlyphMap& glyphs) {
  std::vector<Decoration> out;
  for (const auto& rule : pairings) {
    const Glyph* open = find_glyph(glyphs, rule.open_glyph);
    const Glyph* close = find_glyph(glyphs, rule.close_glyph);
    const auto pattern = detail::whitespace_tokens(rule.open);
    for (const auto& decl : unit.table.declarations) {
      if (!is_variable_kind(decl.occurrence.kind)) continue;
      if (!detail::contains_sequence(detail::whitespace_tokens(decl.facts.initializer), pattern)) continue;
      if (open)
        out.push_back(detail::glyph_decoration(decl.occurrence.span, decl.identity, *open, category::api_usage,
                                               "opened by " + rule.open + ", needs " + rule.close + "()"));
      if (!close) continue;
      for (const auto& call : unit.calls) {
        const Occurrence& occ = unit.occurrences[call.occurrence];
        if (call.receiver != decl.identity || occ.name != rule.close) continue;
        out.push_back(detail::glyph_decoration(occ.span, occ.identity, *close, category::api_usage,
                                               "closes " + decl.occurrence.name));
      }
    }
  }
  return out;
}

// All lint decorations for one parsed unit.
inline std::vector<Decoration> lint_decorations(const ParsedUnit& unit, const GlyphRuleSet& rules,
                                                const GlyphMap& glyphs, std::vector<std::string>* warnings = nullptr) {
  std::vector<Decoration> out;
  std::vector<Finding> findings;
  for (const auto& decl : unit.table.declarations) {
    auto f = detect_naming_issues(decl.occurrence, decl.facts, rules);
    findings.insert(findings.end(), f.begin(), f.end());
  }
  auto named = finding_decorations(findings, unit.table, glyphs, warnings);
  out.insert(out.end(), named.begin(), named.end());
  for (const auto& occ : unit.occurrences) {
    const Declaration* decl = unit.declaration_of(occ.identity);
    if (!decl) continue;
    auto m = modifier_decorations(occ, decl->facts, rules, glyphs);
    out.insert(out.end(), m.begin(), m.end());
    auto a = annotation_decorations(occ, decl->facts, rules, glyphs);
    out.insert(out.end(), a.begin(), a.end());
  }
  auto p = project_rule_decorations(unit, rules, glyphs);
  out.insert(out.end(), p.begin(), p.end());
  auto api = api_usage_decorations(unit, rules.pairings, glyphs);
  out.insert(out.end(), api.begin(), api.end());
  return out;
}

}  // namespace impid

#endif  // IMPID_LINT_HPP
