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

#ifndef IMPID_TESTS_PROPERTIES_HPP
#define IMPID_TESTS_PROPERTIES_HPP

#include <chrono>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "impid/impid.hpp"
#include "java_gen.hpp"
#include "random_model.hpp"

// Randomized property suites. Each case returns an empty optional on
// success or a description of the first violation it found.

namespace impid_test {

struct PropertyResult {
  std::string name;
  int cases = 0;
  int violations = 0;
  std::string first_failure;
  double seconds = 0;

  bool ok() const { return violations == 0 && cases > 0; }
};

using CaseFn = std::function<std::optional<std::string>(Rng&, int)>;

inline PropertyResult run_property(const std::string& name, int cases, std::uint64_t seed, const CaseFn& fn) {
  PropertyResult r{name, 0, 0, "", 0};
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < cases; ++i) {
    Rng rng(seed * 1000003ULL + static_cast<std::uint64_t>(i));
    std::optional<std::string> failure;
    try {
      failure = fn(rng, i);
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    ++r.cases;
    if (failure) {
      if (r.violations == 0) r.first_failure = "case " + std::to_string(i) + ": " + *failure;
      ++r.violations;
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

namespace detail {

inline GeneratedUnit generated(Rng& rng) {
  GenOptions opt;
  opt.noise = coin(rng, 0.8);
  return JavaGenerator(rng(), opt).generate();
}

inline const impid::Timestamp kReference = *impid::parse_timestamp("2024-03-10T12:00:00Z");

// A unit, a profile and the decorations the pipeline derives from them,
// plus some free-standing glyphs in random categories.
struct PipelineCase {
  impid::ParsedUnit unit;
  impid::Profile profile;
  impid::FactsInput facts;
  std::vector<impid::Decoration> decorations;
};

inline PipelineCase pipeline_case(Rng& rng) {
  PipelineCase c;
  c.unit = impid::extract_occurrences(generated(rng).source);
  c.profile = random_profile(rng, &c.unit);
  c.facts.records = random_facts_for(rng, c.unit, kReference);
  c.facts.recency = {std::chrono::hours(24 * 14), kReference};
  c.decorations = impid::all_decorations(c.unit, c.profile, c.facts);
  const int extra = c.unit.occurrences.empty() ? 0 : uniform(rng, 0, 6);
  for (int i = 0; i < extra; ++i) {
    const auto& occ = choose(rng, c.unit.occurrences);
    impid::Decoration d;
    d.target = occ.span;
    d.identity = occ.identity;
    d.kind = coin(rng) ? impid::DecorationKind::suffix_glyph
                       : (coin(rng) ? impid::DecorationKind::prefix_glyph : impid::DecorationKind::inline_hint);
    d.text = d.kind == impid::DecorationKind::inline_hint ? random_word(rng) + ":" : random_glyph(rng).utf8();
    d.category = random_category(rng);
    d.priority = 1;
    d.description = "extra " + random_word(rng);
    c.decorations.push_back(d);
  }
  return c;
}

inline bool plan_includes(const impid::RenderPlan& big, const impid::RenderPlan& small) {
  return std::includes(big.decorations.begin(), big.decorations.end(), small.decorations.begin(),
                       small.decorations.end(), impid::decoration_less);
}

// Codepoint columns counted here, independently of the engine.
inline std::pair<int, int> count_line_col(const std::string& s, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (c == '\n') {
      ++line;
      col = 1;
    } else if (c < 0x80 || c >= 0xC0) {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

// ---- java-subset-parser ------------------------------------------------------

inline PropertyResult prop_lossless_tokenization(int cases, std::uint64_t seed = 1) {
  return run_property("lossless-tokenization", cases, seed, [](Rng& rng, int) -> std::optional<std::string> {
    const std::string src = detail::generated(rng).source;
    auto tokens = impid::tokenize(src);
    std::string joined;
    std::size_t expected_start = 0;
    for (const auto& t : tokens) {
      if (t.span.start != expected_start) return "gap before token at " + std::to_string(t.span.start);
      if (src.compare(t.span.start, t.span.size(), t.text) != 0) return "token text differs from source at " + std::to_string(t.span.start);
      expected_start = t.span.end;
      joined += t.text;
    }
    if (joined != src) return std::string("concatenated tokens differ from input");
    return std::nullopt;
  });
}

inline PropertyResult prop_span_soundness(int cases, std::uint64_t seed = 2) {
  return run_property("span-soundness", cases, seed, [](Rng& rng, int) -> std::optional<std::string> {
    const std::string src = detail::generated(rng).source;
    auto unit = impid::extract_occurrences(src);
    std::size_t last_end = 0;
    for (const auto& o : unit.occurrences) {
      if (o.span.end > src.size() || o.span.start >= o.span.end) return "span out of bounds for " + o.name;
      if (src.substr(o.span.start, o.span.size()) != o.name) return "source[span] != name for " + o.name;
      if (o.span.start < last_end) return "overlapping spans at " + std::to_string(o.span.start);
      last_end = o.span.end;
      auto [line, col] = detail::count_line_col(src, o.span.start);
      if (o.span.line != line || o.span.col != col) return "line/col mismatch for " + o.name;
    }
    return std::nullopt;
  });
}

inline PropertyResult prop_scope_resolution(int cases, std::uint64_t seed = 3) {
  return run_property("scope-resolution-oracle", cases, seed, [](Rng& rng, int) -> std::optional<std::string> {
    GeneratedUnit g = detail::generated(rng);
    auto unit = impid::extract_occurrences(g.source);
    if (unit.occurrences.size() != g.expected.size())
      return "occurrence count " + std::to_string(unit.occurrences.size()) + " vs oracle " +
             std::to_string(g.expected.size());
    for (std::size_t i = 0; i < g.expected.size(); ++i) {
      const auto& got = unit.occurrences[i];
      const auto& want = g.expected[i];
      if (got.span.start != want.start || got.name != want.name || got.identity.str() != want.identity ||
          (got.role == impid::Role::declaration) != want.declaration)
        return "at " + std::to_string(want.start) + " '" + want.name + "': got " + got.identity.str() + ", oracle " +
               want.identity;
    }
    return std::nullopt;
  });
}

// ---- transform-rules ---------------------------------------------------------

inline PropertyResult prop_convention_roundtrip(int cases, std::uint64_t seed = 4) {
  return run_property("convention-roundtrip", cases, seed, [](Rng& rng, int) -> std::optional<std::string> {
    const std::string name = random_camel_name(rng);
    const std::string snake = impid::convert_convention(name, impid::Convention::snake_case);
    const std::string back = impid::convert_convention(snake, impid::Convention::camel_case);
    if (back != name) return name + " -> " + snake + " -> " + back;
    return std::nullopt;
  });
}

// ---- alias-profiles ----------------------------------------------------------

inline PropertyResult prop_alias_consistency(int cases, std::uint64_t seed = 5) {
  return run_property("alias-consistency", cases, seed, [](Rng& rng, int) -> std::optional<std::string> {
    auto c = detail::pipeline_case(rng);
    auto plan = impid::compose(c.unit.source, "Gen.java", c.decorations, c.profile);
    // read back through the stream, the form editors consume
    plan = impid::render_plan_from_json(impid::Json::parse(impid::emit_stream(plan)));
    std::map<std::size_t, std::string> replaced;
    for (const auto& d : plan.decorations)
      if (d.kind == impid::DecorationKind::replace_name) replaced[d.target.start] = d.text;
    const bool alias_on = c.profile.category(impid::category::alias).enabled;
    std::map<impid::IdentityKey, std::string> shown;
    for (const auto& o : c.unit.occurrences) {
      auto it = replaced.find(o.span.start);
      const std::string display = it == replaced.end() ? o.name : it->second;
      auto [prev, fresh] = shown.emplace(o.identity, display);
      if (!fresh && prev->second != display)
        return o.identity.str() + " shown as both '" + prev->second + "' and '" + display + "'";
      auto alias = c.profile.aliases.find(o.identity);
      if (alias_on && alias != c.profile.aliases.end() && display != alias->second)
        return o.identity.str() + " aliased to '" + alias->second + "' but shown as '" + display + "'";
    }
    return std::nullopt;
  });
}

namespace detail {

// Identities visible in one scope, computed from byte extents: a
// declaration is visible in every scope nested inside the extent of its
// home scope. Externals are visible everywhere.
struct Visible {
  std::string identity;
  std::string name;
  int ns;     // 0 variable, 1 method, 2 type
  int arity;  // in-unit methods only
};

inline int ns_of(impid::EntityKind k) {
  if (k == impid::EntityKind::method) return 1;
  if (impid::is_type_kind(k)) return 2;
  return 0;
}

inline std::vector<std::vector<Visible>> visible_sets(const impid::ParsedUnit& unit) {
  const auto& scopes = unit.table.scopes;
  std::vector<Visible> externals;
  std::set<std::string> seen;
  for (const auto& o : unit.occurrences)
    if (o.identity.is_external() && seen.insert(o.identity.str()).second)
      externals.push_back({o.identity.str(), o.name, ns_of(o.kind), -1});
  std::vector<std::vector<Visible>> out(scopes.size());
  for (std::size_t s = 0; s < scopes.size(); ++s) {
    out[s] = externals;
    for (const auto& d : unit.table.declarations) {
      const auto& home = scopes[static_cast<std::size_t>(d.scope)];
      const auto& here = scopes[s];
      bool inside = d.scope == 0 || static_cast<int>(s) == d.scope;
      if (!inside && home.begin <= here.begin && here.end <= home.end) {
        // equal extents: scopes are created parent first
        const bool same_extent = home.begin == here.begin && home.end == here.end;
        inside = !same_extent || static_cast<int>(s) > d.scope;
      }
      if (!inside) continue;
      const int arity = d.occurrence.kind == impid::EntityKind::method ? static_cast<int>(d.facts.parameters.size()) : -1;
      out[s].push_back({d.identity.str(), d.occurrence.name, ns_of(d.occurrence.kind), arity});
    }
  }
  return out;
}

inline bool can_collide(const Visible& a, const Visible& b) {
  if (a.identity == b.identity || a.ns != b.ns) return false;
  return !(a.ns == 1 && a.arity >= 0 && b.arity >= 0 && a.arity != b.arity);
}

inline std::string shown(const Visible& v, const std::map<std::string, std::string>& aliases) {
  auto it = aliases.find(v.identity);
  return it == aliases.end() ? v.name : it->second;
}

// First pair involving `target` that displays identically in a shared scope.
inline std::optional<std::string> oracle_conflict(const std::vector<std::vector<Visible>>& sets,
                                                  const std::map<std::string, std::string>& aliases,
                                                  const std::string& target) {
  for (const auto& set : sets) {
    const Visible* self = nullptr;
    for (const auto& v : set)
      if (v.identity == target) self = &v;
    if (!self) continue;
    for (const auto& v : set)
      if (can_collide(*self, v) && shown(*self, aliases) == shown(v, aliases)) return v.identity;
  }
  return std::nullopt;
}

}  // namespace detail

inline PropertyResult prop_alias_injectivity(int cases, std::uint64_t seed = 6) {
  return run_property("alias-injectivity", cases, seed, [](Rng& rng, int) -> std::optional<std::string> {
    auto unit = impid::extract_occurrences(detail::generated(rng).source);
    auto sets = detail::visible_sets(unit);
    std::vector<impid::IdentityKey> ids;
    std::vector<std::string> names = {"a", "b", "c", "run", "add", "C0", "count", "total", "x", "class", "9lives"};
    for (const auto& o : unit.occurrences) {
      ids.push_back(o.identity);
      names.push_back(o.name);
    }
    impid::Profile profile;
    std::map<std::string, std::string> aliases;  // oracle copy
    const int attempts = uniform(rng, 1, 12);
    for (int i = 0; i < attempts; ++i) {
      const auto id = choose(rng, ids);
      const std::string display = coin(rng, 0.8) ? choose(rng, names) : random_display_name(rng);
      auto trial = aliases;
      trial[id.str()] = display;
      const bool valid = impid::is_identifier_text(display) && !impid::is_java_keyword(display);
      auto conflict = valid ? detail::oracle_conflict(sets, trial, id.str()) : std::nullopt;
      try {
        profile = impid::set_alias(profile, id, display, unit);
        if (!valid) return "accepted invalid display '" + display + "'";
        if (conflict) return "accepted " + id.str() + " -> " + display + " despite " + *conflict;
        aliases = trial;
      } catch (const impid::AliasConflict& e) {
        if (!conflict) return "rejected " + id.str() + " -> " + display + " without a real conflict (" + e.what() + ")";
      } catch (const impid::InvalidAlias&) {
        if (valid) return "rejected valid display '" + display + "'";
      }
    }
    // no aliased identity shares its display with anything in any scope
    for (const auto& [id, display] : aliases)
      if (auto c = detail::oracle_conflict(sets, aliases, id)) return "final state: " + id + " collides with " + *c;
    if (profile.aliases.size() != aliases.size()) return std::string("profile and oracle disagree on alias count");
    return std::nullopt;
  });
}

inline PropertyResult prop_profile_roundtrip(int cases, std::uint64_t seed = 7) {
  return run_property("profile-roundtrip", cases, seed, [](Rng& rng, int) -> std::optional<std::string> {
    const impid::Profile p = random_profile(rng, nullptr);
    const std::string text = impid::save_profile(p);
    const impid::Profile back = impid::load_profile(text);
    if (!(back == p)) return "load(save(p)) != p for\n" + text;
    if (impid::save_profile(back) != text) return "save is not byte-stable for\n" + text;
    return std::nullopt;
  });
}

// ---- render-compose ----------------------------------------------------------

inline PropertyResult prop_slider_monotonicity(int cases, std::uint64_t seed = 8) {
  return run_property("slider-monotonicity", cases, seed, [](Rng& rng, int) -> std::optional<std::string> {
    auto c = detail::pipeline_case(rng);
    std::optional<impid::RenderPlan> previous;
    for (int level = 0; level <= 6; ++level) {
      impid::Profile p = c.profile;
      p.slider = level;
      auto plan = impid::compose(c.unit.source, "Gen.java", c.decorations, p);
      if (level == 0)
        for (const auto& d : plan.decorations)
          if (d.kind != impid::DecorationKind::replace_name) return std::string("slider 0 kept a glyph or hint");
      if (previous && !detail::plan_includes(plan, *previous))
        return "level " + std::to_string(level) + " lost decorations visible at " + std::to_string(level - 1);
      previous = plan;
    }
    return std::nullopt;
  });
}

inline PropertyResult prop_category_exactness(int cases, std::uint64_t seed = 9) {
  return run_property("category-exactness", cases, seed, [](Rng& rng, int) -> std::optional<std::string> {
    auto c = detail::pipeline_case(rng);
    const std::string cat = random_category(rng);
    impid::Profile on = c.profile;
    on.categories[cat] = {true, on.category(cat).priority};
    impid::Profile off = on;
    off.categories[cat].enabled = false;
    auto with = impid::compose(c.unit.source, "Gen.java", c.decorations, on);
    auto without = impid::compose(c.unit.source, "Gen.java", c.decorations, off);
    std::vector<impid::Decoration> expected;
    for (const auto& d : with.decorations)
      if (d.category != cat) expected.push_back(d);
    if (expected != without.decorations) return "disabling " + cat + " changed other categories";
    return std::nullopt;
  });
}

inline PropertyResult prop_renderer_determinism(int cases, std::uint64_t seed = 10) {
  return run_property("renderer-determinism", cases, seed, [](Rng& rng, int) -> std::optional<std::string> {
    auto c = detail::pipeline_case(rng);
    auto plan = impid::compose(c.unit.source, "Gen.java", c.decorations, c.profile);
    // a fresh parse of the same bytes must give the same plan
    auto again = impid::plan_unit(impid::extract_occurrences(c.unit.source), "Gen.java", c.profile, c.facts);
    auto base = impid::plan_unit(c.unit, "Gen.java", c.profile, c.facts);
    if (!(again == base)) return std::string("re-parse changed the plan");
    for (auto f : {impid::Format::ansi, impid::Format::html, impid::Format::json}) {
      if (impid::render_plan(c.unit.source, plan, f) != impid::render_plan(c.unit.source, plan, f))
        return std::string("renderer output differs between runs");
    }
    return std::nullopt;
  });
}

inline PropertyResult prop_source_recoverability(int cases, std::uint64_t seed = 11) {
  return run_property("source-recoverability", cases, seed, [](Rng& rng, int) -> std::optional<std::string> {
    auto c = detail::pipeline_case(rng);
    const std::string& src = c.unit.source;
    auto plan = impid::compose(src, "Gen.java", c.decorations, c.profile);
    if (impid::recover_from_ansi(impid::render_ansi(src, plan), plan) != src) return std::string("ANSI rendering lost bytes");
    if (impid::recover_from_html(impid::render_html(src, plan)) != src) return std::string("HTML rendering lost bytes");
    auto streamed = impid::render_plan_from_json(impid::Json::parse(impid::emit_stream(plan)));
    if (impid::reverse_replacements(impid::apply_replacements(src, streamed), streamed) != src)
      return std::string("stream edits are not reversible");
    return std::nullopt;
  });
}

// ---- core-model and facts ----------------------------------------------------

inline PropertyResult prop_model_serialization(int cases, std::uint64_t seed = 12) {
  return run_property("model-serialization", cases, seed, [](Rng& rng, int) -> std::optional<std::string> {
    using impid::Json;
    auto check = [](const auto& value, auto parse, const char* what) -> std::optional<std::string> {
      const std::string text = impid::canonical_text(impid::to_json(value));
      auto back = parse(Json::parse(text));
      if (!(back == value)) return std::string(what) + " changed in round trip: " + text;
      if (impid::canonical_text(impid::to_json(back)) != text) return std::string(what) + " text not stable";
      return std::nullopt;
    };
    if (auto f = check(random_occurrence(rng), impid::occurrence_from_json, "occurrence")) return f;
    if (auto f = check(random_context_facts(rng), impid::context_facts_from_json, "context facts")) return f;
    if (auto f = check(random_decoration(rng), impid::decoration_from_json, "decoration")) return f;
    if (auto f = check(random_finding(rng), impid::finding_from_json, "finding")) return f;
    if (auto f = check(random_fact(rng), impid::fact_from_json, "fact record")) return f;
    if (auto f = check(random_plan(rng), impid::render_plan_from_json, "render plan")) return f;
    const impid::IdentityKey key = random_identity(rng);
    if (!key.valid()) return "generated key does not parse: " + key.str();
    if (impid::identity_from_json(impid::to_json(key)) != key) return "identity changed: " + key.str();
    return std::nullopt;
  });
}

inline PropertyResult prop_window_monotonicity(int cases, std::uint64_t seed = 13) {
  return run_property("window-monotonicity", cases, seed, [](Rng& rng, int) -> std::optional<std::string> {
    auto unit = impid::extract_occurrences(detail::generated(rng).source);
    auto facts = random_facts_for(rng, unit, detail::kReference);
    const auto glyphs = impid::default_glyph_map();
    const auto small = std::chrono::hours(uniform(rng, 1, 24 * 20));
    const auto large = small + std::chrono::hours(uniform(rng, 0, 24 * 30));
    auto history = [&](std::chrono::seconds window) {
      std::vector<impid::Decoration> out;
      for (auto& d : impid::facts_decorations(facts, unit, {window, detail::kReference}, glyphs))
        if (d.category == impid::category::history) out.push_back(d);
      std::sort(out.begin(), out.end(), impid::decoration_less);
      return out;
    };
    auto a = history(small);
    auto b = history(large);
    if (!std::includes(b.begin(), b.end(), a.begin(), a.end(), impid::decoration_less))
      return std::string("a larger window dropped a history decoration");
    return std::nullopt;
  });
}

// All suites, in reporting order.
inline std::vector<PropertyResult> run_all_properties(int cases) {
  return {prop_lossless_tokenization(cases), prop_span_soundness(cases),     prop_scope_resolution(cases),
          prop_convention_roundtrip(cases),  prop_alias_consistency(cases),  prop_alias_injectivity(cases),
          prop_slider_monotonicity(cases),   prop_category_exactness(cases), prop_renderer_determinism(cases),
          prop_source_recoverability(cases), prop_profile_roundtrip(cases),  prop_model_serialization(cases),
          prop_window_monotonicity(cases)};
}

}  // namespace impid_test

#endif  // IMPID_TESTS_PROPERTIES_HPP
