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

// The render pipeline shared by the command line and the HTTP service:
// parse, rules, facts, display resolution, composition and rendering.
// Also the small file helpers both hosts need.

#ifndef IMPID_PIPELINE_HPP
#define IMPID_PIPELINE_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "impid/compose.hpp"
#include "impid/facts.hpp"
#include "impid/lint.hpp"
#include "impid/model.hpp"
#include "impid/parser.hpp"
#include "impid/profiles.hpp"
#include "impid/render.hpp"
#include "impid/transforms.hpp"

namespace impid {

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

class FileNotFound : public Error {
 public:
  using Error::Error;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw FileNotFound("file not found: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound("file not found: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes through a sibling temporary file and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  auto tmp = path;
  tmp += ".tmp-" + std::to_string(rng());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot replace " + path.string());
  }
}

// .java files below root, as sorted generic relative paths. Unreadable
// entries are reported through `warnings`.
inline std::vector<std::string> list_java_files(const std::filesystem::path& root,
                                                std::vector<std::string>* warnings = nullptr) {
  namespace fs = std::filesystem;
  std::vector<std::string> out;
  std::error_code ec;
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) {
    if (warnings) warnings->push_back("cannot read " + root.string() + ": " + ec.message());
    return out;
  }
  for (fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
    if (ec) {
      if (warnings) warnings->push_back("skipped entry: " + ec.message());
      ec.clear();
      continue;
    }
    std::error_code type_ec;
    if (it->is_regular_file(type_ec) && it->path().extension() == ".java")
      out.push_back(fs::relative(it->path(), root, type_ec).generic_string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Loads facts from NDJSON, or from a VCS export when the name ends in .vcs.txt.
inline std::vector<FactRecord> load_facts_file(const std::filesystem::path& path, Timestamp now,
                                               std::vector<std::string>* diagnostics) {
  std::string text = read_file(path);
  const std::string name = path.filename().string();
  if (name.size() > 8 && name.compare(name.size() - 8, 8, ".vcs.txt") == 0) {
    auto parsed = derive_vcs_facts(text, now);
    if (diagnostics) diagnostics->insert(diagnostics->end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
    return parsed.records;
  }
  auto parsed = parse_facts(text);
  if (diagnostics) diagnostics->insert(diagnostics->end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
  return parsed.records;
}

// ---------------------------------------------------------------------------
// Decorations for one unit
// ---------------------------------------------------------------------------

inline std::string replace_description(Provenance p, const std::string& original, const IdentityKey& identity) {
  return std::string(to_string(p)) + " of " + original + " (" + identity.str() + ")";
}

// Replace-names from resolve_display, shortened markers and parameter hints.
inline std::vector<Decoration> display_decorations(const ParsedUnit& unit, const Profile& profile,
                                                   const GlyphMap& glyphs) {
  std::vector<Decoration> out;
  const Glyph* shortened = find_glyph(glyphs, profile.transform.shortened_marker);
  for (const auto& occ : unit.occurrences) {
    const Declaration* decl = unit.declaration_of(occ.identity);
    auto r = resolve_display(occ.identity, occ.name, occ.kind, profile, decl ? &decl->facts : nullptr);
    if (r.provenance == Provenance::original) continue;
    const std::string_view cat = r.provenance == Provenance::alias ? category::alias : category::transform;
    Decoration d;
    d.target = occ.span;
    d.identity = occ.identity;
    d.kind = DecorationKind::replace_name;
    d.text = r.display;
    d.category = std::string(cat);
    d.priority = category::default_priority(cat);
    d.description = replace_description(r.provenance, occ.name, occ.identity);
    out.push_back(d);
    if (r.provenance == Provenance::abbreviation && shortened)
      out.push_back(detail::glyph_decoration(occ.span, occ.identity, *shortened, category::transform,
                                             "shortened from " + occ.name));
  }
  if (profile.transform.parameter_hints) {
    for (const auto& call : unit.calls) {
      const Occurrence& occ = unit.occurrences[call.occurrence];
      const Declaration* callee = unit.declaration_of(occ.identity);
      if (!callee || callee->occurrence.kind != EntityKind::method) continue;
      auto hints = parameter_hints(occ, callee->facts.parameters, call.arguments, category::default_priority(category::hints));
      out.insert(out.end(), hints.begin(), hints.end());
    }
  }
  return out;
}

struct FactsInput {
  std::vector<FactRecord> records;
  RecencyConfig recency;
};

inline std::vector<Decoration> all_decorations(const ParsedUnit& unit, const Profile& profile, const FactsInput& facts,
                                               std::vector<std::string>* warnings = nullptr) {
  const GlyphMap glyphs = profile.effective_glyphs();
  std::vector<Decoration> out = lint_decorations(unit, profile.rules, glyphs, warnings);
  auto f = facts_decorations(facts.records, unit, facts.recency, glyphs);
  out.insert(out.end(), f.begin(), f.end());
  auto d = display_decorations(unit, profile, glyphs);
  out.insert(out.end(), d.begin(), d.end());
  return out;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

enum class Format { ansi, html, json };

inline std::optional<Format> format_from_string(std::string_view s) {
  if (s == "ansi") return Format::ansi;
  if (s == "html") return Format::html;
  if (s == "json") return Format::json;
  return std::nullopt;
}

// Per-request adjustments layered over the active profile.
struct ViewOptions {
  std::optional<int> slider;
  std::map<std::string, bool> categories;

  Profile apply(Profile p) const {
    if (slider) p.slider = *slider;
    for (const auto& [id, on] : categories) {
      CategorySetting s = p.category(id);
      s.enabled = on;
      p.categories[id] = s;
    }
    return p;
  }
};

inline RenderPlan plan_unit(const ParsedUnit& unit, const std::string& file, const Profile& profile,
                            const FactsInput& facts, std::vector<std::string>* warnings = nullptr) {
  return compose(unit.source, file, all_decorations(unit, profile, facts, warnings), profile);
}

inline std::string render_plan(std::string_view source, const RenderPlan& plan, Format format) {
  switch (format) {
    case Format::ansi: return render_ansi(source, plan);
    case Format::html: return render_html(source, plan);
    case Format::json: return emit_stream(plan);
  }
  return {};
}

inline std::string render_unit(const ParsedUnit& unit, const std::string& file, const Profile& profile,
                               const FactsInput& facts, Format format, std::vector<std::string>* warnings = nullptr) {
  return render_plan(unit.source, plan_unit(unit, file, profile, facts, warnings), format);
}

}  // namespace impid

#endif  // IMPID_PIPELINE_HPP
