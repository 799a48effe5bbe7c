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

// External facts: newline-delimited records (VCS events, analysis findings,
// change-process status), the line-oriented VCS export, and the mapping
// from facts to decorations.

#ifndef IMPID_FACTS_HPP
#define IMPID_FACTS_HPP

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "impid/glyphs.hpp"
#include "impid/model.hpp"
#include "impid/parser.hpp"
#include "impid/serialize.hpp"
#include "impid/timestamp.hpp"

namespace impid {

struct FactsParse {
  std::vector<FactRecord> records;
  std::vector<std::string> diagnostics;
};

inline FactsParse parse_facts(std::string_view text) {
  FactsParse out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    try {
      out.records.push_back(fact_from_json(Json::parse(line)));
    } catch (const UnknownFactType& e) {
      out.diagnostics.push_back(where + e.what() + " (skipped)");
    } catch (const Json::exception& e) {
      out.diagnostics.push_back(where + "malformed record: " + e.what());
    } catch (const FormatError& e) {
      out.diagnostics.push_back(where + e.what());
    }
  }
  return out;
}

struct RecencyConfig {
  std::chrono::seconds window = std::chrono::hours(24 * 14);
  Timestamp reference{};

  bool recent(Timestamp t) const {
    auto age = reference - t;
    return age >= std::chrono::seconds{0} && age <= window;
  }
};

namespace detail {

// True when the dotted path `shorter` equals the trailing segments of `longer`.
inline bool segment_suffix(std::string_view longer, std::string_view shorter) {
  if (shorter.size() > longer.size()) return false;
  if (longer.substr(longer.size() - shorter.size()) != shorter) return false;
  return shorter.size() == longer.size() || longer[longer.size() - shorter.size() - 1] == '.';
}

inline bool external_match(const IdentityKey& fact, const IdentityKey& occ) {
  if (!fact.is_external() || !occ.is_external()) return false;
  std::string_view a = std::string_view(fact.str()).substr(4);
  std::string_view b = std::string_view(occ.str()).substr(4);
  return segment_suffix(a, b) || segment_suffix(b, a);
}

inline std::optional<std::size_t> offset_of(std::string_view source, int line, int col) {
  int l = 1;
  int c = 1;
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (l == line && c == col) return i;
    if (source[i] == '\n') {
      if (l == line) return std::nullopt;
      ++l;
      c = 1;
    } else if ((static_cast<unsigned char>(source[i]) & 0xC0) != 0x80) {
      ++c;
    }
  }
  return std::nullopt;
}

// Occurrences a span target points at.
inline std::vector<std::size_t> occurrences_at(const ParsedUnit& unit, const FactSpan& span) {
  std::vector<std::size_t> out;
  std::optional<Span> range;
  if (span.start && span.end) {
    range = Span{*span.start, *span.end};
  } else if (span.line && span.col) {
    if (auto off = offset_of(unit.source, *span.line, *span.col)) range = Span{*off, *off + 1};
  }
  if (!range) return out;
  for (std::size_t i = 0; i < unit.occurrences.size(); ++i)
    if (unit.occurrences[i].span.overlaps(*range)) out.push_back(i);
  return out;
}

}  // namespace detail

inline std::vector<Decoration> facts_decorations(const std::vector<FactRecord>& facts, const ParsedUnit& unit,
                                                 const RecencyConfig& recency, const GlyphMap& glyphs) {
  std::vector<Decoration> out;
  std::vector<bool> is_call(unit.occurrences.size(), false);
  for (const auto& c : unit.calls) is_call[c.occurrence] = true;

  auto emit = [&](const Occurrence& occ, const Glyph& g, std::string_view cat, std::string description) {
    Decoration d;
    d.target = occ.span;
    d.identity = occ.identity;
    d.kind = DecorationKind::suffix_glyph;
    d.text = g.utf8();
    d.category = std::string(cat);
    d.priority = category::default_priority(cat);
    d.description = std::move(description);
    out.push_back(std::move(d));
  };
  auto for_identity = [&](const FactRecord& f, bool declarations_only, auto&& fn) {
    if (!f.identity) return;
    for (const auto& occ : unit.occurrences)
      if (occ.identity == *f.identity && (!declarations_only || occ.role == Role::declaration)) fn(occ);
  };

  for (const auto& f : facts) {
    switch (f.type) {
      case FactType::renamed: {
        const Glyph* g = find_glyph(glyphs, glyph_key::renamed);
        if (!g || !f.timestamp || !recency.recent(*f.timestamp)) break;
        std::string description = f.previous.empty() ? "recently renamed" : "recently renamed from " + f.previous;
        for_identity(f, false, [&](const Occurrence& occ) { emit(occ, *g, category::history, description); });
        break;
      }
      case FactType::method_added:
      case FactType::method_changed: {
        const bool added = f.type == FactType::method_added;
        const Glyph* g = find_glyph(glyphs, added ? glyph_key::method_added : glyph_key::method_changed);
        if (!g || !f.timestamp || !recency.recent(*f.timestamp)) break;
        std::string description = std::string(added ? "recently added" : "recently changed") + " on " +
                                  format_timestamp(*f.timestamp).substr(0, 10);
        if (!f.author.empty()) description += " by " + f.author;
        for_identity(f, true, [&](const Occurrence& occ) {
          if (occ.kind == EntityKind::method) emit(occ, *g, category::history, description);
        });
        break;
      }
      case FactType::last_author: {
        auto avatar = Glyph::parse(f.avatar);
        if (!avatar) break;
        std::string description = "last modified by " + (f.author.empty() ? std::string("unknown") : f.author);
        for_identity(f, true, [&](const Occurrence& occ) {
          if (occ.kind == EntityKind::method) emit(occ, *avatar, category::history, description);
        });
        break;
      }
      case FactType::risky_call: {
        const Glyph* g = find_glyph(glyphs, glyph_key::risky_call);
        if (!g) break;
        std::string description = f.message.empty() ? "call with known security risks" : f.message;
        for (std::size_t i = 0; i < unit.occurrences.size(); ++i) {
          if (!is_call[i]) continue;
          const Occurrence& occ = unit.occurrences[i];
          bool hit = f.identity && (occ.identity == *f.identity || detail::external_match(*f.identity, occ.identity));
          if (!hit && f.span) {
            auto at = detail::occurrences_at(unit, *f.span);
            hit = std::find(at.begin(), at.end(), i) != at.end();
          }
          if (hit) emit(occ, *g, category::risk, description);
        }
        break;
      }
      case FactType::finding: {
        std::string key = std::string(glyph_key::analysis_prefix) + f.rule;
        const Glyph* g = f.rule.empty() ? nullptr : find_glyph(glyphs, key);
        if (!g) g = find_glyph(glyphs, glyph_key::analysis_default);
        if (!g) break;
        std::string description = !f.message.empty() ? f.message : f.rule.empty() ? "analysis finding" : f.rule;
        if (f.span) {
          for (std::size_t i : detail::occurrences_at(unit, *f.span)) emit(unit.occurrences[i], *g, category::analysis, description);
        } else {
          for_identity(f, true, [&](const Occurrence& occ) { emit(occ, *g, category::analysis, description); });
        }
        break;
      }
      case FactType::change_status: {
        if (!f.status) break;
        const Glyph* g = find_glyph(glyphs, std::string(glyph_key::status_prefix) + std::string(to_string(*f.status)));
        if (!g) break;
        std::string description = "change status: " + std::string(to_string(*f.status));
        for_identity(f, false, [&](const Occurrence& occ) { emit(occ, *g, category::process, description); });
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// VCS export:  op timestamp author avatar identity [previous]
// ---------------------------------------------------------------------------

struct VcsParse {
  std::vector<FactRecord> records;
  std::vector<std::string> diagnostics;
};

// Event records in export order, then one last-author record per method
// identity (latest A/M line wins, later lines break ties), sorted by identity.
inline VcsParse derive_vcs_facts(std::string_view text, Timestamp reference) {
  VcsParse out;
  struct Latest {
    Timestamp when;
    std::string author;
    std::string avatar;
  };
  std::map<IdentityKey, Latest> latest;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::vector<std::string> f;
    for (std::string w; fields >> w;) f.push_back(w);
    if (f.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    const std::string& op = f[0];
    if (op != "A" && op != "M" && op != "R") {
      out.diagnostics.push_back(where + "unknown op '" + op + "'");
      continue;
    }
    const std::size_t expected = op == "R" ? 6 : 5;
    if (f.size() != expected) {
      out.diagnostics.push_back(where + "expected " + std::to_string(expected) + " fields");
      continue;
    }
    auto ts = parse_timestamp(f[1]);
    if (!ts) {
      out.diagnostics.push_back(where + "unparseable timestamp '" + f[1] + "'");
      continue;
    }
    if (*ts > reference) {
      out.diagnostics.push_back(where + "timestamp after reference time");
      continue;
    }
    if (!Glyph::parse(f[3])) {
      out.diagnostics.push_back(where + "bad avatar glyph '" + f[3] + "'");
      continue;
    }
    IdentityKey identity(f[4]);
    if (!identity.valid()) {
      out.diagnostics.push_back(where + "invalid identity '" + f[4] + "'");
      continue;
    }
    FactRecord r;
    r.identity = identity;
    r.timestamp = *ts;
    r.author = f[2];
    r.avatar = f[3];
    if (op == "R") {
      r.type = FactType::renamed;
      r.previous = f[5];
    } else {
      r.type = op == "A" ? FactType::method_added : FactType::method_changed;
      auto& slot = latest[identity];
      if (slot.author.empty() || *ts >= slot.when) slot = {*ts, f[2], f[3]};
    }
    out.records.push_back(std::move(r));
  }
  for (const auto& [identity, who] : latest) {
    FactRecord r;
    r.type = FactType::last_author;
    r.identity = identity;
    r.timestamp = who.when;
    r.author = who.author;
    r.avatar = who.avatar;
    out.records.push_back(std::move(r));
  }
  return out;
}

}  // namespace impid

#endif  // IMPID_FACTS_HPP
