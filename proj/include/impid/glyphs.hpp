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

// Unicode glyphs stored as codepoint notation (U+1F6A6,U+FE0F) and the
// default semantic glyph map.

#ifndef IMPID_GLYPHS_HPP
#define IMPID_GLYPHS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "impid/model.hpp"

namespace impid {

class Glyph {
 public:
  Glyph() = default;
  explicit Glyph(std::vector<char32_t> codepoints) : codepoints_(std::move(codepoints)) {}

  // Parses comma-joined notation such as "U+1F937,U+200D,U+2640".
  static std::optional<Glyph> parse(std::string_view notation) {
    std::vector<char32_t> cps;
    std::size_t pos = 0;
    while (pos <= notation.size()) {
      std::size_t comma = notation.find(',', pos);
      std::string_view item = notation.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
      if (item.size() < 3 || item.size() > 8 || (item[0] != 'U' && item[0] != 'u') || item[1] != '+') return std::nullopt;
      char32_t value = 0;
      for (char c : item.substr(2)) {
        int digit;
        if (c >= '0' && c <= '9') digit = c - '0';
        else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
        else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
        else return std::nullopt;
        value = value * 16 + static_cast<char32_t>(digit);
      }
      if (value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) return std::nullopt;
      cps.push_back(value);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (cps.empty()) return std::nullopt;
    return Glyph(std::move(cps));
  }

  const std::vector<char32_t>& codepoints() const { return codepoints_; }
  bool empty() const { return codepoints_.empty(); }

  std::string notation() const {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    for (std::size_t i = 0; i < codepoints_.size(); ++i) {
      if (i) out.push_back(',');
      out += "U+";
      std::string digits;
      for (char32_t v = codepoints_[i]; v; v >>= 4) digits.insert(digits.begin(), kHex[v & 0xf]);
      while (digits.size() < 4) digits.insert(digits.begin(), '0');
      out += digits;
    }
    return out;
  }

  std::string utf8() const {
    std::string out;
    for (char32_t c : codepoints_) append_utf8(out, c);
    return out;
  }

  static void append_utf8(std::string& out, char32_t c) {
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (c >> 12)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (c >> 18)));
      out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
  }

  friend bool operator==(const Glyph&, const Glyph&) = default;

 private:
  std::vector<char32_t> codepoints_;
};

// Decodes UTF-8 text into codepoints; std::nullopt on malformed input.
inline std::optional<std::vector<char32_t>> decode_utf8(std::string_view text) {
  std::vector<char32_t> out;
  for (std::size_t i = 0; i < text.size();) {
    auto b = static_cast<unsigned char>(text[i]);
    int len = b < 0x80 ? 1 : (b >> 5) == 0x6 ? 2 : (b >> 4) == 0xE ? 3 : (b >> 3) == 0x1E ? 4 : 0;
    if (len == 0 || i + len > text.size()) return std::nullopt;
    char32_t cp = len == 1 ? b : len == 2 ? (b & 0x1F) : len == 3 ? (b & 0x0F) : (b & 0x07);
    for (int k = 1; k < len; ++k) {
      auto c = static_cast<unsigned char>(text[i + k]);
      if ((c & 0xC0) != 0x80) return std::nullopt;
      cp = (cp << 6) | (c & 0x3F);
    }
    static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return std::nullopt;
    out.push_back(cp);
    i += static_cast<std::size_t>(len);
  }
  return out;
}

// Semantic glyph key -> glyph.
using GlyphMap = std::map<std::string, Glyph>;

namespace glyph_key {
inline constexpr std::string_view singular_holds_many = "naming.singular-holds-many";
inline constexpr std::string_view plural_holds_one = "naming.plural-holds-one";
inline constexpr std::string_view single_letter = "naming.single-letter";
inline constexpr std::string_view getter_no_return = "naming.getter-no-return";
inline constexpr std::string_view shortened = "transform.shortened";
inline constexpr std::string_view renamed = "history.renamed";
inline constexpr std::string_view method_added = "history.method-added";
inline constexpr std::string_view method_changed = "history.method-changed";
inline constexpr std::string_view risky_call = "risk.risky-call";
inline constexpr std::string_view analysis_prefix = "analysis.";
inline constexpr std::string_view analysis_default = "analysis.default";
inline constexpr std::string_view status_prefix = "process.";
}  // namespace glyph_key

inline const GlyphMap& default_glyph_map() {
  static const GlyphMap kMap = [] {
    const std::pair<const char*, const char*> entries[] = {
        {"naming.singular-holds-many", "U+1F522"},
        {"naming.plural-holds-one", "U+0031,U+FE0F,U+20E3"},
        {"naming.single-letter", "U+1F90F"},
        {"naming.getter-no-return", "U+1F645"},
        {"modifier.public", "U+1F513"},
        {"modifier.private", "U+1F512"},
        {"modifier.protected", "U+1F510"},
        {"modifier.static", "U+1F4CC"},
        {"modifier.final", "U+1F51A"},
        {"modifier.synchronized", "U+1F6A6"},
        {"modifier.abstract", "U+1F47B"},
        {"modifier.async", "U+23F3"},
        {"annotation.requires-new", "U+1F195"},
        {"annotation.requires", "U+27A1"},
        {"annotation.not-supported", "U+26D4"},
        {"project.persistent", "U+1F4BE"},
        {"project.controller", "U+1F500"},
        {"project.string-field", "U+1F524"},
        {"api.open", "U+1F4D6"},
        {"api.close", "U+1F4D8"},
        {"transform.shortened", "U+1FA73"},
        {"history.renamed", "U+270D"},
        {"history.method-added", "U+1F476"},
        {"history.method-changed", "U+270F"},
        {"risk.risky-call", "U+2620"},
        {"analysis.lost-exception", "U+1F937,U+200D,U+2640"},
        {"analysis.default", "U+1F525"},
        {"process.inspection-pending", "U+1F7E0"},
        {"process.needs-change", "U+1F534"},
        {"process.no-change", "U+1F7E2"},
        {"process.implemented", "U+1F7E3"},
    };
    GlyphMap map;
    for (const auto& [key, notation] : entries) map.emplace(key, *Glyph::parse(notation));
    return map;
  }();
  return kMap;
}

// Defaults overlaid with profile-specific assignments.
inline GlyphMap effective_glyph_map(const GlyphMap& overrides) {
  GlyphMap map = default_glyph_map();
  for (const auto& [key, glyph] : overrides) map[key] = glyph;
  return map;
}

inline const Glyph* find_glyph(const GlyphMap& map, std::string_view key) {
  auto it = map.find(std::string(key));
  return it == map.end() ? nullptr : &it->second;
}

}  // namespace impid

#endif  // IMPID_GLYPHS_HPP
