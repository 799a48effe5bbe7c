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

// Automated display-name transformations: word splitting, naming-convention
// conversion, abbreviation, accessor-prefix stripping, method-name expansion
// and inline parameter hints. All functions are pure.

#ifndef IMPID_TRANSFORMS_HPP
#define IMPID_TRANSFORMS_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "impid/glyphs.hpp"
#include "impid/model.hpp"

namespace impid {

enum class Convention { none, camel_case, snake_case };
enum class AbbreviationStrategy { none, initialism_keep_last, per_word_prefix_3 };

inline std::string_view to_string(Convention c) {
  switch (c) {
    case Convention::none: return "none";
    case Convention::camel_case: return "camelCase";
    case Convention::snake_case: return "snake_case";
  }
  return "?";
}

inline std::optional<Convention> convention_from_string(std::string_view s) {
  for (auto c : {Convention::none, Convention::camel_case, Convention::snake_case})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

inline std::string_view to_string(AbbreviationStrategy s) {
  switch (s) {
    case AbbreviationStrategy::none: return "none";
    case AbbreviationStrategy::initialism_keep_last: return "initialism-keep-last";
    case AbbreviationStrategy::per_word_prefix_3: return "per-word-prefix-3";
  }
  return "?";
}

inline std::optional<AbbreviationStrategy> abbreviation_strategy_from_string(std::string_view s) {
  for (auto v : {AbbreviationStrategy::none, AbbreviationStrategy::initialism_keep_last,
                 AbbreviationStrategy::per_word_prefix_3})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

struct TransformConfig {
  Convention convention = Convention::none;
  AbbreviationStrategy abbreviation = AbbreviationStrategy::none;
  int abbreviation_min_length = 15;
  bool strip_accessor_prefixes = false;
  bool expansion = false;
  bool parameter_hints = false;
  std::string shortened_marker = std::string(glyph_key::shortened);
  // Conventional short forms used by per-word-prefix-3 before falling back
  // to the three-character prefix.
  std::map<std::string, std::string> word_abbreviations = {{"Exception", "Exp"}};

  friend bool operator==(const TransformConfig&, const TransformConfig&) = default;
};

namespace detail {
inline bool ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool ascii_lower(char c) { return c >= 'a' && c <= 'z'; }
inline bool ascii_digit(char c) { return c >= '0' && c <= '9'; }
inline char to_upper(char c) { return ascii_lower(c) ? static_cast<char>(c - 'a' + 'A') : c; }
inline char to_lower(char c) { return ascii_upper(c) ? static_cast<char>(c - 'A' + 'a') : c; }
inline std::string lowercase(std::string s) {
  for (char& c : s) c = to_lower(c);
  return s;
}
inline std::string capitalized(std::string s) {
  if (!s.empty()) s[0] = to_upper(s[0]);
  return s;
}
inline bool continuation_byte(char c) { return (static_cast<unsigned char>(c) & 0xC0) == 0x80; }
inline std::size_t codepoint_count(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return !continuation_byte(c); }));
}
// First n codepoints of s.
inline std::string codepoint_prefix(std::string_view s, std::size_t n) {
  std::size_t i = 0;
  for (std::size_t seen = 0; i < s.size(); ++i) {
    if (!continuation_byte(s[i]) && seen++ == n) break;
  }
  return std::string(s.substr(0, i));
}
}  // namespace detail

// Splits an identifier into words at lower->upper transitions, underscores
// and digit runs. An uppercase run followed by a lowercase letter splits
// before its last uppercase letter. Words keep their original casing.
inline std::vector<std::string> split_words(std::string_view name) {
  using namespace detail;
  std::vector<std::string> words;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) words.push_back(std::move(cur));
    cur.clear();
  };
  for (std::size_t i = 0; i < name.size(); ++i) {
    const char c = name[i];
    if (c == '_' || c == '$') {
      flush();
      continue;
    }
    if (!cur.empty()) {
      const char last = cur.back();
      if (ascii_digit(c) != ascii_digit(last)) {
        flush();
      } else if (ascii_upper(c) && ascii_lower(last)) {
        flush();
      } else if (ascii_upper(c) && ascii_upper(last) && i + 1 < name.size() && ascii_lower(name[i + 1])) {
        flush();
      }
    }
    cur.push_back(c);
  }
  flush();
  return words;
}

inline std::string convert_convention(std::string_view name, Convention target) {
  using namespace detail;
  if (target == Convention::none) return std::string(name);
  auto words = split_words(name);
  if (words.empty()) return std::string(name);
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (target == Convention::snake_case) {
      if (i) out.push_back('_');
      out += lowercase(words[i]);
    } else {
      out += i == 0 ? lowercase(words[i]) : capitalized(lowercase(words[i]));
    }
  }
  return out;
}

struct Abbreviation {
  std::string display;
  bool shortened = false;
  friend bool operator==(const Abbreviation&, const Abbreviation&) = default;
};

inline Abbreviation abbreviate(std::string_view name, AbbreviationStrategy strategy, int min_length,
                               const std::map<std::string, std::string>& word_abbreviations = {}) {
  using detail::codepoint_count;
  using detail::codepoint_prefix;
  Abbreviation unchanged{std::string(name), false};
  const std::size_t length = codepoint_count(name);
  if (strategy == AbbreviationStrategy::none || static_cast<int>(length) < min_length) return unchanged;
  auto words = split_words(name);
  std::string out;
  if (strategy == AbbreviationStrategy::initialism_keep_last) {
    if (words.size() < 2) return unchanged;
    for (std::size_t i = 0; i + 1 < words.size(); ++i) out += codepoint_prefix(words[i], 1);
    out += words.back();
  } else {
    for (const auto& w : words) {
      auto known = word_abbreviations.find(w);
      out += known != word_abbreviations.end() ? known->second : codepoint_prefix(w, 3);
    }
  }
  if (codepoint_count(out) >= length || out.empty()) return unchanged;
  return {out, true};
}

// get + Uppercase + rest  ->  rest with its first letter lowercased.
inline std::string strip_accessor_prefix(std::string_view name) {
  if (name.size() > 3 && name.substr(0, 3) == "get" && detail::ascii_upper(name[3])) {
    std::string rest(name.substr(3));
    rest[0] = detail::to_lower(rest[0]);
    return rest;
  }
  return std::string(name);
}

// Appends By<Param>And<Param>... unless every parameter name already occurs
// in the method name.
inline std::string expand_method_name(std::string_view name, const std::vector<std::string>& parameters) {
  if (parameters.empty()) return std::string(name);
  const std::string lowered = detail::lowercase(std::string(name));
  bool all_present = std::all_of(parameters.begin(), parameters.end(), [&](const std::string& p) {
    return lowered.find(detail::lowercase(p)) != std::string::npos;
  });
  if (all_present) return std::string(name);
  std::string out(name);
  out += "By";
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    if (i) out += "And";
    out += detail::capitalized(parameters[i]);
  }
  return out;
}

// One inline hint `<param>:` per argument, anchored at the argument start.
inline std::vector<Decoration> parameter_hints(const Occurrence& call, const std::vector<std::string>& parameters,
                                               const std::vector<Span>& arguments, int priority = 3) {
  std::vector<Decoration> hints;
  const std::size_t count = std::min(parameters.size(), arguments.size());
  for (std::size_t i = 0; i < count; ++i) {
    Decoration d;
    d.target = arguments[i];
    d.identity = call.identity;
    d.kind = DecorationKind::inline_hint;
    d.text = parameters[i] + ":";
    d.category = std::string(category::hints);
    d.priority = priority;
    d.description = "parameter " + parameters[i] + " of " + call.identity.str();
    hints.push_back(std::move(d));
  }
  return hints;
}

}  // namespace impid

#endif  // IMPID_TRANSFORMS_HPP
