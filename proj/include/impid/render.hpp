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

// Renderers over a composed plan (ANSI, HTML, decoration stream) and the
// inverse operations that recover the original source bytes.

#ifndef IMPID_RENDER_HPP
#define IMPID_RENDER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "impid/model.hpp"
#include "impid/serialize.hpp"

namespace impid {

class StalePlan : public Error {
 public:
  using Error::Error;
};

namespace ansi {
inline constexpr std::string_view hint = "\x1b[2m";
inline constexpr std::string_view glyph = "\x1b[1m";
inline constexpr std::string_view replaced = "\x1b[3m";
inline constexpr std::string_view reset = "\x1b[0m";
}  // namespace ansi

namespace detail {

inline void check_fresh(std::string_view source, const RenderPlan& plan) {
  if (plan.source_hash != source_hash(source)) throw StalePlan("plan was built for different source bytes");
}

// Walks the source once, calling the sinks in display order. Suffix glyphs
// ending at an offset come before anything starting there.
template <class Text, class Insert, class Replace>
void walk(std::string_view source, const RenderPlan& plan, Text&& text, Insert&& insert, Replace&& replace) {
  struct Event {
    std::size_t at;
    int phase;  // 0 suffix, 1 hint/prefix, 2 replace
    const Decoration* d;
  };
  std::vector<Event> events;
  for (const auto& d : plan.decorations) {
    switch (d.kind) {
      case DecorationKind::suffix_glyph: events.push_back({d.target.end, 0, &d}); break;
      case DecorationKind::inline_hint:
      case DecorationKind::prefix_glyph: events.push_back({d.target.start, 1, &d}); break;
      case DecorationKind::replace_name: events.push_back({d.target.start, 2, &d}); break;
    }
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return std::tie(a.at, a.phase) < std::tie(b.at, b.phase); });
  std::size_t pos = 0;
  for (const auto& e : events) {
    if (e.at < pos) continue;  // inside a replaced span
    text(source.substr(pos, e.at - pos));
    pos = e.at;
    if (e.phase == 2) {
      replace(*e.d, source.substr(e.d->target.start, e.d->target.size()));
      pos = e.d->target.end;
    } else {
      insert(*e.d);
    }
  }
  text(source.substr(pos));
}

}  // namespace detail

inline std::string render_ansi(std::string_view source, const RenderPlan& plan) {
  detail::check_fresh(source, plan);
  std::string out;
  out.reserve(source.size() + plan.decorations.size() * 16);
  detail::walk(
      source, plan, [&](std::string_view t) { out += t; },
      [&](const Decoration& d) {
        if (d.kind == DecorationKind::inline_hint) {
          out += ansi::hint;
          out += d.text + " ";
        } else {
          out += ansi::glyph;
          out += d.text;
        }
        out += ansi::reset;
      },
      [&](const Decoration& d, std::string_view) {
        out += ansi::replaced;
        out += d.text;
        out += ansi::reset;
      });
  return out;
}

inline std::string html_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

inline std::string html_unescape(std::string_view text) {
  static const std::pair<std::string_view, char> kEntities[] = {
      {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&#39;", '\''}};
  std::string out;
  for (std::size_t i = 0; i < text.size();) {
    bool matched = false;
    if (text[i] == '&') {
      for (const auto& [entity, c] : kEntities) {
        if (text.substr(i, entity.size()) == entity) {
          out.push_back(c);
          i += entity.size();
          matched = true;
          break;
        }
      }
    }
    if (!matched) out.push_back(text[i++]);
  }
  return out;
}

inline constexpr std::string_view kHtmlOpen = "<pre class=\"impid\">";
inline constexpr std::string_view kHtmlClose = "</pre>\n";

inline std::string render_html(std::string_view source, const RenderPlan& plan) {
  detail::check_fresh(source, plan);
  std::string out(kHtmlOpen);
  auto open = [&](const Decoration& d) {
    out += "<span class=\"impid-";
    out += to_string(d.kind);
    out += " impid-cat-" + html_escape(d.category) + "\" title=\"" + html_escape(d.description) + "\"";
    if (d.identity) out += " data-identity=\"" + html_escape(d.identity->str()) + "\"";
  };
  detail::walk(
      source, plan, [&](std::string_view t) { out += html_escape(t); },
      [&](const Decoration& d) {
        open(d);
        out += ">" + html_escape(d.kind == DecorationKind::inline_hint ? d.text + " " : d.text) + "</span>";
      },
      [&](const Decoration& d, std::string_view original) {
        open(d);
        out += " data-original=\"" + html_escape(original) + "\">" + html_escape(d.text) + "</span>";
      });
  out += kHtmlClose;
  return out;
}

inline std::string emit_stream(const RenderPlan& plan) { return canonical_text(to_json(plan)); }

// ---------------------------------------------------------------------------
// Inverses
// ---------------------------------------------------------------------------

// Original text of a replaced occurrence, derived from its identity.
inline std::string original_name(const Decoration& d) { return d.identity ? d.identity->simple_name() : std::string(); }

// Applies the plan's replace-name edits to the source.
inline std::string apply_replacements(std::string_view source, const RenderPlan& plan) {
  std::string out;
  std::size_t pos = 0;
  for (const auto& d : plan.decorations) {
    if (d.kind != DecorationKind::replace_name || d.target.start < pos) continue;
    out += source.substr(pos, d.target.start - pos);
    out += d.text;
    pos = d.target.end;
  }
  out += source.substr(pos);
  return out;
}

// Undoes apply_replacements using only the plan: spans locate each edit and
// identities give back the original names.
inline std::string reverse_replacements(std::string_view rendered, const RenderPlan& plan) {
  std::string out;
  std::size_t pos = 0;        // in rendered
  long long delta = 0;        // rendered offset minus source offset
  for (const auto& d : plan.decorations) {
    if (d.kind != DecorationKind::replace_name) continue;
    const std::size_t at = static_cast<std::size_t>(static_cast<long long>(d.target.start) + delta);
    if (at < pos || rendered.substr(at, d.text.size()) != d.text) throw Error("rendered text does not match plan");
    out += rendered.substr(pos, at - pos);
    out += original_name(d);
    pos = at + d.text.size();
    delta += static_cast<long long>(d.text.size()) - static_cast<long long>(d.target.size());
  }
  out += rendered.substr(pos);
  return out;
}

// Strips the renderer's insertions and reverses replacements.
inline std::string recover_from_ansi(std::string_view rendered, const RenderPlan& plan) {
  std::vector<const Decoration*> replacements;
  for (const auto& d : plan.decorations)
    if (d.kind == DecorationKind::replace_name) replacements.push_back(&d);
  std::size_t next = 0;
  std::string out;
  for (std::size_t i = 0; i < rendered.size();) {
    auto styled = [&](std::string_view code) { return rendered.substr(i, code.size()) == code; };
    if (styled(ansi::hint) || styled(ansi::glyph) || styled(ansi::replaced)) {
      const bool is_replace = styled(ansi::replaced);
      std::size_t end = rendered.find(ansi::reset, i);
      if (end == std::string_view::npos) throw Error("unterminated escape");
      if (is_replace) {
        if (next >= replacements.size()) throw Error("more replacements than planned");
        out += original_name(*replacements[next++]);
      }
      i = end + ansi::reset.size();
      continue;
    }
    out.push_back(rendered[i++]);
  }
  return out;
}

inline std::string recover_from_html(std::string_view rendered) {
  if (rendered.substr(0, kHtmlOpen.size()) != kHtmlOpen ||
      rendered.size() < kHtmlOpen.size() + kHtmlClose.size() ||
      rendered.substr(rendered.size() - kHtmlClose.size()) != kHtmlClose)
    throw Error("not an impid html rendering");
  std::string_view body = rendered.substr(kHtmlOpen.size(), rendered.size() - kHtmlOpen.size() - kHtmlClose.size());
  std::string out;
  std::size_t pos = 0;
  while (true) {
    std::size_t open = body.find("<span ", pos);
    out += html_unescape(body.substr(pos, open == std::string_view::npos ? std::string_view::npos : open - pos));
    if (open == std::string_view::npos) break;
    std::size_t tag_end = body.find('>', open);
    std::size_t close = body.find("</span>", tag_end);
    if (tag_end == std::string_view::npos || close == std::string_view::npos) throw Error("malformed span");
    std::string_view tag = body.substr(open, tag_end - open);
    constexpr std::string_view kOriginal = "data-original=\"";
    if (auto o = tag.find(kOriginal); o != std::string_view::npos) {
      std::size_t q = tag.find('"', o + kOriginal.size());
      out += html_unescape(tag.substr(o + kOriginal.size(), q - o - kOriginal.size()));
    }
    pos = close + 7;
  }
  return out;
}

}  // namespace impid

#endif  // IMPID_RENDER_HPP
