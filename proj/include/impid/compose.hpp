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

// Composition of decorations under profile settings: category enablement,
// category priorities and the slider.

#ifndef IMPID_COMPOSE_HPP
#define IMPID_COMPOSE_HPP

#include <algorithm>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "impid/model.hpp"
#include "impid/profiles.hpp"

namespace impid {

// Slider semantics: glyphs and hints need priority <= slider; replace-names
// only need their category enabled.
inline bool visible(const Decoration& d, const CategorySetting& setting, int slider) {
  if (!setting.enabled) return false;
  return d.kind == DecorationKind::replace_name || setting.priority <= slider;
}

inline RenderPlan compose(std::string_view source, std::string file, std::vector<Decoration> decorations,
                          const Profile& profile) {
  RenderPlan plan;
  plan.file = std::move(file);
  plan.source_hash = source_hash(source);
  for (auto& d : decorations) {
    if (d.target.end > source.size() || d.target.start >= d.target.end)
      throw InvariantViolation("decoration span out of bounds");
    if (d.description.empty()) throw InvariantViolation("decoration without description");
    if (d.kind == DecorationKind::replace_name && d.text.empty()) throw InvariantViolation("empty replace-name");
    const CategorySetting setting = profile.category(d.category);
    d.priority = setting.priority;
    if (!visible(d, setting, profile.slider)) continue;
    auto [line, col] = line_col_at(source, d.target.start);
    d.target.line = line;
    d.target.col = col;
    plan.decorations.push_back(std::move(d));
  }
  std::sort(plan.decorations.begin(), plan.decorations.end(), decoration_less);
  plan.decorations.erase(std::unique(plan.decorations.begin(), plan.decorations.end()), plan.decorations.end());
  std::map<std::pair<std::size_t, std::size_t>, const Decoration*> replaced;
  for (const auto& d : plan.decorations) {
    if (d.kind != DecorationKind::replace_name) continue;
    auto [it, fresh] = replaced.emplace(std::make_pair(d.target.start, d.target.end), &d);
    if (!fresh)
      throw InvariantViolation("two replace-name decorations on " + std::to_string(d.target.start) + ".." +
                               std::to_string(d.target.end) + ": '" + it->second->text + "' and '" + d.text + "'");
  }
  return plan;
}

}  // namespace impid

#endif  // IMPID_COMPOSE_HPP
