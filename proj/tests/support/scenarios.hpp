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

#ifndef IMPID_TESTS_SCENARIOS_HPP
#define IMPID_TESTS_SCENARIOS_HPP

#include <algorithm>
#include <filesystem>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "impid/impid.hpp"

// Scenario fixtures: tests/fixtures/scenarios/<id>/scenario.json names the
// source, profile, reference time and optional facts file; expected.json
// lists the decoration records the stream must contain, as a multiset.

namespace impid_test {

namespace fs = std::filesystem;

// (kind, glyph notation or text, category, identity)
using ScenarioRecord = std::tuple<std::string, std::string, std::string, std::string>;

struct ScenarioOutcome {
  std::string id;
  bool ok = false;
  std::string detail;
  std::vector<ScenarioRecord> got;
  std::vector<ScenarioRecord> want;
};

inline bool glyph_kind(const std::string& kind) { return kind == "prefix-glyph" || kind == "suffix-glyph"; }

inline std::string glyph_notation(const std::string& utf8) {
  auto cps = impid::decode_utf8(utf8);
  return cps ? impid::Glyph(*cps).notation() : "<bad utf-8>";
}

inline std::string describe(const ScenarioRecord& r) {
  return std::get<0>(r) + " " + std::get<1>(r) + " " + std::get<2>(r) + " " + std::get<3>(r);
}

// Renders the scenario in-process and returns the decoration stream text.
inline std::string scenario_stream(const fs::path& dir) {
  const impid::Json desc = impid::Json::parse(impid::read_file(dir / "scenario.json"));
  const std::string file = desc.at("file").get<std::string>();
  const auto now = impid::parse_timestamp(desc.at("now").get<std::string>());
  if (!now) throw impid::Error("bad reference time in " + dir.string());
  impid::Profile profile;
  if (desc.contains("profile")) profile = impid::load_profile(impid::read_file(dir / desc.at("profile").get<std::string>()));
  impid::FactsInput facts;
  facts.recency = {std::chrono::hours(24 * 14), *now};
  if (desc.contains("facts")) facts.records = impid::load_facts_file(dir / desc.at("facts").get<std::string>(), *now, nullptr);
  const auto unit = impid::extract_occurrences(impid::read_file(dir / file));
  return impid::render_unit(unit, file, profile, facts, impid::Format::json);
}

inline std::vector<ScenarioRecord> stream_records(const std::string& stream) {
  std::vector<ScenarioRecord> out;
  const impid::Json doc = impid::Json::parse(stream);
  for (const auto& d : doc.at("decorations")) {
    const std::string kind = d.at("kind").get<std::string>();
    const std::string text = d.at("text").get<std::string>();
    out.emplace_back(kind, glyph_kind(kind) ? glyph_notation(text) : text, d.at("category").get<std::string>(),
                     d.at("identity").is_null() ? "" : d.at("identity").get<std::string>());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<ScenarioRecord> expected_records(const fs::path& dir) {
  std::vector<ScenarioRecord> out;
  const impid::Json j = impid::Json::parse(impid::read_file(dir / "expected.json"));
  for (const auto& d : j.at("decorations")) {
    const std::string kind = d.at("kind").get<std::string>();
    const std::string value = glyph_kind(kind) ? d.at("glyph").get<std::string>() : d.at("text").get<std::string>();
    out.emplace_back(kind, value, d.at("category").get<std::string>(), d.value("identity", std::string()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline ScenarioOutcome run_scenario(const fs::path& dir) {
  ScenarioOutcome r;
  r.id = dir.filename().string();
  try {
    r.got = stream_records(scenario_stream(dir));
    r.want = expected_records(dir);
  } catch (const std::exception& e) {
    r.detail = e.what();
    return r;
  }
  r.ok = r.got == r.want;
  if (!r.ok) {
    std::vector<ScenarioRecord> missing, extra;
    std::set_difference(r.want.begin(), r.want.end(), r.got.begin(), r.got.end(), std::back_inserter(missing));
    std::set_difference(r.got.begin(), r.got.end(), r.want.begin(), r.want.end(), std::back_inserter(extra));
    for (const auto& m : missing) r.detail += "missing: " + describe(m) + "; ";
    for (const auto& e : extra) r.detail += "unexpected: " + describe(e) + "; ";
  }
  return r;
}

inline std::vector<fs::path> scenario_dirs(const fs::path& root) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(root))
    if (e.is_directory() && fs::exists(e.path() / "scenario.json")) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace impid_test

#endif  // IMPID_TESTS_SCENARIOS_HPP
