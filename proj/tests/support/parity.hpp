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


#ifndef IMPID_TESTS_PARITY_HPP
#define IMPID_TESTS_PARITY_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "impid/impid.hpp"
#include "impid/service.hpp"
#include "process.hpp"
#include "random_model.hpp"

// Renders random (fixture, profile, slider) combinations once through the
// CLI binary and once through the HTTP service, and compares the bodies.

namespace impid_test {

struct ParityOutcome {
  int combos = 0;
  int mismatches = 0;
  std::size_t decorations = 0;  // summed over the compared bodies
  std::string first_failure;
  bool ok() const { return combos > 0 && mismatches == 0; }
};

// Concatenates every facts file under the scenario root into one NDJSON file.
inline std::filesystem::path combined_facts(const std::filesystem::path& root, const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> inputs;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    const std::string name = e.path().filename().string();
    if (name.size() > 13 && name.ends_with(".facts.ndjson")) inputs.push_back(e.path());
  }
  std::sort(inputs.begin(), inputs.end());
  const auto out = dir / "all.facts.ndjson";
  std::ofstream f(out, std::ios::binary);
  for (const auto& p : inputs) {
    std::string text = impid::read_file(p);
    if (!text.empty() && text.back() != '\n') text += '\n';
    f << text;
  }
  return out;
}

inline ParityOutcome run_parity(const std::string& cli, const std::filesystem::path& root, int combos, std::uint64_t seed) {
  ParityOutcome r;
  TempDir tmp;
  const std::string now = "2024-03-10T12:00:00Z";
  const auto facts = combined_facts(root, tmp.path());

  impid::ServiceConfig config;
  config.root = root;
  config.facts_path = facts;
  config.now = *impid::parse_timestamp(now);
  impid::ServiceState state(config);
  httplib::Server server;
  impid::install_routes(server, state);
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  const auto files = state.files();
  Rng rng(seed);
  auto fail = [&](const std::string& why) {
    ++r.mismatches;
    if (r.first_failure.empty()) r.first_failure = why;
  };
  for (int i = 0; i < combos && !files.empty(); ++i, ++r.combos) {
    const std::string rel = choose(rng, files);
    const auto unit = impid::extract_occurrences(impid::read_file(root / rel));
    const impid::Profile profile = random_profile(rng, &unit);
    const int slider = uniform(rng, 0, 5);
    const std::string label = rel + " slider " + std::to_string(slider) + " combo " + std::to_string(i);

    const auto profile_file = tmp.path() / ("p" + std::to_string(i) + ".impid.json");
    std::ofstream(profile_file, std::ios::binary) << impid::save_profile(profile);
    const auto via_cli = run_command({cli, "render", rel, "--format", "json", "--profile", profile_file.string(), "--facts",
                                      facts.string(), "--slider", std::to_string(slider), "--now", now},
                                     root);
    if (via_cli.exit_code != 0) {
      fail(label + ": cli exited " + std::to_string(via_cli.exit_code) + ": " + via_cli.err);
      continue;
    }
    auto put = client.Put("/api/profile", impid::save_profile(profile), "application/json");
    if (!put || put->status != 200) {
      fail(label + ": PUT /api/profile failed");
      continue;
    }
    auto get = client.Get("/api/render?path=" + httplib::detail::encode_query_param(rel) +
                          "&format=json&slider=" + std::to_string(slider));
    if (!get || get->status != 200) {
      fail(label + ": GET /api/render failed");
      continue;
    }
    if (get->body != via_cli.out) fail(label + ": bodies differ");
    const impid::Json doc = impid::Json::parse(get->body);
    r.decorations += doc.at("decorations").size();
  }
  server.stop();
  thread.join();
  return r;
}

}  // namespace impid_test

#endif  // IMPID_TESTS_PARITY_HPP
