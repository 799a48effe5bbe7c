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


// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any fail.

#include <chrono>
#include <cstdio>
#include <string>

#include "goldens.hpp"
#include "parity.hpp"
#include "properties.hpp"
#include "scenarios.hpp"
#include "tolerant.hpp"

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void report(bool ok, const std::string& name, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
}

void goldens() {
  const auto t0 = Clock::now();
  const auto all = impid_test::run_goldens();
  const double secs = since(t0);
  int bad = 0;
  std::string detail;
  for (const auto& g : all) {
    if (g.ok()) continue;
    ++bad;
    detail += " [" + g.name + ": got '" + g.got + "' want '" + g.want + "']";
  }
  char head[96];
  std::snprintf(head, sizeof head, "%zu/%zu exact in %.3fs (limit 5s)", all.size() - bad, all.size(), secs);
  report(bad == 0 && secs < 5.0, "goldens", head + detail);
}

void scenarios() {
  const auto dirs = impid_test::scenario_dirs(IMPID_FIXTURES "/scenarios");
  int ok = 0;
  std::string detail;
  for (const auto& d : dirs) {
    const auto r = impid_test::run_scenario(d);
    if (r.ok)
      ++ok;
    else
      detail += " [" + r.id + ": " + r.detail + "]";
  }
  report(dirs.size() == 11 && ok == 11, "scenario-catalog",
         std::to_string(ok) + "/" + std::to_string(dirs.size()) + " scenarios match" + detail);
}

void properties() {
  const auto t0 = Clock::now();
  const auto all = impid_test::run_all_properties(1000);
  const double secs = since(t0);
  bool ok = secs < 60.0;
  std::string lines;
  for (const auto& p : all) {
    ok = ok && p.ok() && p.cases >= 1000;
    char buf[160];
    std::snprintf(buf, sizeof buf, "\n    %-4s %-28s %d cases, %d violations, %.2fs", p.ok() ? "ok" : "bad", p.name.c_str(),
                  p.cases, p.violations, p.seconds);
    lines += buf;
    if (!p.ok()) lines += " first: " + p.first_failure;
  }
  char head[96];
  std::snprintf(head, sizeof head, "%zu suites in %.2fs (limit 60s)", all.size(), secs);
  report(ok, "property-suites", head + lines);
}

void parity() {
  const auto r = impid_test::run_parity(IMPID_CLI, IMPID_FIXTURES "/scenarios", 20, 20260315);
  report(r.ok() && r.combos == 20 && r.decorations > 0, "cli-service-parity",
         std::to_string(r.combos - r.mismatches) + "/" + std::to_string(r.combos) + " combos byte-identical, " +
             std::to_string(r.decorations) + " decorations compared" +
             (r.first_failure.empty() ? "" : " first: " + r.first_failure));
}

void tolerant() {
  const auto r = impid_test::run_tolerant(IMPID_FIXTURES "/tolerant/InventoryService.java");
  report(r.ok() && r.lines >= 1000, "tolerant-parse",
         std::to_string(r.lines) + " lines, " + std::to_string(r.occurrences) + " occurrences, " +
             std::to_string(r.decorations) + " decorations, " + std::to_string(r.bad_spans) + " out-of-bounds spans" +
             (r.error.empty() ? "" : ", aborted: " + r.error));
}

}  // namespace

int main() {
  goldens();
  scenarios();
  properties();
  parity();
  tolerant();
  return failures == 0 ? 0 : 1;
}
