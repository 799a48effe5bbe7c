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


#include <gtest/gtest.h>

#include "goldens.hpp"
#include "properties.hpp"
#include "scenarios.hpp"
#include "tolerant.hpp"

namespace {

constexpr int kCases = 200;

void expect_ok(const impid_test::PropertyResult& r) {
  EXPECT_EQ(r.violations, 0) << r.name << ": " << r.first_failure;
  EXPECT_EQ(r.cases, kCases);
}

TEST(Properties, LosslessTokenization) { expect_ok(impid_test::prop_lossless_tokenization(kCases, 101)); }
TEST(Properties, SpanSoundness) { expect_ok(impid_test::prop_span_soundness(kCases, 102)); }
TEST(Properties, ScopeResolution) { expect_ok(impid_test::prop_scope_resolution(kCases, 103)); }
TEST(Properties, ConventionRoundtrip) { expect_ok(impid_test::prop_convention_roundtrip(kCases, 104)); }
TEST(Properties, AliasConsistency) { expect_ok(impid_test::prop_alias_consistency(kCases, 105)); }
TEST(Properties, AliasInjectivity) { expect_ok(impid_test::prop_alias_injectivity(kCases, 106)); }
TEST(Properties, ProfileRoundtrip) { expect_ok(impid_test::prop_profile_roundtrip(kCases, 107)); }
TEST(Properties, SliderMonotonicity) { expect_ok(impid_test::prop_slider_monotonicity(kCases, 108)); }
TEST(Properties, CategoryExactness) { expect_ok(impid_test::prop_category_exactness(kCases, 109)); }
TEST(Properties, RendererDeterminism) { expect_ok(impid_test::prop_renderer_determinism(kCases, 110)); }
TEST(Properties, SourceRecoverability) { expect_ok(impid_test::prop_source_recoverability(kCases, 111)); }
TEST(Properties, ModelSerialization) { expect_ok(impid_test::prop_model_serialization(kCases, 112)); }
TEST(Properties, WindowMonotonicity) { expect_ok(impid_test::prop_window_monotonicity(kCases, 113)); }

TEST(Goldens, AllExact) {
  for (const auto& g : impid_test::run_goldens()) EXPECT_EQ(g.got, g.want) << g.name;
}

class Scenario : public ::testing::TestWithParam<std::string> {};

TEST_P(Scenario, MatchesExpected) {
  const auto r = impid_test::run_scenario(std::string(IMPID_FIXTURES "/scenarios/") + GetParam());
  EXPECT_TRUE(r.ok) << r.detail;
}

INSTANTIATE_TEST_SUITE_P(Catalog, Scenario,
                         ::testing::Values("expansion-hints", "abbreviation-aliases", "naming-findings", "recent-rename", "method-history", "synchronized-calls", "transaction-annotations", "risky-call", "swallowed-exception",
                                           "writer-pairing", "author-avatars"));

TEST(Tolerant, LargeFile) {
  const auto r = impid_test::run_tolerant(IMPID_FIXTURES "/tolerant/InventoryService.java");
  EXPECT_TRUE(r.error.empty()) << r.error;
  EXPECT_EQ(r.bad_spans, 0u);
  EXPECT_GE(r.lines, 1000u);
}

}  // namespace
