// Copyright 2026 The spatialqa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "spatialqa/metrics.h"

#include <random>

#include "test_util.h"

namespace spatialqa {
namespace {

TEST(PrfTest, ZeroDenominatorsGiveZero) {
  Prf p = ComputePrf({0, 0, 0});
  EXPECT_EQ(p.precision, 0);
  EXPECT_EQ(p.recall, 0);
  EXPECT_EQ(p.f1, 0);
  p = ComputePrf({0, 3, 0});
  EXPECT_EQ(p.precision, 0);
  EXPECT_EQ(p.f1, 0);
}

TEST(PrfTest, HalfPrecisionFullRecall) {
  Prf p = ComputePrf({1, 1, 0});
  EXPECT_DOUBLE_EQ(p.precision, 0.5);
  EXPECT_DOUBLE_EQ(p.recall, 1.0);
  EXPECT_DOUBLE_EQ(p.f1, 2.0 / 3.0);
}

TEST(PrfProperty, BoundsAndHarmonicMean) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    Tally t{static_cast<int64_t>(rng() % 20), static_cast<int64_t>(rng() % 20),
            static_cast<int64_t>(rng() % 20)};
    Prf p = ComputePrf(t);
    for (double v : {p.precision, p.recall, p.f1}) {
      EXPECT_GE(v, 0);
      EXPECT_LE(v, 1);
    }
    double expected = p.precision + p.recall == 0
                          ? 0
                          : 2 * p.precision * p.recall / (p.precision + p.recall);
    EXPECT_DOUBLE_EQ(p.f1, expected);
  }
}

MetricsReport Sample(ReportOptions options = {}) {
  return BuildReport({{"Finding", RowGroup::kEntity, {8, 2, 2}},
                      {"Anatomy", RowGroup::kEntity, {1, 0, 1}},
                      {"Device", RowGroup::kEntity, {0, 0, 0}}},
                     options);
}

TEST(ReportTest, MicroSumsAndMacroSkipsEmptyTypes) {
  MetricsReport r = Sample();
  EXPECT_EQ(r.micro.tally, (Tally{9, 2, 3}));
  EXPECT_DOUBLE_EQ(r.micro.prf.precision, 9.0 / 11.0);
  EXPECT_EQ(r.macro.types, 2);
  EXPECT_DOUBLE_EQ(r.macro.prf.recall, (0.8 + 0.5) / 2);
  EXPECT_EQ(r.rows.size(), 3u);
  ASSERT_NE(r.Find("Anatomy"), nullptr);
  EXPECT_DOUBLE_EQ(r.Find("Anatomy")->prf.precision, 1.0);

  MetricsReport all = Sample({.omit_empty_from_macro = false});
  EXPECT_EQ(all.macro.types, 3);
  EXPECT_DOUBLE_EQ(all.macro.prf.recall, (0.8 + 0.5) / 3);
  EXPECT_EQ(Sample({.omit_empty_rows = true}).rows.size(), 2u);
}

TEST(ReportTest, JsonRoundTrip) {
  MetricsReport r = Sample();
  nlohmann::json j = ToJson(r);
  EXPECT_EQ(j["rows"][0]["type"], "Finding");
  EXPECT_EQ(j["rows"][0]["group"], "Entity");
  EXPECT_EQ(j["rows"][0]["tp"], 8);
  EXPECT_EQ(j["micro"]["types"], 3);
  EXPECT_EQ(ToJson(ReportFromJson(j)), j);
  EXPECT_ANY_THROW(ReportFromJson(nlohmann::json::object()));
}

TEST(ReportTest, TableLayout) {
  std::string table = FormatTable(Sample(), "Entities");
  for (const char *s : {"Entities", "P(%)", "R(%)", "F1(%)", "Finding",
                        "80.00", "Overall", "micro", "macro"}) {
    EXPECT_NE(table.find(s), std::string::npos) << s;
  }
  EXPECT_EQ(RowGroupName(RowGroup::kSpatialTrigger), "Spatial(sptr)");
  EXPECT_EQ(RowGroupName(RowGroup::kSpatialEntity), "Spatial(entity)");
  EXPECT_EQ(RowGroupName(RowGroup::kDescEntity), "Desc(entity)");
}

}  // namespace
}  // namespace spatialqa
