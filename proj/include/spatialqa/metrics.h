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

#ifndef SPATIALQA_METRICS_H_
#define SPATIALQA_METRICS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace spatialqa {

struct Tally {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;

  int64_t gold() const { return tp + fn; }
  int64_t predicted() const { return tp + fp; }

  Tally &operator+=(const Tally &o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  bool operator==(const Tally &) const = default;
};

struct Prf {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// P = tp/(tp+fp), R = tp/(tp+fn), F1 = 2PR/(P+R); each 0 when undefined.
Prf ComputePrf(const Tally &t);

// Row groups of the result tables.
enum class RowGroup { kEntity, kSpatialTrigger, kSpatialEntity, kDescEntity };
std::string_view RowGroupName(RowGroup group);

struct MetricsRow {
  std::string type;
  RowGroup group = RowGroup::kEntity;
  Tally tally;
  Prf prf;
};

struct Aggregate {
  Tally tally;
  Prf prf;
  // Rows averaged (macro) or summed (micro).
  int types = 0;
};

struct ReportOptions {
  // Rows with no gold and no predicted instance are left out of the macro
  // average; when false they count as F1 = 0.
  bool omit_empty_from_macro = true;
  // Drop such rows from the row list entirely.
  bool omit_empty_rows = false;
};

struct MetricsReport {
  std::vector<MetricsRow> rows;
  Aggregate micro;
  Aggregate macro;

  const MetricsRow *Find(std::string_view type) const;
};

struct NamedTally {
  std::string type;
  RowGroup group;
  Tally tally;
};
MetricsReport BuildReport(const std::vector<NamedTally> &tallies,
                          const ReportOptions &options = {});

nlohmann::json ToJson(const MetricsReport &report);
MetricsReport ReportFromJson(const nlohmann::json &j);

// Fixed-width table in the layout of the published result tables:
// group, type, P(%), R(%), F1, tp/fp/fn.
std::string FormatTable(const MetricsReport &report, std::string_view title);

}  // namespace spatialqa

#endif  // SPATIALQA_METRICS_H_
