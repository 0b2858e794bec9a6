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

#ifndef SPATIALQA_AGREEMENT_H_
#define SPATIALQA_AGREEMENT_H_

#include <vector>

#include "json.hpp"
#include "spatialqa/document.h"
#include "spatialqa/execution.h"
#include "spatialqa/metrics.h"

namespace spatialqa {

// Pairwise inter-annotator agreement with |layer_a| as reference:
// P = matches/|b|, R = matches/|a|. Elements match on element type plus the
// (span, type) of both anchor and filler. Both micro and macro overall
// figures are reported.
struct AgreementReport {
  MetricsReport entities;
  MetricsReport elements;
};

// Throws Error(kTextMismatch) when a document's text differs between layers
// and Error(kCorpusMismatch) when the doc_id sets differ.
AgreementReport AgreementF1(const std::vector<Document> &layer_a,
                            const std::vector<Document> &layer_b,
                            Execution execution = Execution::kParallel);

nlohmann::json ToJson(const AgreementReport &report);

}  // namespace spatialqa

#endif  // SPATIALQA_AGREEMENT_H_
