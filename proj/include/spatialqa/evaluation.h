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

// Exact-match scoring of predicted against gold annotations.
//
// Entities match on identical (span fragments, type). Frame elements match
// according to ElementKey. Annotations are scored as sets: a repeated
// identical annotation counts once.

#ifndef SPATIALQA_EVALUATION_H_
#define SPATIALQA_EVALUATION_H_

#include <vector>

#include "spatialqa/document.h"
#include "spatialqa/execution.h"
#include "spatialqa/metrics.h"
#include "spatialqa/schema.h"

namespace spatialqa {

enum class ElementKey {
  // (element, anchor span, anchor type, filler span)
  kStrict,
  // (element, filler span); the anchor is ignored.
  kSpanOnly,
  // (element, anchor span+type, filler span+type); used for agreement.
  kFull,
};

enum class AnchorMatching { kStrict, kSpanOnly };

inline ElementKey KeyFor(AnchorMatching m) {
  return m == AnchorMatching::kStrict ? ElementKey::kStrict
                                      : ElementKey::kSpanOnly;
}

// Per-type tallies, indexed by Index(EntityType) or Index(ElementType).
using TypeTallies = std::vector<Tally>;

// Pairs documents by doc_id. Throws Error(kCorpusMismatch) when the id sets
// or the texts differ.
struct DocumentPair {
  const Document *pred;
  const Document *gold;
};
std::vector<DocumentPair> AlignDocuments(const std::vector<Document> &pred,
                                         const std::vector<Document> &gold);

// Hash-set kernels; per-document tallies are summed in document order.
TypeTallies TallyEntities(const std::vector<DocumentPair> &pairs,
                          Execution execution);
TypeTallies TallyElements(const std::vector<DocumentPair> &pairs,
                          ElementKey key, Execution execution);

// Quadratic reference: deduplicates and matches by pairwise comparison of
// the structured annotations, without hashing or key strings.
TypeTallies BruteForceEntityTallies(const std::vector<DocumentPair> &pairs);
TypeTallies BruteForceElementTallies(const std::vector<DocumentPair> &pairs,
                                     ElementKey key);

// Table grouping of an element: Spatial(sptr) when the map licenses it on
// trigger frames, otherwise Spatial(entity) or Desc(entity).
RowGroup ElementGroup(ElementType element, const AttachmentMap &map);

MetricsReport EntityReport(const TypeTallies &tallies,
                           const ReportOptions &options = {});
MetricsReport ElementReport(const TypeTallies &tallies,
                            const AttachmentMap &map,
                            const ReportOptions &options = {});

struct EvaluationOptions {
  Execution execution = Execution::kParallel;
  ReportOptions report;
  // Only used for row grouping.
  AttachmentMap map = AttachmentMap::Default();
};

MetricsReport EvaluateEntities(const Corpus &pred, const Corpus &gold,
                               const EvaluationOptions &options = {});
MetricsReport EvaluateElements(const Corpus &pred, const Corpus &gold,
                               AnchorMatching matching,
                               const EvaluationOptions &options = {});

struct EvaluationReports {
  MetricsReport entities;
  MetricsReport elements_strict;
  MetricsReport elements_span_only;
};

EvaluationReports Evaluate(const Corpus &pred, const Corpus &gold,
                           const EvaluationOptions &options = {});

// Same reports computed through the quadratic reference.
EvaluationReports BruteForceCheck(const Corpus &pred, const Corpus &gold,
                                  const EvaluationOptions &options = {});

}  // namespace spatialqa

#endif  // SPATIALQA_EVALUATION_H_
