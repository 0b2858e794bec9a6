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

// Two-turn extraction. Turn 1 asks for every entity of the configured types
// in each context window. Turn 2 asks, for each anchor (spatial trigger or
// finding/procedure/drug) and each element the attachment map licenses on
// it, for the element's fillers in an anchor-centered window.

#ifndef SPATIALQA_PIPELINE_H_
#define SPATIALQA_PIPELINE_H_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "spatialqa/document.h"
#include "spatialqa/errors.h"
#include "spatialqa/execution.h"
#include "spatialqa/mrc.h"
#include "spatialqa/query.h"
#include "spatialqa/schema.h"
#include "spatialqa/window.h"

namespace spatialqa {

enum class AnchorMode { kPredicted, kGold };

struct ExtractionConfig {
  std::vector<EntityType> turn1_types{AllEntityTypes().begin(),
                                      AllEntityTypes().end()};
  AttachmentMap map = AttachmentMap::Default();
  QueryTemplateTable templates = QueryTemplateTable::Default();
  WindowOptions window;
  // Where turn-2 anchors come from. Gold anchors require gold annotations on
  // the input documents.
  AnchorMode anchors = AnchorMode::kPredicted;
  // Skipping turn 1 is only meaningful with gold anchors.
  bool run_turn1 = true;
  // Wrap the anchor occurrence in the turn-2 context with marker tokens.
  bool markers = false;
  AnchorMarkers marker_tokens;
  size_t batch_size = 32;

  // Throws Error(kInvalidArgument) on inconsistent settings.
  void Check() const;
};

// Where a prediction came from.
struct Provenance {
  std::string record_id;
  std::string backend;
  int turn = 1;
  ContextWindow window;
  // Entity id (turn 1) or "Element(anchor,filler)" (turn 2), final ids.
  std::string annotation;
  // Turn 2 without markers when another anchor shares the type and surface:
  // the query cannot tell the anchors apart.
  bool ambiguous = false;
};

struct ExtractionResult {
  std::string doc_id;
  bool ok = true;
  std::optional<ErrorCode> error_code;
  std::string error;
  Document predicted;
  std::vector<Provenance> provenance;
};

nlohmann::json ToJson(const ExtractionResult &result);

struct Turn1Output {
  std::vector<EntityAnnotation> entities;
  // provenance[i] describes entities[i].
  std::vector<Provenance> provenance;
};

// Entities are ordered by (span, type) and numbered T1..Tn; exact duplicate
// (span, type) answers across windows are merged, and answers outside their
// window are dropped. Backend errors propagate as Error with the record id
// in the detail.
Turn1Output RunTurn1(const Document &doc, MrcGateway &gateway,
                     const ExtractionConfig &config);

struct Turn2Output {
  std::vector<FrameElementInstance> elements;
  // provenance[i] describes elements[i].
  std::vector<Provenance> provenance;
};

// |entities| holds the known entities of the document (anchors included);
// fillers whose span matches no known entity are appended to it as new
// entities, typed by the map's filler restriction or else Finding for
// Figure, Anatomy for Ground, Drug for Medication and OtherDescriptor for
// every other element.
Turn2Output RunTurn2(const Document &doc,
                     std::span<const EntityAnnotation> anchors,
                     std::vector<EntityAnnotation> &entities,
                     MrcGateway &gateway, const ExtractionConfig &config);

using GatewaySelector = std::function<MrcGateway &(const Document &)>;

// Runs both turns on each document. A document whose backend fails is
// reported with ok = false; the others complete. Results are in corpus
// order and identical under both execution modes.
std::vector<ExtractionResult> RunPipeline(
    const std::vector<Document> &docs, const GatewaySelector &select,
    const ExtractionConfig &config,
    Execution execution = Execution::kParallel);

// Predicted documents of the successful results.
Corpus PredictedCorpus(const std::vector<ExtractionResult> &results);

}  // namespace spatialqa

#endif  // SPATIALQA_PIPELINE_H_
