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

// Query construction for the two extraction turns.
//
// Turn 1 asks for all entities of one type:
//   find all <entity description> entities in the context.
//
// Turn 2 asks for the fillers of one frame element on one anchor, prefixed
// with a description of the element:
//   <element description> find all <answer type> entities in the context
//   that have a <relation phrase> relationship with <anchor type> entity
//   <anchor surface>.

#ifndef SPATIALQA_QUERY_H_
#define SPATIALQA_QUERY_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "spatialqa/document.h"
#include "spatialqa/schema.h"

namespace spatialqa {

struct QueryTemplateTable {
  std::array<std::string, kNumEntityTypes> entity_descriptions;
  std::array<std::string, kNumElementTypes> element_descriptions;
  std::array<std::string, kNumElementTypes> answer_type_phrases;
  std::array<std::string, kNumElementTypes> relation_phrases;
  std::array<std::string, kNumEntityTypes> anchor_type_phrases;

  static const QueryTemplateTable &Default();

  // Keys: "entity_descriptions", "element_descriptions",
  // "answer_type_phrases", "relation_phrases", "anchor_type_phrases", each
  // mapping a type name to a string, plus an optional "invented" list naming
  // elements whose description is not taken from the published table. Every
  // type must be present. Throws Error(kMalformedConfig).
  static QueryTemplateTable FromJson(const nlohmann::json &j);
  static QueryTemplateTable Load(const std::string &path);
  nlohmann::json ToJson() const;

  bool operator==(const QueryTemplateTable &) const = default;
};

std::string MakeTurn1Query(const QueryTemplateTable &table, EntityType type);

// Throws Error(kUnlicensedPair) when |map| does not license |element| on the
// frame kind the anchor's type evokes.
std::string MakeTurn2Query(const QueryTemplateTable &table,
                           const AttachmentMap &map, ElementType element,
                           const EntityAnnotation &anchor);

// Inverse of the two templates.
struct ParsedQuery {
  int turn = 1;
  EntityType entity_type = EntityType::kFinding;  // turn 1
  ElementType element = ElementType::kFigure;     // turn 2
  EntityType anchor_type = EntityType::kFinding;  // turn 2
  std::string anchor_surface;                     // turn 2
};
std::optional<ParsedQuery> ParseQuery(const QueryTemplateTable &table,
                                      std::string_view query);

// Marker tokens placed around the anchor occurrence in turn-2 contexts when
// marker mode is on.
struct AnchorMarkers {
  std::string open = "[[";
  std::string close = "]]";
};

// Training/inference record. Answers are document-relative code point spans
// that lie inside [context_offset, context_offset + |context|).
struct QARecord {
  std::string record_id;
  int turn = 1;
  std::string query;
  std::string context;
  int32_t context_offset = 0;
  std::vector<Fragment> answers;
  std::optional<std::string> anchor_id;
};

nlohmann::json ToJson(const QARecord &record);
QARecord QARecordFromJson(const nlohmann::json &j);

}  // namespace spatialqa

#endif  // SPATIALQA_QUERY_H_
