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

#include "spatialqa/query.h"

#include <fstream>
#include <set>

#include "spatialqa/errors.h"

namespace spatialqa {
namespace {

constexpr char kTurn1Prefix[] = "find all ";
constexpr char kTurn1Suffix[] = " entities in the context.";
constexpr char kTurn2Find[] = " find all ";
constexpr char kTurn2Relation[] = " entities in the context that have a ";
constexpr char kTurn2With[] = " relationship with ";
constexpr char kTurn2Entity[] = " entity ";

// Descriptions quoted from the published query table.
const std::pair<ElementType, const char *> kPublishedDescriptions[] = {
    {ElementType::kMedication,
     "Medication refers to a drug or solution that has been administered or "
     "applied to any eye location."},
    {ElementType::kImpactOnSide,
     "ImpactOnSide refers to which eye side is more impacted. Examples "
     "include right greater than left, smaller than left, and worse in the "
     "left eye."},
    {ElementType::kPathphysio,
     "Pathophysiologic descriptor refers to the functional changes that "
     "accompany a disease. Examples include autoimmune and physiologic."},
    {ElementType::kDirection,
     "Direction indicates direction of a finding. Examples include outward "
     "and to the right."},
    {ElementType::kAssociatedDiagnosis,
     "Associated diagnosis refers to the clinical condition or disease "
     "associated with a finding. This usually appears after phrases such as "
     "associated with and secondary to."},
    {ElementType::kSpecificLocation,
     "Location descriptor refers to the exact location of a finding. "
     "Examples include retrooorbital and optic disc."},
    {ElementType::kCertainty,
     "Certainty descriptor refers to uncertainty phrases describing a "
     "finding. Examples include significant and consistent with."},
    {ElementType::kValue,
     "Value refers to a visual acuity score or any measurement or ratio. "
     "Examples include 20/20, 20/40, 16, and 0.8."},
};

// Our own wording for the remaining elements.
const std::pair<ElementType, const char *> kInventedDescriptions[] = {
    {ElementType::kFigure,
     "Figure refers to the clinical finding whose location is described by a "
     "spatial trigger."},
    {ElementType::kGround,
     "Ground refers to the anatomical location where a finding is located."},
    {ElementType::kHedge,
     "Hedge refers to uncertainty phrases about the spatial relation of a "
     "spatial trigger."},
    {ElementType::kDiagnosis,
     "Diagnosis refers to a clinical condition inferred from the spatial "
     "relation of a spatial trigger."},
    {ElementType::kRelativePosition,
     "RelativePosition refers to the position of a finding relative to an "
     "anatomical location. Examples include above and near."},
    {ElementType::kReason,
     "Reason refers to the cause of the spatial relation of a spatial "
     "trigger."},
    {ElementType::kMorphologic,
     "Morphologic refers to the shape or form of a finding."},
    {ElementType::kSizeDesc,
     "SizeDesc refers to a qualitative size of a finding. Examples include "
     "small and large."},
    {ElementType::kDistributionPattern,
     "DistributionPattern refers to how a finding is spread over a location. "
     "Examples include diffuse and scattered."},
    {ElementType::kComposition,
     "Composition refers to what a finding is made of."},
    {ElementType::kLaterality,
     "Laterality refers to the eye side of a finding. Examples include left "
     "and OD."},
    {ElementType::kSize, "Size refers to a measured size of a finding."},
    {ElementType::kStatus,
     "Status refers to the severity or course of a finding. Examples include "
     "mild and stable."},
    {ElementType::kQuantity,
     "Quantity refers to the number or amount of a finding."},
    {ElementType::kTemporal,
     "Temporal refers to when a finding occurred or how long it has lasted."},
    {ElementType::kNegation,
     "Negation refers to phrases stating that a finding is absent."},
};

constexpr std::pair<ElementType, const char *> kRelationPhrases[] = {
    {ElementType::kFigure, "figure"},
    {ElementType::kGround, "ground"},
    {ElementType::kHedge, "hedge"},
    {ElementType::kDiagnosis, "diagnosis"},
    {ElementType::kRelativePosition, "relative position"},
    {ElementType::kReason, "reason"},
    {ElementType::kMedication, "medication"},
    {ElementType::kMorphologic, "morphologic"},
    {ElementType::kSizeDesc, "size descriptor"},
    {ElementType::kDistributionPattern, "distribution pattern"},
    {ElementType::kComposition, "composition"},
    {ElementType::kLaterality, "laterality"},
    {ElementType::kSize, "size"},
    {ElementType::kImpactOnSide, "impact on side"},
    {ElementType::kDirection, "direction"},
    {ElementType::kSpecificLocation, "specific location"},
    {ElementType::kStatus, "status"},
    {ElementType::kQuantity, "quantity"},
    {ElementType::kTemporal, "temporal"},
    {ElementType::kNegation, "negation"},
    {ElementType::kPathphysio, "pathophysiologic"},
    {ElementType::kCertainty, "certainty"},
    {ElementType::kAssociatedDiagnosis, "associated diagnosis"},
    {ElementType::kValue, "value"},
};

constexpr std::pair<EntityType, const char *> kEntityPhrases[] = {
    {EntityType::kSpatialTrigger, "spatial trigger"},
    {EntityType::kFinding, "clinical finding"},
    {EntityType::kAnatomy, "anatomy"},
    {EntityType::kDevice, "medical device"},
    {EntityType::kLocationDescriptor, "location descriptor"},
    {EntityType::kOtherDescriptor, "descriptor"},
    {EntityType::kAssertion, "assertion"},
    {EntityType::kQuantity, "quantity"},
    {EntityType::kDrug, "drug"},
    {EntityType::kProcedure, "procedure"},
};

QueryTemplateTable BuildDefault() {
  QueryTemplateTable t;
  for (const auto &[e, text] : kPublishedDescriptions) {
    t.element_descriptions[Index(e)] = text;
  }
  for (const auto &[e, text] : kInventedDescriptions) {
    t.element_descriptions[Index(e)] = text;
  }
  for (const auto &[e, text] : kRelationPhrases) {
    t.relation_phrases[Index(e)] = text;
  }
  for (const auto &[type, text] : kEntityPhrases) {
    t.entity_descriptions[Index(type)] = text;
    t.anchor_type_phrases[Index(type)] = text;
  }
  for (ElementType e : AllElementTypes()) {
    switch (e) {
      case ElementType::kFigure:
        t.answer_type_phrases[Index(e)] = "clinical finding";
        break;
      case ElementType::kGround:
        t.answer_type_phrases[Index(e)] = "anatomy";
        break;
      case ElementType::kDiagnosis:
        t.answer_type_phrases[Index(e)] = "diagnosis";
        break;
      case ElementType::kMedication:
        t.answer_type_phrases[Index(e)] = "drug";
        break;
      default:
        t.answer_type_phrases[Index(e)] = "descriptor";
    }
  }
  return t;
}

template <typename Enum, size_t N, typename Parse>
void ReadMapping(const nlohmann::json &j, const char *key,
                 std::array<std::string, N> &out, const Parse &parse) {
  if (!j.contains(key) || !j.at(key).is_object()) {
    throw Error(ErrorCode::kMalformedConfig,
                std::string("'") + key + "' must be an object");
  }
  std::array<bool, N> seen{};
  for (const auto &[name, value] : j.at(key).items()) {
    std::optional<Enum> type = parse(name);
    if (!type) {
      throw Error(ErrorCode::kMalformedConfig,
                  std::string(key) + ": unknown type '" + name + "'");
    }
    if (!value.is_string() || value.template get_ref<const std::string &>().empty()) {
      throw Error(ErrorCode::kMalformedConfig,
                  std::string(key) + "." + name + " must be a non-empty string");
    }
    out[Index(*type)] = value.template get<std::string>();
    seen[Index(*type)] = true;
  }
  for (size_t i = 0; i < N; ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::kMalformedConfig,
                  std::string(key) + " lacks " +
                      std::string(Name(static_cast<Enum>(i))));
    }
  }
}

template <typename Enum, size_t N>
nlohmann::json WriteMapping(const std::array<std::string, N> &values) {
  nlohmann::json j = nlohmann::json::object();
  for (size_t i = 0; i < N; ++i) {
    j[std::string(Name(static_cast<Enum>(i)))] = values[i];
  }
  return j;
}

bool Consume(std::string_view &s, std::string_view prefix) {
  if (s.substr(0, prefix.size()) != prefix) return false;
  s.remove_prefix(prefix.size());
  return true;
}

}  // namespace

const QueryTemplateTable &QueryTemplateTable::Default() {
  static const QueryTemplateTable *table = new QueryTemplateTable(BuildDefault());
  return *table;
}

QueryTemplateTable QueryTemplateTable::FromJson(const nlohmann::json &j) {
  if (!j.is_object()) {
    throw Error(ErrorCode::kMalformedConfig, "template table must be an object");
  }
  static const std::set<std::string> kKeys = {
      "entity_descriptions", "element_descriptions", "answer_type_phrases",
      "relation_phrases", "anchor_type_phrases", "invented"};
  for (const auto &[key, value] : j.items()) {
    if (!kKeys.count(key)) {
      throw Error(ErrorCode::kMalformedConfig, "unknown key '" + key + "'");
    }
  }
  QueryTemplateTable t;
  ReadMapping<EntityType>(j, "entity_descriptions", t.entity_descriptions,
                          ParseEntityTypeOrAlias);
  ReadMapping<ElementType>(j, "element_descriptions", t.element_descriptions,
                           ParseElementTypeOrAlias);
  ReadMapping<ElementType>(j, "answer_type_phrases", t.answer_type_phrases,
                           ParseElementTypeOrAlias);
  ReadMapping<ElementType>(j, "relation_phrases", t.relation_phrases,
                           ParseElementTypeOrAlias);
  ReadMapping<EntityType>(j, "anchor_type_phrases", t.anchor_type_phrases,
                          ParseEntityTypeOrAlias);
  if (j.contains("invented")) {
    const auto &inv = j.at("invented");
    if (!inv.is_array()) {
      throw Error(ErrorCode::kMalformedConfig, "'invented' must be a list");
    }
    for (const auto &name : inv) {
      if (!name.is_string() ||
          !ParseElementTypeOrAlias(name.get_ref<const std::string &>())) {
        throw Error(ErrorCode::kMalformedConfig,
                    "'invented' lists an unknown element: " + name.dump());
      }
    }
  }
  return t;
}

QueryTemplateTable QueryTemplateTable::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  try {
    return FromJson(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorCode::kMalformedConfig, path + ": " + e.what());
  }
}

nlohmann::json QueryTemplateTable::ToJson() const {
  return {
      {"entity_descriptions", WriteMapping<EntityType>(entity_descriptions)},
      {"element_descriptions", WriteMapping<ElementType>(element_descriptions)},
      {"answer_type_phrases", WriteMapping<ElementType>(answer_type_phrases)},
      {"relation_phrases", WriteMapping<ElementType>(relation_phrases)},
      {"anchor_type_phrases", WriteMapping<EntityType>(anchor_type_phrases)},
  };
}

std::string MakeTurn1Query(const QueryTemplateTable &table, EntityType type) {
  return kTurn1Prefix + table.entity_descriptions[Index(type)] + kTurn1Suffix;
}

std::string MakeTurn2Query(const QueryTemplateTable &table,
                           const AttachmentMap &map, ElementType element,
                           const EntityAnnotation &anchor) {
  auto kind = AnchorKindFor(anchor.type);
  if (!kind || !map.Licenses(*kind, element)) {
    throw Error(ErrorCode::kUnlicensedPair,
                std::string(Name(element)) + " on " +
                    std::string(Name(anchor.type)) + " anchor");
  }
  const int e = Index(element);
  std::string q = table.element_descriptions[e];
  q += kTurn2Find;
  q += table.answer_type_phrases[e];
  q += kTurn2Relation;
  q += table.relation_phrases[e];
  q += kTurn2With;
  q += table.anchor_type_phrases[Index(anchor.type)];
  q += kTurn2Entity;
  q += anchor.surface;
  q += '.';
  return q;
}

std::optional<ParsedQuery> ParseQuery(const QueryTemplateTable &table,
                                      std::string_view query) {
  for (EntityType t : AllEntityTypes()) {
    if (query == MakeTurn1Query(table, t)) {
      ParsedQuery p;
      p.turn = 1;
      p.entity_type = t;
      return p;
    }
  }
  if (query.empty() || query.back() != '.') return std::nullopt;
  for (ElementType e : AllElementTypes()) {
    std::string_view rest = query;
    const int i = Index(e);
    if (!Consume(rest, table.element_descriptions[i]) ||
        !Consume(rest, kTurn2Find) ||
        !Consume(rest, table.answer_type_phrases[i]) ||
        !Consume(rest, kTurn2Relation) ||
        !Consume(rest, table.relation_phrases[i]) ||
        !Consume(rest, kTurn2With)) {
      continue;
    }
    // Longest anchor phrase wins when one phrase prefixes another.
    std::optional<EntityType> best;
    size_t best_len = 0;
    for (EntityType t : AllEntityTypes()) {
      std::string head = table.anchor_type_phrases[Index(t)] + kTurn2Entity;
      if (rest.substr(0, head.size()) == head && head.size() > best_len) {
        best = t;
        best_len = head.size();
      }
    }
    if (!best || rest.size() <= best_len + 1) continue;
    ParsedQuery p;
    p.turn = 2;
    p.element = e;
    p.anchor_type = *best;
    p.anchor_surface =
        std::string(rest.substr(best_len, rest.size() - best_len - 1));
    return p;
  }
  return std::nullopt;
}

nlohmann::json ToJson(const QARecord &record) {
  nlohmann::json answers = nlohmann::json::array();
  for (const Fragment &f : record.answers) {
    answers.push_back({{"start", f.start}, {"end", f.end}});
  }
  return {{"record_id", record.record_id},
          {"turn", record.turn},
          {"query", record.query},
          {"context", record.context},
          {"context_offset", record.context_offset},
          {"answers", answers},
          {"anchor_id", record.anchor_id ? nlohmann::json(*record.anchor_id)
                                         : nlohmann::json(nullptr)}};
}

QARecord QARecordFromJson(const nlohmann::json &j) {
  QARecord r;
  try {
    r.record_id = j.at("record_id").get<std::string>();
    r.turn = j.at("turn").get<int>();
    r.query = j.at("query").get<std::string>();
    r.context = j.at("context").get<std::string>();
    r.context_offset = j.at("context_offset").get<int32_t>();
    for (const auto &a : j.at("answers")) {
      r.answers.push_back({a.at("start").get<int32_t>(), a.at("end").get<int32_t>()});
    }
    if (j.contains("anchor_id") && !j.at("anchor_id").is_null()) {
      r.anchor_id = j.at("anchor_id").get<std::string>();
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kMalformedLine, std::string("QA record: ") + e.what());
  }
  if (r.turn != 1 && r.turn != 2) {
    throw Error(ErrorCode::kMalformedLine, "QA record turn must be 1 or 2");
  }
  return r;
}

}  // namespace spatialqa
