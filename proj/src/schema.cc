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

#include "spatialqa/schema.h"

#include <fstream>
#include <utility>

#include "spatialqa/errors.h"

namespace spatialqa {
namespace {

constexpr std::array<EntityType, kNumEntityTypes> kEntityTypes = {
    EntityType::kSpatialTrigger,     EntityType::kFinding,
    EntityType::kAnatomy,            EntityType::kDevice,
    EntityType::kLocationDescriptor, EntityType::kOtherDescriptor,
    EntityType::kAssertion,          EntityType::kQuantity,
    EntityType::kDrug,               EntityType::kProcedure,
};

constexpr std::array<std::string_view, kNumEntityTypes> kEntityNames = {
    "SpatialTrigger",     "Finding",         "Anatomy",   "Device",
    "LocationDescriptor", "OtherDescriptor", "Assertion", "Quantity",
    "Drug",               "Procedure",
};

constexpr std::array<std::string_view, kNumElementTypes> kElementNames = {
    "Figure",      "Ground",           "Hedge",
    "Diagnosis",   "RelativePosition", "Reason",
    "Medication",  "Morphologic",      "SizeDesc",
    "DistributionPattern", "Composition", "Laterality",
    "Size",        "ImpactOnSide",     "Direction",
    "SpecificLocation",    "Status",   "Quantity",
    "Temporal",    "Negation",         "Pathphysio",
    "Certainty",   "AssociatedDiagnosis", "Value",
};

const std::array<ElementType, kNumElementTypes> &ElementTypeList() {
  static const auto *list = [] {
    auto *l = new std::array<ElementType, kNumElementTypes>;
    for (int i = 0; i < kNumElementTypes; ++i) {
      (*l)[i] = static_cast<ElementType>(i);
    }
    return l;
  }();
  return *list;
}

constexpr std::pair<std::string_view, EntityType> kEntityAliases[] = {
    {"Spatial trigger", EntityType::kSpatialTrigger},
    {"Spatial Trigger", EntityType::kSpatialTrigger},
    {"Location descriptor", EntityType::kLocationDescriptor},
    {"Location Descriptor", EntityType::kLocationDescriptor},
    {"Other descriptor", EntityType::kOtherDescriptor},
    {"Other Descriptor", EntityType::kOtherDescriptor},
    // BRAT type names cannot contain spaces.
    {"Spatial_trigger", EntityType::kSpatialTrigger},
    {"Location_descriptor", EntityType::kLocationDescriptor},
    {"Other_descriptor", EntityType::kOtherDescriptor},
};

constexpr std::pair<std::string_view, ElementType> kElementAliases[] = {
    {"Relative Position", ElementType::kRelativePosition},
    {"Morphologic Desc", ElementType::kMorphologic},
    {"Size Desc", ElementType::kSizeDesc},
    {"Distribution Pattern", ElementType::kDistributionPattern},
    {"Composition Desc", ElementType::kComposition},
    {"Impact on Side", ElementType::kImpactOnSide},
    {"Specific location", ElementType::kSpecificLocation},
    {"Specific Location", ElementType::kSpecificLocation},
    {"LocationDesc", ElementType::kSpecificLocation},
    {"Temporal Desc", ElementType::kTemporal},
    {"PathphysioDesc", ElementType::kPathphysio},
    {"CertaintyDesc", ElementType::kCertainty},
    {"Associated Diagnosis", ElementType::kAssociatedDiagnosis},
    {"AssocDiag", ElementType::kAssociatedDiagnosis},
};

}  // namespace

std::span<const EntityType> AllEntityTypes() { return kEntityTypes; }
std::span<const ElementType> AllElementTypes() { return ElementTypeList(); }

std::string_view Name(EntityType type) { return kEntityNames[Index(type)]; }
std::string_view Name(ElementType type) { return kElementNames[Index(type)]; }
std::string_view Name(AnchorKind kind) {
  return kind == AnchorKind::kTriggerFrame ? "TriggerFrame" : "EntityFrame";
}

std::optional<EntityType> ParseEntityType(std::string_view name) {
  for (int i = 0; i < kNumEntityTypes; ++i) {
    if (kEntityNames[i] == name) return static_cast<EntityType>(i);
  }
  return std::nullopt;
}

std::optional<ElementType> ParseElementType(std::string_view name) {
  for (int i = 0; i < kNumElementTypes; ++i) {
    if (kElementNames[i] == name) return static_cast<ElementType>(i);
  }
  return std::nullopt;
}

std::optional<AnchorKind> ParseAnchorKind(std::string_view name) {
  if (name == "TriggerFrame") return AnchorKind::kTriggerFrame;
  if (name == "EntityFrame") return AnchorKind::kEntityFrame;
  return std::nullopt;
}

std::optional<EntityType> ParseEntityTypeOrAlias(std::string_view name) {
  if (auto t = ParseEntityType(name)) return t;
  for (const auto &[alias, type] : kEntityAliases) {
    if (alias == name) return type;
  }
  return std::nullopt;
}

std::optional<ElementType> ParseElementTypeOrAlias(std::string_view name) {
  if (auto t = ParseElementType(name)) return t;
  for (const auto &[alias, type] : kElementAliases) {
    if (alias == name) return type;
  }
  return std::nullopt;
}

ElementCategory CategoryOf(ElementType type) {
  return Index(type) < Index(ElementType::kStatus) ? ElementCategory::kSpatial
                                                   : ElementCategory::kDescriptive;
}

std::optional<AnchorKind> AnchorKindFor(EntityType type) {
  switch (type) {
    case EntityType::kSpatialTrigger:
      return AnchorKind::kTriggerFrame;
    case EntityType::kFinding:
    case EntityType::kProcedure:
    case EntityType::kDrug:
      return AnchorKind::kEntityFrame;
    default:
      return std::nullopt;
  }
}

AttachmentMap AttachmentMap::Default() {
  AttachmentMap map;
  EntityTypeSet any;
  any.set();
  for (ElementType e : AllElementTypes()) {
    bool trigger = e == ElementType::kFigure || e == ElementType::kGround ||
                   e == ElementType::kHedge || e == ElementType::kDiagnosis ||
                   e == ElementType::kRelativePosition ||
                   e == ElementType::kReason || e == ElementType::kMedication;
    AnchorKind kind =
        trigger ? AnchorKind::kTriggerFrame : AnchorKind::kEntityFrame;
    map.licensed_[Index(kind)][Index(e)] = any;
  }
  return map;
}

AttachmentMap AttachmentMap::FromJson(const nlohmann::json &config) {
  if (!config.is_object()) {
    throw Error(ErrorCode::kMalformedConfig, "attachment map must be an object");
  }
  AttachmentMap map;
  for (const auto &[kind_name, elements] : config.items()) {
    auto kind = ParseAnchorKind(kind_name);
    if (!kind) {
      throw Error(ErrorCode::kMalformedConfig,
                  "unknown anchor kind '" + kind_name + "'");
    }
    if (!elements.is_object()) {
      throw Error(ErrorCode::kMalformedConfig,
                  kind_name + " must map element names to filler lists");
    }
    for (const auto &[element_name, fillers] : elements.items()) {
      auto element = ParseElementTypeOrAlias(element_name);
      if (!element) {
        throw Error(ErrorCode::kMalformedConfig,
                    "unknown element '" + element_name + "'");
      }
      if (!fillers.is_array()) {
        throw Error(ErrorCode::kMalformedConfig,
                    element_name + " fillers must be a list");
      }
      EntityTypeSet allowed;
      for (const auto &f : fillers) {
        if (!f.is_string()) {
          throw Error(ErrorCode::kMalformedConfig,
                      element_name + " fillers must be strings");
        }
        const auto &name = f.get_ref<const std::string &>();
        if (name == "*") {
          allowed.set();
          continue;
        }
        auto type = ParseEntityTypeOrAlias(name);
        if (!type) {
          throw Error(ErrorCode::kMalformedConfig,
                      "unknown filler type '" + name + "'");
        }
        allowed.set(Index(*type));
      }
      if (allowed.none()) {
        throw Error(ErrorCode::kMalformedConfig,
                    element_name + " allows no filler type");
      }
      auto &slot = map.licensed_[Index(*kind)][Index(*element)];
      if (slot) {
        throw Error(ErrorCode::kMalformedConfig,
                    element_name + " listed twice under " + kind_name);
      }
      slot = allowed;
    }
  }
  for (ElementType e : AllElementTypes()) {
    if (map.AnchorKindsOf(e).empty()) {
      throw Error(ErrorCode::kMissingElement, std::string(Name(e)));
    }
  }
  return map;
}

AttachmentMap AttachmentMap::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorCode::kMalformedConfig, path + ": " + e.what());
  }
  return FromJson(j);
}

nlohmann::json AttachmentMap::ToJson() const {
  nlohmann::json j = nlohmann::json::object();
  for (int k = 0; k < kNumAnchorKinds; ++k) {
    auto kind = static_cast<AnchorKind>(k);
    nlohmann::json elements = nlohmann::json::object();
    for (ElementType e : AllElementTypes()) {
      const auto &slot = licensed_[k][Index(e)];
      if (!slot) continue;
      nlohmann::json fillers = nlohmann::json::array();
      if (slot->all()) {
        fillers.push_back("*");
      } else {
        for (EntityType t : AllEntityTypes()) {
          if (slot->test(Index(t))) fillers.push_back(std::string(Name(t)));
        }
      }
      elements[std::string(Name(e))] = fillers;
    }
    j[std::string(Name(kind))] = elements;
  }
  return j;
}

EntityTypeSet AttachmentMap::AllowedFillers(AnchorKind kind,
                                            ElementType element) const {
  const auto &slot = licensed_[Index(kind)][Index(element)];
  return slot ? *slot : EntityTypeSet();
}

std::vector<ElementType> AttachmentMap::LicensedElements(AnchorKind kind) const {
  std::vector<ElementType> out;
  for (ElementType e : AllElementTypes()) {
    if (Licenses(kind, e)) out.push_back(e);
  }
  return out;
}

std::vector<AnchorKind> AttachmentMap::AnchorKindsOf(ElementType element) const {
  std::vector<AnchorKind> out;
  for (int k = 0; k < kNumAnchorKinds; ++k) {
    if (licensed_[k][Index(element)]) out.push_back(static_cast<AnchorKind>(k));
  }
  return out;
}

}  // namespace spatialqa
