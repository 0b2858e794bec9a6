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

// Type system: entity types, frame element types, the anchor
// kinds that evoke frames, and the attachment map that licenses elements on
// anchors.

#ifndef SPATIALQA_SCHEMA_H_
#define SPATIALQA_SCHEMA_H_

#include <array>
#include <bitset>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace spatialqa {

enum class EntityType : uint8_t {
  kSpatialTrigger,
  kFinding,
  kAnatomy,
  kDevice,
  kLocationDescriptor,
  kOtherDescriptor,
  kAssertion,
  kQuantity,
  kDrug,
  kProcedure,
};
inline constexpr int kNumEntityTypes = 10;

enum class ElementType : uint8_t {
  // Spatial.
  kFigure,
  kGround,
  kHedge,
  kDiagnosis,
  kRelativePosition,
  kReason,
  kMedication,
  kMorphologic,
  kSizeDesc,
  kDistributionPattern,
  kComposition,
  kLaterality,
  kSize,
  kImpactOnSide,
  kDirection,
  kSpecificLocation,
  // Descriptive.
  kStatus,
  kQuantity,
  kTemporal,
  kNegation,
  kPathphysio,
  kCertainty,
  kAssociatedDiagnosis,
  kValue,
};
inline constexpr int kNumElementTypes = 24;

enum class ElementCategory : uint8_t { kSpatial, kDescriptive };

// A frame is evoked either by a spatial trigger or by a main clinical entity
// (finding, procedure or drug).
enum class AnchorKind : uint8_t { kTriggerFrame, kEntityFrame };
inline constexpr int kNumAnchorKinds = 2;

using EntityTypeSet = std::bitset<kNumEntityTypes>;

inline int Index(EntityType t) { return static_cast<int>(t); }
inline int Index(ElementType t) { return static_cast<int>(t); }
inline int Index(AnchorKind k) { return static_cast<int>(k); }

std::span<const EntityType> AllEntityTypes();
std::span<const ElementType> AllElementTypes();

// Canonical CamelCase names.
std::string_view Name(EntityType type);
std::string_view Name(ElementType type);
std::string_view Name(AnchorKind kind);

// Strict parsers: accept only the canonical names (case-sensitive).
std::optional<EntityType> ParseEntityType(std::string_view name);
std::optional<ElementType> ParseElementType(std::string_view name);
std::optional<AnchorKind> ParseAnchorKind(std::string_view name);

// Lenient parsers: canonical names plus the spaced and abbreviated spellings
// used in annotation guidelines and result tables ("Impact on Side",
// "AssocDiag", "LocationDesc", ...).
std::optional<EntityType> ParseEntityTypeOrAlias(std::string_view name);
std::optional<ElementType> ParseElementTypeOrAlias(std::string_view name);

ElementCategory CategoryOf(ElementType type);

// The frame kind an entity of |type| can anchor, if any.
std::optional<AnchorKind> AnchorKindFor(EntityType type);

// Licenses frame elements on anchor kinds and restricts filler entity types.
// Immutable after construction.
class AttachmentMap {
 public:
  // Trigger frames license Figure, Ground, Hedge, Diagnosis,
  // RelativePosition, Reason and Medication; entity frames license the other
  // nine spatial elements and all eight descriptive ones. Any filler type.
  static AttachmentMap Default();

  // Config layout:
  //   {"TriggerFrame": {"Figure": ["*"], ...},
  //    "EntityFrame": {"Laterality": ["OtherDescriptor"], ...}}
  // "*" allows every entity type. Throws Error(kMissingElement) when an
  // element type is licensed nowhere, Error(kMalformedConfig) otherwise.
  static AttachmentMap FromJson(const nlohmann::json &config);
  static AttachmentMap Load(const std::string &path);

  nlohmann::json ToJson() const;

  bool Licenses(AnchorKind kind, ElementType element) const {
    return licensed_[Index(kind)][Index(element)].has_value();
  }

  // Allowed filler types; empty when the pair is not licensed.
  EntityTypeSet AllowedFillers(AnchorKind kind, ElementType element) const;

  std::vector<ElementType> LicensedElements(AnchorKind kind) const;
  std::vector<AnchorKind> AnchorKindsOf(ElementType element) const;

  bool operator==(const AttachmentMap &other) const = default;

 private:
  std::array<std::array<std::optional<EntityTypeSet>, kNumElementTypes>,
             kNumAnchorKinds>
      licensed_;
};

}  // namespace spatialqa

#endif  // SPATIALQA_SCHEMA_H_
