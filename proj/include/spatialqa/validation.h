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

#ifndef SPATIALQA_VALIDATION_H_
#define SPATIALQA_VALIDATION_H_

#include <string>
#include <string_view>
#include <vector>

#include "spatialqa/document.h"
#include "spatialqa/schema.h"

namespace spatialqa {

enum class ViolationKind {
  kMalformedLine,
  kUnknownEntityType,
  kUnknownElementType,
  kDuplicateId,
  kSpanOutOfBounds,
  kSurfaceMismatch,
  kDanglingReference,
  kSelfReference,
  kInvalidAnchor,
  kUnlicensedElement,
  kDisallowedFiller,
  kDuplicateAnnotation,
};

std::string_view ViolationKindName(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string doc_id;
  // Annotation id (T/R id) or "line N" for line-level problems.
  std::string where;
  std::string message;
};

// Every schema violation in |doc|: malformed or out-of-bounds spans, surface
// mismatches, duplicate ids, dangling or self references, anchors that cannot
// evoke a frame, elements not licensed for their anchor kind, filler types
// outside the map's restriction, and the same (span, type) annotated twice.
std::vector<Violation> ValidateDocument(const Document &doc,
                                        const AttachmentMap &map);

// Violations of a BRAT pair, including the ones a typed Document cannot
// carry (unknown type names, malformed lines).
std::vector<Violation> ValidateBrat(std::string_view doc_id,
                                    std::string_view txt, std::string_view ann,
                                    const AttachmentMap &map);

}  // namespace spatialqa

#endif  // SPATIALQA_VALIDATION_H_
