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

#include "spatialqa/validation.h"

#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "spatialqa/brat.h"
#include "spatialqa/errors.h"

namespace spatialqa {

std::string_view ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kMalformedLine: return "MalformedLine";
    case ViolationKind::kUnknownEntityType: return "UnknownEntityType";
    case ViolationKind::kUnknownElementType: return "UnknownElementType";
    case ViolationKind::kDuplicateId: return "DuplicateId";
    case ViolationKind::kSpanOutOfBounds: return "SpanOutOfBounds";
    case ViolationKind::kSurfaceMismatch: return "SurfaceMismatch";
    case ViolationKind::kDanglingReference: return "DanglingReference";
    case ViolationKind::kSelfReference: return "SelfReference";
    case ViolationKind::kInvalidAnchor: return "InvalidAnchor";
    case ViolationKind::kUnlicensedElement: return "UnlicensedElement";
    case ViolationKind::kDisallowedFiller: return "DisallowedFiller";
    case ViolationKind::kDuplicateAnnotation: return "DuplicateAnnotation";
  }
  return "Unknown";
}

std::vector<Violation> ValidateDocument(const Document &doc,
                                        const AttachmentMap &map) {
  std::vector<Violation> out;
  auto add = [&](ViolationKind kind, std::string where, std::string message) {
    out.push_back({kind, doc.doc_id, std::move(where), std::move(message)});
  };

  // Text that is not UTF-8 leaves nothing to check spans against.
  std::optional<Utf8Text> text;
  try {
    text.emplace(doc.text);
  } catch (const Error &e) {
    add(ViolationKind::kMalformedLine, "text", e.detail());
  }
  const int32_t length = text ? text->length() : 0;

  std::map<std::string_view, const EntityAnnotation *> by_id;
  std::set<std::pair<Span, EntityType>> seen;
  for (const EntityAnnotation &e : doc.entities) {
    if (!by_id.emplace(e.id, &e).second) {
      add(ViolationKind::kDuplicateId, e.id, "entity id used more than once");
      continue;
    }
    if (!text || !e.span.WellFormed(length)) {
      add(ViolationKind::kSpanOutOfBounds, e.id,
          "span " + e.span.ToString() + " outside text of length " +
              std::to_string(length));
      continue;
    }
    std::string surface = SurfaceOf(*text, e.span);
    if (surface != e.surface) {
      add(ViolationKind::kSurfaceMismatch, e.id,
          "surface '" + e.surface + "' but text has '" + surface + "'");
    }
    if (!seen.emplace(e.span, e.type).second) {
      add(ViolationKind::kDuplicateAnnotation, e.id,
          std::string(Name(e.type)) + " " + e.span.ToString() +
              " annotated twice");
    }
  }

  std::set<std::tuple<ElementType, std::string_view, std::string_view>> links;
  for (const FrameElementInstance &el : doc.elements) {
    std::string where = std::string(Name(el.element)) + "(" + el.anchor_id +
                        "," + el.filler_id + ")";
    auto anchor_it = by_id.find(el.anchor_id);
    auto filler_it = by_id.find(el.filler_id);
    bool dangling = false;
    if (anchor_it == by_id.end()) {
      add(ViolationKind::kDanglingReference, where,
          "anchor " + el.anchor_id + " does not exist");
      dangling = true;
    }
    if (filler_it == by_id.end()) {
      add(ViolationKind::kDanglingReference, where,
          "filler " + el.filler_id + " does not exist");
      dangling = true;
    }
    if (el.anchor_id == el.filler_id) {
      add(ViolationKind::kSelfReference, where, "anchor is its own filler");
    }
    if (!links.emplace(el.element, el.anchor_id, el.filler_id).second) {
      add(ViolationKind::kDuplicateAnnotation, where, "element repeated");
    }
    if (dangling) continue;

    const EntityAnnotation &anchor = *anchor_it->second;
    const EntityAnnotation &filler = *filler_it->second;
    auto kind = AnchorKindFor(anchor.type);
    if (!kind) {
      add(ViolationKind::kInvalidAnchor, where,
          std::string(Name(anchor.type)) + " cannot evoke a frame");
      continue;
    }
    if (!map.Licenses(*kind, el.element)) {
      add(ViolationKind::kUnlicensedElement, where,
          std::string(Name(el.element)) + " is not licensed on " +
              std::string(Name(*kind)));
      continue;
    }
    if (!map.AllowedFillers(*kind, el.element).test(Index(filler.type))) {
      add(ViolationKind::kDisallowedFiller, where,
          std::string(Name(filler.type)) + " may not fill " +
              std::string(Name(el.element)));
    }
  }
  return out;
}

std::vector<Violation> ValidateBrat(std::string_view doc_id,
                                    std::string_view txt, std::string_view ann,
                                    const AttachmentMap &map) {
  LenientParse parsed = ParseBratLenient(txt, ann, std::string(doc_id));
  std::vector<Violation> out = std::move(parsed.issues);
  for (Violation &v : ValidateDocument(parsed.doc, map)) {
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace spatialqa
