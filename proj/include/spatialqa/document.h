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

#ifndef SPATIALQA_DOCUMENT_H_
#define SPATIALQA_DOCUMENT_H_

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "spatialqa/schema.h"
#include "spatialqa/utf8.h"

namespace spatialqa {

// Half-open code point range.
struct Fragment {
  int32_t start = 0;
  int32_t end = 0;

  auto operator<=>(const Fragment &) const = default;
};

// Annotation extent. Fragments are sorted, non-empty and non-overlapping;
// more than one fragment encodes a discontinuous span.
struct Span {
  std::vector<Fragment> fragments;

  Span() = default;
  Span(int32_t start, int32_t end) : fragments{{start, end}} {}
  explicit Span(std::vector<Fragment> f) : fragments(std::move(f)) {}

  int32_t begin() const { return fragments.empty() ? 0 : fragments.front().start; }
  int32_t end() const { return fragments.empty() ? 0 : fragments.back().end; }
  bool contiguous() const { return fragments.size() == 1; }

  // Sorted, non-empty, non-overlapping and within [0, length].
  bool WellFormed(int32_t length) const;

  // "s e;s e" as written in BRAT T-lines.
  std::string ToString() const;

  auto operator<=>(const Span &) const = default;
};

struct EntityAnnotation {
  std::string id;
  EntityType type = EntityType::kFinding;
  Span span;
  std::string surface;

  bool operator==(const EntityAnnotation &) const = default;
};

// A frame element filled by |filler_id| on the frame evoked by |anchor_id|.
struct FrameElementInstance {
  ElementType element = ElementType::kFigure;
  std::string anchor_id;
  std::string filler_id;

  bool operator==(const FrameElementInstance &) const = default;
};

struct Document {
  std::string doc_id;
  std::string text;
  std::vector<EntityAnnotation> entities;
  std::vector<FrameElementInstance> elements;

  const EntityAnnotation *FindEntity(std::string_view id) const;

  bool operator==(const Document &) const = default;
};

// Documents ordered by doc_id. |second_layer| is either empty or holds an
// independent annotation of the same texts, aligned by position.
struct Corpus {
  std::vector<Document> documents;
  std::vector<Document> second_layer;

  bool has_second_layer() const { return !second_layer.empty(); }
};

// Fragment slices joined by a single space.
std::string SurfaceOf(const Utf8Text &text, const Span &span);

// Canonical order: entities by (span, type, id); elements by
// (element, anchor, filler). Equality of canonicalized documents is the
// round-trip notion of equality.
void Canonicalize(Document &doc);
Document Canonicalized(Document doc);

// Sorts documents (and the aligned second layer) by doc_id.
void SortByDocId(Corpus &corpus);

}  // namespace spatialqa

#endif  // SPATIALQA_DOCUMENT_H_
