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

#include "spatialqa/document.h"

#include <algorithm>
#include <map>
#include <tuple>

namespace spatialqa {

bool Span::WellFormed(int32_t length) const {
  if (fragments.empty()) return false;
  int32_t prev_end = -1;
  for (const Fragment &f : fragments) {
    if (f.start < 0 || f.start >= f.end || f.end > length) return false;
    if (f.start < prev_end) return false;
    prev_end = f.end;
  }
  return true;
}

std::string Span::ToString() const {
  std::string s;
  for (const Fragment &f : fragments) {
    if (!s.empty()) s += ';';
    s += std::to_string(f.start);
    s += ' ';
    s += std::to_string(f.end);
  }
  return s;
}

const EntityAnnotation *Document::FindEntity(std::string_view id) const {
  for (const EntityAnnotation &e : entities) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::string SurfaceOf(const Utf8Text &text, const Span &span) {
  std::string s;
  for (size_t i = 0; i < span.fragments.size(); ++i) {
    if (i > 0) s += ' ';
    s += text.Slice(span.fragments[i].start, span.fragments[i].end);
  }
  return s;
}

// Entities by (span, type, id); elements by (element, anchor, filler) where
// anchor and filler compare by position in the sorted entity list, so the
// order does not depend on how ids happen to be numbered.
void Canonicalize(Document &doc) {
  std::sort(doc.entities.begin(), doc.entities.end(),
            [](const EntityAnnotation &a, const EntityAnnotation &b) {
              return std::tie(a.span, a.type, a.id) <
                     std::tie(b.span, b.type, b.id);
            });
  std::map<std::string, size_t, std::less<>> rank;
  for (size_t i = 0; i < doc.entities.size(); ++i) {
    rank.emplace(doc.entities[i].id, i);
  }
  auto rank_of = [&](const std::string &id) {
    auto it = rank.find(id);
    return it == rank.end() ? doc.entities.size() : it->second;
  };
  std::sort(doc.elements.begin(), doc.elements.end(),
            [&](const FrameElementInstance &a, const FrameElementInstance &b) {
              auto ka = std::make_tuple(a.element, rank_of(a.anchor_id),
                                        rank_of(a.filler_id), a.anchor_id,
                                        a.filler_id);
              auto kb = std::make_tuple(b.element, rank_of(b.anchor_id),
                                        rank_of(b.filler_id), b.anchor_id,
                                        b.filler_id);
              return ka < kb;
            });
}

Document Canonicalized(Document doc) {
  Canonicalize(doc);
  return doc;
}

void SortByDocId(Corpus &corpus) {
  auto by_id = [](const Document &a, const Document &b) {
    return a.doc_id < b.doc_id;
  };
  std::stable_sort(corpus.documents.begin(), corpus.documents.end(), by_id);
  std::stable_sort(corpus.second_layer.begin(), corpus.second_layer.end(),
                   by_id);
}

}  // namespace spatialqa
