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

#include "spatialqa/qa_export.h"

#include <algorithm>

namespace spatialqa {
namespace {

void SortUnique(std::vector<Fragment> &answers) {
  std::sort(answers.begin(), answers.end());
  answers.erase(std::unique(answers.begin(), answers.end()), answers.end());
}

}  // namespace

std::vector<QARecord> ExportQaRecords(const Document &gold,
                                      const QueryTemplateTable &table,
                                      const AttachmentMap &map,
                                      const ExportOptions &options) {
  TokenizedText tokenized(gold.text);
  const Utf8Text &text = tokenized.text();
  std::vector<QARecord> records;
  if (text.length() == 0) return records;

  std::vector<ContextWindow> windows =
      WindowContext(tokenized, nullptr, options.window);
  for (EntityType type : options.turn1_types) {
    for (size_t k = 0; k < windows.size(); ++k) {
      const ContextWindow &w = windows[k];
      QARecord r;
      r.record_id = gold.doc_id + ":t1:" + std::string(Name(type)) + ":w" +
                    std::to_string(k);
      r.turn = 1;
      r.query = MakeTurn1Query(table, type);
      r.context = std::string(text.Slice(w.start, w.end));
      r.context_offset = w.start;
      for (const EntityAnnotation &e : gold.entities) {
        if (e.type == type && e.span.contiguous() && w.Contains(e.span)) {
          r.answers.push_back(e.span.fragments[0]);
        }
      }
      SortUnique(r.answers);
      records.push_back(std::move(r));
    }
  }

  for (const EntityAnnotation &anchor : gold.entities) {
    auto kind = AnchorKindFor(anchor.type);
    if (!kind) continue;
    ContextWindow w = WindowContext(tokenized, &anchor.span, options.window)[0];
    for (ElementType element : map.LicensedElements(*kind)) {
      QARecord r;
      r.record_id = gold.doc_id + ":t2:" + anchor.id + ":" + std::string(Name(element));
      r.turn = 2;
      r.query = MakeTurn2Query(table, map, element, anchor);
      r.context = std::string(text.Slice(w.start, w.end));
      r.context_offset = w.start;
      r.anchor_id = anchor.id;
      for (const FrameElementInstance &el : gold.elements) {
        if (el.element != element || el.anchor_id != anchor.id) continue;
        const EntityAnnotation *filler = gold.FindEntity(el.filler_id);
        if (filler && filler->span.contiguous() && w.Contains(filler->span)) {
          r.answers.push_back(filler->span.fragments[0]);
        }
      }
      SortUnique(r.answers);
      records.push_back(std::move(r));
    }
  }
  return records;
}

}  // namespace spatialqa
