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

#include "spatialqa/agreement.h"

#include <map>

#include "spatialqa/errors.h"
#include "spatialqa/evaluation.h"

namespace spatialqa {

AgreementReport AgreementF1(const std::vector<Document> &layer_a,
                            const std::vector<Document> &layer_b,
                            Execution execution) {
  std::map<std::string_view, const Document *> b_by_id;
  for (const Document &d : layer_b) b_by_id.emplace(d.doc_id, &d);
  if (b_by_id.size() != layer_b.size() || layer_a.size() != layer_b.size()) {
    throw Error(ErrorCode::kCorpusMismatch, "layers hold different documents");
  }
  // Layer b plays the prediction, layer a the reference.
  std::vector<DocumentPair> pairs;
  for (const Document &a : layer_a) {
    auto it = b_by_id.find(a.doc_id);
    if (it == b_by_id.end()) {
      throw Error(ErrorCode::kCorpusMismatch, a.doc_id + " missing from layer b");
    }
    if (it->second->text != a.text) throw Error(ErrorCode::kTextMismatch, a.doc_id);
    pairs.push_back({it->second, &a});
  }
  AgreementReport report;
  report.entities = EntityReport(TallyEntities(pairs, execution));
  report.elements = ElementReport(
      TallyElements(pairs, ElementKey::kFull, execution), AttachmentMap::Default());
  return report;
}

nlohmann::json ToJson(const AgreementReport &report) {
  return {{"entities", ToJson(report.entities)},
          {"elements", ToJson(report.elements)}};
}

}  // namespace spatialqa
