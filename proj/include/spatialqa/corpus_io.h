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

// Corpus containers on disk.
//
// BRAT directory: <doc_id>.txt with an optional <doc_id>.ann next to it
// (missing .ann means no annotations). Documents are ordered by doc_id.
//
// JSONL: one document per line,
//   {"doc_id": "...", "text": "...",
//    "entities": [{"id": "T1", "type": "Finding",
//                  "fragments": [[10, 15]], "surface": "edema"}],
//    "elements": [{"element": "Laterality", "anchor": "T1",
//                  "filler": "T2"}]}

#ifndef SPATIALQA_CORPUS_IO_H_
#define SPATIALQA_CORPUS_IO_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "spatialqa/brat.h"
#include "spatialqa/document.h"

namespace spatialqa {

std::string ReadFile(const std::string &path);
void WriteFile(const std::string &path, std::string_view content);

Corpus LoadBratDir(const std::string &dir);
std::vector<LenientParse> LoadBratDirLenient(const std::string &dir);
void SaveBratDir(const std::vector<Document> &docs, const std::string &dir);

nlohmann::json DocumentToJson(const Document &doc);
// Applies the same checks as ParseBrat.
Document DocumentFromJson(const nlohmann::json &j);

Corpus LoadJsonl(const std::string &path);
void SaveJsonl(const std::vector<Document> &docs, const std::string &path);

// Directory -> BRAT, "*.jsonl" file -> JSONL.
Corpus LoadCorpus(const std::string &path);
void SaveCorpus(const std::vector<Document> &docs, const std::string &path);

}  // namespace spatialqa

#endif  // SPATIALQA_CORPUS_IO_H_
