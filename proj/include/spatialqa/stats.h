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

#ifndef SPATIALQA_STATS_H_
#define SPATIALQA_STATS_H_

#include <array>
#include <cstdint>
#include <set>
#include <string>

#include "json.hpp"
#include "spatialqa/document.h"
#include "spatialqa/execution.h"

namespace spatialqa {

struct CorpusStats {
  int64_t documents = 0;
  int64_t tokens = 0;
  int64_t sentences = 0;
  double avg_note_tokens = 0;
  double avg_sentence_tokens = 0;
  int64_t trigger_count = 0;
  int64_t unique_trigger_count = 0;
  std::array<int64_t, kNumEntityTypes> entity_counts{};
  std::array<int64_t, kNumElementTypes> element_counts{};
  // Case-folded trigger surfaces.
  std::set<std::string> trigger_surfaces;
};

// Throws Error(kEmptyCorpus) for a corpus without documents.
CorpusStats ComputeStats(const Corpus &corpus,
                         Execution execution = Execution::kParallel);

nlohmann::json ToJson(const CorpusStats &stats);
std::string FormatStats(const CorpusStats &stats);

}  // namespace spatialqa

#endif  // SPATIALQA_STATS_H_
