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

#include "spatialqa/stats.h"

#include <cstdio>

#include "spatialqa/errors.h"
#include "spatialqa/tokenizer.h"

namespace spatialqa {
namespace {

std::string FoldCase(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// Counts for one document; the averages are filled in after merging.
CorpusStats DocumentStats(const Document &doc) {
  CorpusStats s;
  s.documents = 1;
  Utf8Text text(doc.text);
  std::vector<Fragment> tokens = Tokenize(text);
  s.tokens = static_cast<int64_t>(tokens.size());
  // Sentences holding at least one token; blank lines do not count.
  size_t t = 0;
  for (const Fragment &sentence : SplitSentences(text)) {
    while (t < tokens.size() && tokens[t].end <= sentence.start) ++t;
    if (t < tokens.size() && tokens[t].start < sentence.end) ++s.sentences;
  }
  for (const EntityAnnotation &e : doc.entities) {
    ++s.entity_counts[Index(e.type)];
    if (e.type == EntityType::kSpatialTrigger) {
      ++s.trigger_count;
      s.trigger_surfaces.insert(FoldCase(e.surface));
    }
  }
  for (const FrameElementInstance &el : doc.elements) {
    ++s.element_counts[Index(el.element)];
  }
  return s;
}

void Merge(CorpusStats &into, const CorpusStats &s) {
  into.documents += s.documents;
  into.tokens += s.tokens;
  into.sentences += s.sentences;
  into.trigger_count += s.trigger_count;
  for (int i = 0; i < kNumEntityTypes; ++i) into.entity_counts[i] += s.entity_counts[i];
  for (int i = 0; i < kNumElementTypes; ++i) into.element_counts[i] += s.element_counts[i];
  into.trigger_surfaces.insert(s.trigger_surfaces.begin(), s.trigger_surfaces.end());
}

}  // namespace

CorpusStats ComputeStats(const Corpus &corpus, Execution execution) {
  const auto &docs = corpus.documents;
  if (docs.empty()) throw Error(ErrorCode::kEmptyCorpus, "no documents");
  const int64_t n = static_cast<int64_t>(docs.size());
  std::vector<CorpusStats> partial(docs.size());
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (int64_t i = 0; i < n; ++i) partial[i] = DocumentStats(docs[i]);
  } else {
    for (int64_t i = 0; i < n; ++i) partial[i] = DocumentStats(docs[i]);
  }
  CorpusStats total;
  for (const CorpusStats &s : partial) Merge(total, s);
  total.unique_trigger_count = static_cast<int64_t>(total.trigger_surfaces.size());
  total.avg_note_tokens = static_cast<double>(total.tokens) / total.documents;
  if (total.sentences > 0) {
    total.avg_sentence_tokens = static_cast<double>(total.tokens) / total.sentences;
  }
  return total;
}

nlohmann::json ToJson(const CorpusStats &stats) {
  nlohmann::json entities = nlohmann::json::object();
  for (EntityType t : AllEntityTypes()) {
    entities[std::string(Name(t))] = stats.entity_counts[Index(t)];
  }
  nlohmann::json elements = nlohmann::json::object();
  for (ElementType e : AllElementTypes()) {
    elements[std::string(Name(e))] = stats.element_counts[Index(e)];
  }
  return {{"documents", stats.documents},
          {"tokens", stats.tokens},
          {"sentences", stats.sentences},
          {"avg_note_tokens", stats.avg_note_tokens},
          {"avg_sentence_tokens", stats.avg_sentence_tokens},
          {"trigger_count", stats.trigger_count},
          {"unique_trigger_count", stats.unique_trigger_count},
          {"entity_counts", entities},
          {"element_counts", elements}};
}

std::string FormatStats(const CorpusStats &stats) {
  std::string out;
  char line[128];
  auto row = [&](const char *label, std::string_view name, double value,
                 bool integral) {
    if (integral) {
      std::snprintf(line, sizeof(line), "%-22s %-20.*s %10lld\n", label,
                    static_cast<int>(name.size()), name.data(),
                    static_cast<long long>(value));
    } else {
      std::snprintf(line, sizeof(line), "%-22s %-20.*s %10.2f\n", label,
                    static_cast<int>(name.size()), name.data(), value);
    }
    out += line;
  };
  row("Corpus", "documents", stats.documents, true);
  row("", "tokens", stats.tokens, true);
  row("", "sentences", stats.sentences, true);
  row("", "avg note tokens", stats.avg_note_tokens, false);
  row("", "avg sentence tokens", stats.avg_sentence_tokens, false);
  row("", "spatial triggers", stats.trigger_count, true);
  row("", "unique triggers", stats.unique_trigger_count, true);
  const char *label = "Entity";
  for (EntityType t : AllEntityTypes()) {
    row(label, Name(t), stats.entity_counts[Index(t)], true);
    label = "";
  }
  label = "Frame element";
  for (ElementType e : AllElementTypes()) {
    row(label, Name(e), stats.element_counts[Index(e)], true);
    label = "";
  }
  return out;
}

}  // namespace spatialqa
