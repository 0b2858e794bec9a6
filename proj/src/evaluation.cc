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

#include "spatialqa/evaluation.h"

#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "spatialqa/errors.h"

namespace spatialqa {
namespace {

using IdIndex = std::unordered_map<std::string_view, const EntityAnnotation *>;

IdIndex IndexIds(const Document &doc) {
  IdIndex index;
  for (const EntityAnnotation &e : doc.entities) index.emplace(e.id, &e);
  return index;
}

void AppendSpan(std::string &key, const Span &span) {
  key += span.ToString();
  key += '|';
}

std::string EntityKey(const EntityAnnotation &e) {
  std::string key;
  AppendSpan(key, e.span);
  return key;
}

std::string ElementKeyString(ElementKey mode, const EntityAnnotation &anchor,
                             const EntityAnnotation &filler) {
  std::string key;
  if (mode != ElementKey::kSpanOnly) {
    AppendSpan(key, anchor.span);
    key += std::to_string(Index(anchor.type));
    key += '|';
  }
  AppendSpan(key, filler.span);
  if (mode == ElementKey::kFull) key += std::to_string(Index(filler.type));
  return key;
}

// Per-type key sets of one document.
using KeySets = std::vector<std::unordered_set<std::string>>;

KeySets EntityKeys(const Document &doc) {
  KeySets sets(kNumEntityTypes);
  for (const EntityAnnotation &e : doc.entities) {
    sets[Index(e.type)].insert(EntityKey(e));
  }
  return sets;
}

KeySets ElementKeys(const Document &doc, ElementKey mode) {
  KeySets sets(kNumElementTypes);
  IdIndex index = IndexIds(doc);
  for (const FrameElementInstance &el : doc.elements) {
    auto a = index.find(el.anchor_id);
    auto f = index.find(el.filler_id);
    if (a == index.end() || f == index.end()) continue;
    sets[Index(el.element)].insert(ElementKeyString(mode, *a->second, *f->second));
  }
  return sets;
}

TypeTallies CompareSets(const KeySets &pred, const KeySets &gold) {
  TypeTallies tallies(pred.size());
  for (size_t t = 0; t < pred.size(); ++t) {
    int64_t tp = 0;
    for (const std::string &k : pred[t]) tp += gold[t].count(k);
    tallies[t].tp = tp;
    tallies[t].fp = static_cast<int64_t>(pred[t].size()) - tp;
    tallies[t].fn = static_cast<int64_t>(gold[t].size()) - tp;
  }
  return tallies;
}

template <typename PerDoc>
TypeTallies SumOverDocuments(const std::vector<DocumentPair> &pairs,
                             size_t types, Execution execution,
                             const PerDoc &per_doc) {
  const int64_t n = static_cast<int64_t>(pairs.size());
  std::vector<TypeTallies> partial(pairs.size());
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (int64_t i = 0; i < n; ++i) partial[i] = per_doc(pairs[i]);
  } else {
    for (int64_t i = 0; i < n; ++i) partial[i] = per_doc(pairs[i]);
  }
  TypeTallies total(types);
  for (const TypeTallies &p : partial) {
    for (size_t t = 0; t < types; ++t) total[t] += p[t];
  }
  return total;
}

// Structured element used by the quadratic reference.
struct ResolvedElement {
  ElementType element;
  const EntityAnnotation *anchor;
  const EntityAnnotation *filler;
};

bool SameElement(const ResolvedElement &x, const ResolvedElement &y,
                 ElementKey mode) {
  if (x.element != y.element) return false;
  if (x.filler->span != y.filler->span) return false;
  if (mode == ElementKey::kSpanOnly) return true;
  if (x.anchor->span != y.anchor->span || x.anchor->type != y.anchor->type) {
    return false;
  }
  return mode != ElementKey::kFull || x.filler->type == y.filler->type;
}

template <typename T, typename Eq>
std::vector<T> Unique(const std::vector<T> &items, const Eq &eq) {
  std::vector<T> out;
  for (const T &item : items) {
    bool seen = false;
    for (const T &u : out) seen = seen || eq(item, u);
    if (!seen) out.push_back(item);
  }
  return out;
}

template <typename T, typename Eq>
Tally MatchPairwise(const std::vector<T> &pred, const std::vector<T> &gold,
                    const Eq &eq) {
  std::vector<T> p = Unique(pred, eq);
  std::vector<T> g = Unique(gold, eq);
  Tally t;
  for (const T &x : p) {
    bool hit = false;
    for (const T &y : g) hit = hit || eq(x, y);
    t.tp += hit;
  }
  t.fp = static_cast<int64_t>(p.size()) - t.tp;
  t.fn = static_cast<int64_t>(g.size()) - t.tp;
  return t;
}

std::vector<ResolvedElement> Resolve(const Document &doc) {
  std::vector<ResolvedElement> out;
  for (const FrameElementInstance &el : doc.elements) {
    const EntityAnnotation *a = doc.FindEntity(el.anchor_id);
    const EntityAnnotation *f = doc.FindEntity(el.filler_id);
    if (a && f) out.push_back({el.element, a, f});
  }
  return out;
}

MetricsReport ElementReportFor(const TypeTallies &tallies,
                               const EvaluationOptions &options) {
  return ElementReport(tallies, options.map, options.report);
}

}  // namespace

std::vector<DocumentPair> AlignDocuments(const std::vector<Document> &pred,
                                         const std::vector<Document> &gold) {
  std::map<std::string_view, const Document *> by_id;
  for (const Document &d : pred) {
    if (!by_id.emplace(d.doc_id, &d).second) {
      throw Error(ErrorCode::kCorpusMismatch, "duplicate doc_id " + d.doc_id);
    }
  }
  if (pred.size() != gold.size()) {
    throw Error(ErrorCode::kCorpusMismatch,
                std::to_string(pred.size()) + " predicted vs " +
                    std::to_string(gold.size()) + " gold documents");
  }
  std::vector<DocumentPair> pairs;
  pairs.reserve(gold.size());
  for (const Document &g : gold) {
    auto it = by_id.find(g.doc_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kCorpusMismatch, "no prediction for " + g.doc_id);
    }
    if (it->second->text != g.text) {
      throw Error(ErrorCode::kCorpusMismatch, "text differs for " + g.doc_id);
    }
    pairs.push_back({it->second, &g});
    by_id.erase(it);
  }
  return pairs;
}

TypeTallies TallyEntities(const std::vector<DocumentPair> &pairs,
                          Execution execution) {
  return SumOverDocuments(pairs, kNumEntityTypes, execution,
                          [](const DocumentPair &p) {
                            return CompareSets(EntityKeys(*p.pred),
                                               EntityKeys(*p.gold));
                          });
}

TypeTallies TallyElements(const std::vector<DocumentPair> &pairs,
                          ElementKey key, Execution execution) {
  return SumOverDocuments(pairs, kNumElementTypes, execution,
                          [key](const DocumentPair &p) {
                            return CompareSets(ElementKeys(*p.pred, key),
                                               ElementKeys(*p.gold, key));
                          });
}

TypeTallies BruteForceEntityTallies(const std::vector<DocumentPair> &pairs) {
  TypeTallies total(kNumEntityTypes);
  auto eq = [](const EntityAnnotation &x, const EntityAnnotation &y) {
    return x.span == y.span;
  };
  for (const DocumentPair &p : pairs) {
    for (EntityType t : AllEntityTypes()) {
      std::vector<EntityAnnotation> pred, gold;
      for (const EntityAnnotation &e : p.pred->entities) {
        if (e.type == t) pred.push_back(e);
      }
      for (const EntityAnnotation &e : p.gold->entities) {
        if (e.type == t) gold.push_back(e);
      }
      total[Index(t)] += MatchPairwise(pred, gold, eq);
    }
  }
  return total;
}

TypeTallies BruteForceElementTallies(const std::vector<DocumentPair> &pairs,
                                     ElementKey key) {
  TypeTallies total(kNumElementTypes);
  auto eq = [key](const ResolvedElement &x, const ResolvedElement &y) {
    return SameElement(x, y, key);
  };
  for (const DocumentPair &p : pairs) {
    std::vector<ResolvedElement> pred_all = Resolve(*p.pred);
    std::vector<ResolvedElement> gold_all = Resolve(*p.gold);
    for (ElementType t : AllElementTypes()) {
      std::vector<ResolvedElement> pred, gold;
      for (const auto &r : pred_all) {
        if (r.element == t) pred.push_back(r);
      }
      for (const auto &r : gold_all) {
        if (r.element == t) gold.push_back(r);
      }
      total[Index(t)] += MatchPairwise(pred, gold, eq);
    }
  }
  return total;
}

RowGroup ElementGroup(ElementType element, const AttachmentMap &map) {
  if (map.Licenses(AnchorKind::kTriggerFrame, element)) {
    return RowGroup::kSpatialTrigger;
  }
  return CategoryOf(element) == ElementCategory::kSpatial
             ? RowGroup::kSpatialEntity
             : RowGroup::kDescEntity;
}

MetricsReport EntityReport(const TypeTallies &tallies,
                           const ReportOptions &options) {
  std::vector<NamedTally> named;
  for (EntityType t : AllEntityTypes()) {
    named.push_back({std::string(Name(t)), RowGroup::kEntity, tallies[Index(t)]});
  }
  return BuildReport(named, options);
}

MetricsReport ElementReport(const TypeTallies &tallies,
                            const AttachmentMap &map,
                            const ReportOptions &options) {
  std::vector<NamedTally> named;
  for (RowGroup group : {RowGroup::kSpatialTrigger, RowGroup::kSpatialEntity,
                         RowGroup::kDescEntity}) {
    for (ElementType e : AllElementTypes()) {
      if (ElementGroup(e, map) != group) continue;
      named.push_back({std::string(Name(e)), group, tallies[Index(e)]});
    }
  }
  return BuildReport(named, options);
}

MetricsReport EvaluateEntities(const Corpus &pred, const Corpus &gold,
                               const EvaluationOptions &options) {
  auto pairs = AlignDocuments(pred.documents, gold.documents);
  return EntityReport(TallyEntities(pairs, options.execution), options.report);
}

MetricsReport EvaluateElements(const Corpus &pred, const Corpus &gold,
                               AnchorMatching matching,
                               const EvaluationOptions &options) {
  auto pairs = AlignDocuments(pred.documents, gold.documents);
  return ElementReportFor(
      TallyElements(pairs, KeyFor(matching), options.execution), options);
}

EvaluationReports Evaluate(const Corpus &pred, const Corpus &gold,
                           const EvaluationOptions &options) {
  auto pairs = AlignDocuments(pred.documents, gold.documents);
  EvaluationReports r;
  r.entities =
      EntityReport(TallyEntities(pairs, options.execution), options.report);
  r.elements_strict = ElementReportFor(
      TallyElements(pairs, ElementKey::kStrict, options.execution), options);
  r.elements_span_only = ElementReportFor(
      TallyElements(pairs, ElementKey::kSpanOnly, options.execution), options);
  return r;
}

EvaluationReports BruteForceCheck(const Corpus &pred, const Corpus &gold,
                                  const EvaluationOptions &options) {
  auto pairs = AlignDocuments(pred.documents, gold.documents);
  EvaluationReports r;
  r.entities = EntityReport(BruteForceEntityTallies(pairs), options.report);
  r.elements_strict = ElementReportFor(
      BruteForceElementTallies(pairs, ElementKey::kStrict), options);
  r.elements_span_only = ElementReportFor(
      BruteForceElementTallies(pairs, ElementKey::kSpanOnly), options);
  return r;
}

}  // namespace spatialqa
