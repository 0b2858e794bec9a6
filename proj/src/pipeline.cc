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

#include "spatialqa/pipeline.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <tuple>

#include "spatialqa/corpus_io.h"

namespace spatialqa {
namespace {

struct PendingQuery {
  RequestItem item;
  ContextWindow window;
  // Turn 1.
  EntityType type = EntityType::kFinding;
  // Turn 2.
  const EntityAnnotation *anchor = nullptr;
  ElementType element = ElementType::kFigure;
  // Marker extent in context coordinates: open marker at [marker_at,
  // marker_at + open_len), close marker right after the anchor text.
  bool marked = false;
  int32_t marker_at = 0;
  int32_t anchor_len = 0;
};

// Sends |queries| in batches and hands each answer list to |consume| in
// query order. Backend errors are rethrown naming the batch's first record.
template <typename Consume>
void RunBatches(const std::vector<PendingQuery> &queries, MrcGateway &gateway,
                size_t batch_size, const Consume &consume) {
  for (size_t begin = 0; begin < queries.size(); begin += batch_size) {
    size_t end = std::min(queries.size(), begin + batch_size);
    BackendRequest request;
    for (size_t i = begin; i < end; ++i) request.push_back(queries[i].item);
    BackendResponse response;
    try {
      response = gateway.AnswerBatch(request);
    } catch (const Error &e) {
      throw Error(e.code(), request.front().id + ": " + e.detail());
    }
    for (size_t i = begin; i < end; ++i) {
      consume(queries[i], response[i - begin].answers);
    }
  }
}

std::string ContextOf(const Utf8Text &text, const ContextWindow &w) {
  return std::string(text.Slice(w.start, w.end));
}

int NextEntityNumber(const std::vector<EntityAnnotation> &entities) {
  int next = 1;
  for (const EntityAnnotation &e : entities) {
    if (e.id.size() < 2 || e.id[0] != 'T') continue;
    int n = 0;
    auto [ptr, ec] = std::from_chars(e.id.data() + 1, e.id.data() + e.id.size(), n);
    if (ec == std::errc() && ptr == e.id.data() + e.id.size()) {
      next = std::max(next, n + 1);
    }
  }
  return next;
}

EntityType DefaultFillerType(ElementType element) {
  switch (element) {
    case ElementType::kFigure:
      return EntityType::kFinding;
    case ElementType::kGround:
      return EntityType::kAnatomy;
    case ElementType::kMedication:
      return EntityType::kDrug;
    default:
      return EntityType::kOtherDescriptor;
  }
}

std::string ElementLabel(const FrameElementInstance &el) {
  return std::string(Name(el.element)) + "(" + el.anchor_id + "," +
         el.filler_id + ")";
}

}  // namespace

void ExtractionConfig::Check() const {
  if (window.overlap < 0 || window.max_tokens <= window.overlap) {
    throw Error(ErrorCode::kInvalidArgument, "need max_tokens > overlap >= 0");
  }
  if (batch_size == 0) throw Error(ErrorCode::kInvalidArgument, "batch_size is 0");
  if (!run_turn1 && anchors != AnchorMode::kGold) {
    throw Error(ErrorCode::kInvalidArgument,
                "skipping turn 1 needs gold anchors");
  }
  if (markers && (marker_tokens.open.empty() || marker_tokens.close.empty())) {
    throw Error(ErrorCode::kInvalidArgument, "marker tokens must be non-empty");
  }
}

nlohmann::json ToJson(const ExtractionResult &result) {
  nlohmann::json provenance = nlohmann::json::array();
  for (const Provenance &p : result.provenance) {
    provenance.push_back({{"record_id", p.record_id},
                          {"backend", p.backend},
                          {"turn", p.turn},
                          {"window",
                           {{"start", p.window.start},
                            {"end", p.window.end},
                            {"first_token", p.window.first_token},
                            {"end_token", p.window.end_token}}},
                          {"annotation", p.annotation},
                          {"ambiguous", p.ambiguous}});
  }
  return {{"doc_id", result.doc_id},
          {"ok", result.ok},
          {"error_code", result.error_code
                             ? nlohmann::json(std::string(
                                   ErrorCodeName(*result.error_code)))
                             : nlohmann::json(nullptr)},
          {"error", result.error},
          {"document", result.ok ? DocumentToJson(result.predicted)
                                 : nlohmann::json(nullptr)},
          {"provenance", provenance}};
}

Turn1Output RunTurn1(const Document &doc, MrcGateway &gateway,
                     const ExtractionConfig &config) {
  TokenizedText tokenized(doc.text);
  const Utf8Text &text = tokenized.text();
  std::vector<ContextWindow> windows =
      WindowContext(tokenized, nullptr, config.window);

  std::vector<PendingQuery> queries;
  for (EntityType type : config.turn1_types) {
    for (size_t k = 0; k < windows.size(); ++k) {
      if (windows[k].start == windows[k].end) continue;
      PendingQuery q;
      q.item.id = doc.doc_id + ":t1:" + std::string(Name(type)) + ":w" +
                  std::to_string(k);
      q.item.query = MakeTurn1Query(config.templates, type);
      q.item.context = ContextOf(text, windows[k]);
      q.window = windows[k];
      q.type = type;
      queries.push_back(std::move(q));
    }
  }

  // (span, type) -> provenance of the first answer producing it.
  std::map<std::pair<Span, EntityType>, Provenance> found;
  RunBatches(queries, gateway, config.batch_size,
             [&](const PendingQuery &q, const std::vector<AnswerSpan> &answers) {
               for (const AnswerSpan &a : answers) {
                 Span span(q.window.start + a.start, q.window.start + a.end);
                 Provenance p{q.item.id, gateway.backend_name(), 1, q.window, "",
                              false};
                 found.emplace(std::make_pair(span, q.type), std::move(p));
               }
             });

  Turn1Output out;
  for (auto &[key, provenance] : found) {
    EntityAnnotation e;
    e.id = "T" + std::to_string(out.entities.size() + 1);
    e.type = key.second;
    e.span = key.first;
    e.surface = SurfaceOf(text, e.span);
    provenance.annotation = e.id;
    out.entities.push_back(std::move(e));
    out.provenance.push_back(std::move(provenance));
  }
  return out;
}

Turn2Output RunTurn2(const Document &doc,
                     std::span<const EntityAnnotation> anchor_view,
                     std::vector<EntityAnnotation> &entities,
                     MrcGateway &gateway, const ExtractionConfig &config) {
  // Own copy: |anchor_view| may alias |entities|, which grows below.
  const std::vector<EntityAnnotation> anchors(anchor_view.begin(),
                                              anchor_view.end());
  TokenizedText tokenized(doc.text);
  const Utf8Text &text = tokenized.text();
  const AnchorMarkers &markers = config.marker_tokens;
  const int32_t open_len = CodepointLength(markers.open);
  const int32_t close_len = CodepointLength(markers.close);

  std::map<std::pair<EntityType, std::string_view>, int> surface_count;
  for (const EntityAnnotation &a : anchors) ++surface_count[{a.type, a.surface}];

  std::vector<PendingQuery> queries;
  for (const EntityAnnotation &anchor : anchors) {
    auto kind = AnchorKindFor(anchor.type);
    if (!kind) continue;
    ContextWindow w = WindowContext(tokenized, &anchor.span, config.window)[0];
    std::string context = ContextOf(text, w);
    PendingQuery base;
    base.window = w;
    base.anchor = &anchor;
    if (config.markers) {
      base.marked = true;
      base.marker_at = anchor.span.begin() - w.start;
      base.anchor_len = anchor.span.end() - anchor.span.begin();
      size_t open_byte = text.ByteOffset(anchor.span.begin()) - text.ByteOffset(w.start);
      size_t close_byte = text.ByteOffset(anchor.span.end()) - text.ByteOffset(w.start);
      context = context.substr(0, open_byte) + markers.open +
                context.substr(open_byte, close_byte - open_byte) +
                markers.close + context.substr(close_byte);
    }
    for (ElementType element : config.map.LicensedElements(*kind)) {
      PendingQuery q = base;
      q.element = element;
      q.item.id = doc.doc_id + ":t2:" + anchor.id + ":" + std::string(Name(element));
      q.item.query = MakeTurn2Query(config.templates, config.map, element, anchor);
      q.item.context = context;
      queries.push_back(std::move(q));
    }
  }

  int next_id = NextEntityNumber(entities);
  // Filler entity for |span|: an existing entity with that span, preferring
  // types the map allows, else a new one of the element's default type.
  auto filler_for = [&](const Span &span, AnchorKind kind,
                        ElementType element) -> const std::string & {
    EntityTypeSet allowed = config.map.AllowedFillers(kind, element);
    const EntityAnnotation *best = nullptr;
    for (const EntityAnnotation &e : entities) {
      if (e.span != span) continue;
      auto rank = [&](const EntityAnnotation &x) {
        return std::make_pair(!allowed.test(Index(x.type)), Index(x.type));
      };
      if (!best || rank(e) < rank(*best)) best = &e;
    }
    if (best) return best->id;
    EntityType type = DefaultFillerType(element);
    if (!allowed.test(Index(type))) {
      for (EntityType t : AllEntityTypes()) {
        if (allowed.test(Index(t))) {
          type = t;
          break;
        }
      }
    }
    entities.push_back({"T" + std::to_string(next_id++), type, span,
                        SurfaceOf(text, span)});
    return entities.back().id;
  };

  // Context offset of a marked answer boundary back to unmarked window
  // offsets; nullopt inside a marker.
  auto unmark = [&](const PendingQuery &q, int32_t p) -> std::optional<int32_t> {
    if (!q.marked) return p;
    const int32_t a = q.marker_at;
    const int32_t b = a + open_len + q.anchor_len;
    if (p <= a) return p;
    if (p < a + open_len) return std::nullopt;
    if (p <= b) return p - open_len;
    if (p < b + close_len) return std::nullopt;
    return p - open_len - close_len;
  };

  Turn2Output out;
  std::set<std::tuple<std::string, ElementType, std::string>> seen;
  RunBatches(queries, gateway, config.batch_size,
             [&](const PendingQuery &q, const std::vector<AnswerSpan> &answers) {
               const EntityAnnotation &anchor = *q.anchor;
               AnchorKind kind = *AnchorKindFor(anchor.type);
               for (const AnswerSpan &a : answers) {
                 auto start = unmark(q, a.start);
                 auto end = unmark(q, a.end);
                 if (!start || !end || *start >= *end) continue;
                 Span span(q.window.start + *start, q.window.start + *end);
                 if (span == anchor.span) continue;
                 std::string filler = filler_for(span, kind, q.element);
                 if (filler == anchor.id) continue;
                 if (!seen.emplace(anchor.id, q.element, filler).second) continue;
                 FrameElementInstance el{q.element, anchor.id, filler};
                 bool ambiguous =
                     !q.marked && surface_count[{anchor.type, anchor.surface}] > 1;
                 out.provenance.push_back({q.item.id, gateway.backend_name(), 2,
                                           q.window, ElementLabel(el),
                                           ambiguous});
                 out.elements.push_back(std::move(el));
               }
             });
  return out;
}

namespace {

ExtractionResult ExtractDocument(const Document &doc, MrcGateway &gateway,
                                 const ExtractionConfig &config) {
  ExtractionResult result;
  result.doc_id = doc.doc_id;
  std::vector<EntityAnnotation> entities;
  std::vector<Provenance> entity_provenance;
  if (config.run_turn1) {
    Turn1Output t1 = RunTurn1(doc, gateway, config);
    entities = std::move(t1.entities);
    entity_provenance = std::move(t1.provenance);
  }

  std::vector<EntityAnnotation> anchors;
  if (config.anchors == AnchorMode::kPredicted) {
    for (const EntityAnnotation &e : entities) {
      if (AnchorKindFor(e.type)) anchors.push_back(e);
    }
  } else {
    int next_id = NextEntityNumber(entities);
    for (const EntityAnnotation &g : doc.entities) {
      if (!AnchorKindFor(g.type)) continue;
      auto it = std::find_if(entities.begin(), entities.end(),
                             [&](const EntityAnnotation &e) {
                               return e.span == g.span && e.type == g.type;
                             });
      if (it != entities.end()) {
        anchors.push_back(*it);
        continue;
      }
      EntityAnnotation copy = g;
      copy.id = "T" + std::to_string(next_id++);
      entities.push_back(copy);
      anchors.push_back(std::move(copy));
    }
  }

  Turn2Output t2 = RunTurn2(doc, anchors, entities, gateway, config);

  // Renumber in canonical order.
  std::vector<size_t> order(entities.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    return std::tie(entities[x].span, entities[x].type) <
           std::tie(entities[y].span, entities[y].type);
  });
  std::map<std::string, std::string> new_id;
  Document &predicted = result.predicted;
  predicted.doc_id = doc.doc_id;
  predicted.text = doc.text;
  for (size_t i = 0; i < order.size(); ++i) {
    EntityAnnotation e = entities[order[i]];
    std::string id = "T" + std::to_string(i + 1);
    new_id[e.id] = id;
    e.id = id;
    predicted.entities.push_back(std::move(e));
  }
  for (size_t i = 0; i < entity_provenance.size(); ++i) {
    Provenance p = entity_provenance[i];
    p.annotation = new_id.at(p.annotation);
    result.provenance.push_back(std::move(p));
  }
  for (size_t i = 0; i < t2.elements.size(); ++i) {
    FrameElementInstance el = t2.elements[i];
    el.anchor_id = new_id.at(el.anchor_id);
    el.filler_id = new_id.at(el.filler_id);
    Provenance p = t2.provenance[i];
    p.annotation = ElementLabel(el);
    result.provenance.push_back(std::move(p));
    predicted.elements.push_back(std::move(el));
  }
  Canonicalize(predicted);
  return result;
}

}  // namespace

std::vector<ExtractionResult> RunPipeline(const std::vector<Document> &docs,
                                          const GatewaySelector &select,
                                          const ExtractionConfig &config,
                                          Execution execution) {
  config.Check();
  std::vector<ExtractionResult> results(docs.size());
  auto run_one = [&](size_t i) {
    try {
      results[i] = ExtractDocument(docs[i], select(docs[i]), config);
    } catch (const Error &e) {
      results[i] = ExtractionResult();
      results[i].doc_id = docs[i].doc_id;
      results[i].ok = false;
      results[i].error_code = e.code();
      results[i].error = e.what();
    } catch (const std::exception &e) {
      results[i] = ExtractionResult();
      results[i].doc_id = docs[i].doc_id;
      results[i].ok = false;
      results[i].error = e.what();
    }
  };
  const int64_t n = static_cast<int64_t>(docs.size());
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int64_t i = 0; i < n; ++i) run_one(static_cast<size_t>(i));
  } else {
    for (int64_t i = 0; i < n; ++i) run_one(static_cast<size_t>(i));
  }
  return results;
}

Corpus PredictedCorpus(const std::vector<ExtractionResult> &results) {
  Corpus corpus;
  for (const ExtractionResult &r : results) {
    if (r.ok) corpus.documents.push_back(r.predicted);
  }
  return corpus;
}

}  // namespace spatialqa
