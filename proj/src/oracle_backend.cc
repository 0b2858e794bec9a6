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

#include "spatialqa/oracle_backend.h"

#include <algorithm>
#include <optional>

#include "spatialqa/errors.h"
#include "spatialqa/utf8.h"

namespace spatialqa {
namespace {

// The anchor extent a marked context carries, in stripped coordinates.
struct Marked {
  std::string stripped;
  int32_t anchor_start = 0;
  int32_t anchor_end = 0;
};

std::optional<Marked> StripMarkers(const std::string &context,
                                   const AnchorMarkers &markers) {
  size_t open = context.find(markers.open);
  if (open == std::string::npos) return std::nullopt;
  size_t close = context.find(markers.close, open + markers.open.size());
  if (close == std::string::npos) return std::nullopt;
  Marked m;
  m.stripped = context.substr(0, open) +
               context.substr(open + markers.open.size(),
                              close - open - markers.open.size()) +
               context.substr(close + markers.close.size());
  m.anchor_start = CodepointLength(std::string_view(context).substr(0, open));
  m.anchor_end =
      m.anchor_start +
      CodepointLength(std::string_view(context).substr(
          open + markers.open.size(), close - open - markers.open.size()));
  return m;
}

}  // namespace

OracleBackend::OracleBackend(Document gold, QueryTemplateTable table,
                             AnchorMarkers markers)
    : gold_(std::move(gold)),
      table_(std::move(table)),
      markers_(std::move(markers)) {}

BackendResponse OracleBackend::Answer(const BackendRequest &request) {
  BackendResponse response;
  response.reserve(request.size());
  for (const RequestItem &item : request) {
    response.push_back({item.id, AnswerOne(item)});
  }
  return response;
}

std::vector<AnswerSpan> OracleBackend::AnswerOne(const RequestItem &item) const {
  std::optional<ParsedQuery> query = ParseQuery(table_, item.query);
  if (!query) throw Error(ErrorCode::kUnparsableQuery, item.id);

  std::optional<Marked> marked;
  if (query->turn == 2) marked = StripMarkers(item.context, markers_);
  const std::string &plain = marked ? marked->stripped : item.context;
  const int32_t plain_len = CodepointLength(plain);
  const int32_t open_len = CodepointLength(markers_.open);
  const int32_t close_len = CodepointLength(markers_.close);

  // Stripped-context offsets to submitted-context offsets.
  auto to_context = [&](int32_t p, bool is_end) {
    if (!marked) return p;
    const int32_t a = marked->anchor_start, b = marked->anchor_end;
    if (is_end ? p <= a : p < a) return p;
    if (is_end ? p > b : p >= b) return p + open_len + close_len;
    return p + open_len;
  };

  Utf8Text gold_text(gold_.text);
  Utf8Text context_text(item.context);
  std::vector<std::pair<int32_t, int32_t>> spans;
  auto inside = [](const Span &s, int32_t lo, int32_t hi) {
    return s.contiguous() && s.begin() >= lo && s.end() <= hi;
  };

  for (size_t byte = gold_.text.find(plain); byte != std::string::npos;
       byte = gold_.text.find(plain, byte + 1)) {
    const int32_t lo = gold_text.CodepointAt(byte);
    const int32_t hi = lo + plain_len;
    auto add = [&](const Span &s) {
      spans.emplace_back(to_context(s.begin() - lo, false),
                         to_context(s.end() - lo, true));
    };
    if (query->turn == 1) {
      for (const EntityAnnotation &e : gold_.entities) {
        if (e.type == query->entity_type && inside(e.span, lo, hi)) add(e.span);
      }
      continue;
    }
    for (const EntityAnnotation &anchor : gold_.entities) {
      if (anchor.type != query->anchor_type || !inside(anchor.span, lo, hi)) {
        continue;
      }
      if (marked) {
        if (anchor.span.begin() - lo != marked->anchor_start ||
            anchor.span.end() - lo != marked->anchor_end) {
          continue;
        }
      } else if (anchor.surface != query->anchor_surface) {
        continue;
      }
      for (const FrameElementInstance &el : gold_.elements) {
        if (el.element != query->element || el.anchor_id != anchor.id) continue;
        const EntityAnnotation *filler = gold_.FindEntity(el.filler_id);
        if (filler && inside(filler->span, lo, hi)) add(filler->span);
      }
    }
  }

  std::sort(spans.begin(), spans.end());
  spans.erase(std::unique(spans.begin(), spans.end()), spans.end());
  std::vector<AnswerSpan> answers;
  for (auto [start, end] : spans) {
    answers.push_back(
        {start, end, std::string(context_text.Slice(start, end)), 1.0});
  }
  return answers;
}

OracleGateways::OracleGateways(const std::vector<Document> &gold,
                               const QueryTemplateTable &table,
                               const AnchorMarkers &markers,
                               GatewayOptions options) {
  for (const Document &doc : gold) {
    Entry entry;
    entry.backend = std::make_unique<OracleBackend>(doc, table, markers);
    entry.gateway = std::make_unique<MrcGateway>(*entry.backend, options);
    entries_.emplace(doc.doc_id, std::move(entry));
  }
}

MrcGateway &OracleGateways::For(const std::string &doc_id) {
  auto it = entries_.find(doc_id);
  if (it == entries_.end()) {
    throw Error(ErrorCode::kCorpusMismatch, "no gold document " + doc_id);
  }
  return *it->second.gateway;
}

}  // namespace spatialqa
