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

#include "spatialqa/brat.h"

#include <charconv>
#include <optional>
#include <set>
#include <variant>

#include "spatialqa/errors.h"

namespace spatialqa {
namespace {

// One line of an .ann file after syntactic parsing. Semantic checks (bounds,
// surfaces, references) happen afterwards so both parse modes share them.
struct LineProblem {
  ErrorCode code;
  ViolationKind kind;
  std::string message;
};

using ParsedLine =
    std::variant<std::monostate, EntityAnnotation, FrameElementInstance,
                 LineProblem>;

LineProblem Malformed(std::string message) {
  return {ErrorCode::kMalformedLine, ViolationKind::kMalformedLine,
          std::move(message)};
}

std::optional<int32_t> ParseOffset(std::string_view s) {
  int32_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return value;
}

std::vector<std::string_view> SplitOn(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  size_t pos = 0;
  while (true) {
    size_t next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      parts.push_back(s.substr(pos));
      return parts;
    }
    parts.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

bool ValidId(std::string_view id, char prefix) {
  if (id.size() < 2 || id[0] != prefix) return false;
  for (char c : id.substr(1)) {
    if (c == '\t' || c == ' ') return false;
  }
  return true;
}

ParsedLine ParseEntityLine(std::string_view line) {
  auto tab1 = line.find('\t');
  auto tab2 = tab1 == std::string_view::npos ? tab1 : line.find('\t', tab1 + 1);
  if (tab2 == std::string_view::npos) {
    return Malformed("entity line needs three tab-separated fields");
  }
  std::string_view id = line.substr(0, tab1);
  std::string_view middle = line.substr(tab1 + 1, tab2 - tab1 - 1);
  std::string_view surface = line.substr(tab2 + 1);
  if (!ValidId(id, 'T')) return Malformed("bad entity id '" + std::string(id) + "'");

  auto space = middle.find(' ');
  if (space == std::string_view::npos) return Malformed("entity line has no offsets");
  std::string_view type_name = middle.substr(0, space);
  EntityAnnotation e;
  e.id = std::string(id);
  e.surface = std::string(surface);
  for (std::string_view piece : SplitOn(middle.substr(space + 1), ';')) {
    auto parts = SplitOn(piece, ' ');
    if (parts.size() != 2) {
      return Malformed("bad fragment '" + std::string(piece) + "'");
    }
    auto start = ParseOffset(parts[0]);
    auto end = ParseOffset(parts[1]);
    if (!start || !end) {
      return Malformed("bad offsets '" + std::string(piece) + "'");
    }
    e.span.fragments.push_back({*start, *end});
  }
  auto type = ParseEntityTypeOrAlias(type_name);
  if (!type) {
    return LineProblem{ErrorCode::kUnknownType,
                       ViolationKind::kUnknownEntityType,
                       "unknown entity type '" + std::string(type_name) + "'"};
  }
  e.type = *type;
  return e;
}

ParsedLine ParseRelationLine(std::string_view line) {
  auto tab = line.find('\t');
  if (tab == std::string_view::npos) return Malformed("relation line has no tab");
  std::string_view id = line.substr(0, tab);
  if (!ValidId(id, 'R')) return Malformed("bad relation id '" + std::string(id) + "'");
  std::string_view body = line.substr(tab + 1);
  // Some tools leave a trailing tab after the arguments.
  while (!body.empty() && (body.back() == '\t' || body.back() == ' ')) {
    body.remove_suffix(1);
  }
  auto parts = SplitOn(body, ' ');
  if (parts.size() != 3 || parts[1].substr(0, 5) != "Arg1:" ||
      parts[2].substr(0, 5) != "Arg2:") {
    return Malformed("relation must be '<Element> Arg1:T<a> Arg2:T<b>'");
  }
  std::string_view anchor = parts[1].substr(5);
  std::string_view filler = parts[2].substr(5);
  if (!ValidId(anchor, 'T') || !ValidId(filler, 'T')) {
    return Malformed("relation arguments must be T ids");
  }
  auto element = ParseElementTypeOrAlias(parts[0]);
  if (!element) {
    return LineProblem{ErrorCode::kUnknownType,
                       ViolationKind::kUnknownElementType,
                       "unknown element type '" + std::string(parts[0]) + "'"};
  }
  return FrameElementInstance{*element, std::string(anchor),
                              std::string(filler)};
}

ParsedLine ParseLine(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (line.find_first_not_of(" \t") == std::string_view::npos) {
    return std::monostate();
  }
  switch (line[0]) {
    case '#':
      return std::monostate();
    case 'T':
      return ParseEntityLine(line);
    case 'R':
      return ParseRelationLine(line);
    default:
      return Malformed("unsupported line type '" + std::string(1, line[0]) +
                       "'");
  }
}

std::string LineRef(size_t line_no) { return "line " + std::to_string(line_no); }

}  // namespace

Document ParseBrat(std::string_view txt, std::string_view ann,
                   std::string doc_id) {
  Utf8Text text(txt);
  Document doc;
  doc.doc_id = std::move(doc_id);
  doc.text = std::string(txt);
  std::set<std::string, std::less<>> ids;
  auto fail = [&](ErrorCode code, size_t line_no, const std::string &msg) {
    std::string where = doc.doc_id.empty() ? "" : doc.doc_id + ": ";
    throw Error(code, where + LineRef(line_no) + ": " + msg);
  };

  auto lines = SplitOn(ann, '\n');
  for (size_t i = 0; i < lines.size(); ++i) {
    ParsedLine parsed = ParseLine(lines[i]);
    if (auto *p = std::get_if<LineProblem>(&parsed)) fail(p->code, i + 1, p->message);
    if (auto *e = std::get_if<EntityAnnotation>(&parsed)) {
      if (!ids.insert(e->id).second) {
        fail(ErrorCode::kMalformedLine, i + 1, "duplicate id " + e->id);
      }
      if (!e->span.WellFormed(text.length())) {
        fail(ErrorCode::kSpanOutOfBounds, i + 1,
             "span " + e->span.ToString() + " outside text of length " +
                 std::to_string(text.length()));
      }
      std::string surface = SurfaceOf(text, e->span);
      if (surface != e->surface) {
        fail(ErrorCode::kSurfaceMismatch, i + 1,
             "surface '" + e->surface + "' but text has '" + surface + "'");
      }
      doc.entities.push_back(std::move(*e));
    }
    if (auto *r = std::get_if<FrameElementInstance>(&parsed)) {
      std::string rid(lines[i].substr(0, lines[i].find('\t')));
      if (!ids.insert(rid).second) {
        fail(ErrorCode::kMalformedLine, i + 1, "duplicate id " + rid);
      }
      doc.elements.push_back(std::move(*r));
    }
  }
  for (const FrameElementInstance &el : doc.elements) {
    for (const std::string *ref : {&el.anchor_id, &el.filler_id}) {
      if (!doc.FindEntity(*ref)) {
        throw Error(ErrorCode::kDanglingReference,
                    (doc.doc_id.empty() ? "" : doc.doc_id + ": ") +
                        std::string(Name(el.element)) + " refers to missing " +
                        *ref);
      }
    }
  }
  return doc;
}

LenientParse ParseBratLenient(std::string_view txt, std::string_view ann,
                              std::string doc_id) {
  LenientParse out;
  out.doc.doc_id = std::move(doc_id);
  out.doc.text = std::string(txt);
  std::set<std::string, std::less<>> ids;
  auto lines = SplitOn(ann, '\n');
  for (size_t i = 0; i < lines.size(); ++i) {
    ParsedLine parsed = ParseLine(lines[i]);
    if (auto *p = std::get_if<LineProblem>(&parsed)) {
      out.issues.push_back({p->kind, out.doc.doc_id, LineRef(i + 1), p->message});
      continue;
    }
    std::string id(lines[i].substr(0, lines[i].find('\t')));
    if (std::holds_alternative<std::monostate>(parsed)) continue;
    if (!ids.insert(id).second) {
      out.issues.push_back({ViolationKind::kDuplicateId, out.doc.doc_id,
                            LineRef(i + 1), "duplicate id " + id});
      continue;
    }
    if (auto *e = std::get_if<EntityAnnotation>(&parsed)) {
      out.doc.entities.push_back(std::move(*e));
    } else if (auto *r = std::get_if<FrameElementInstance>(&parsed)) {
      out.doc.elements.push_back(std::move(*r));
    }
  }
  return out;
}

BratPair EmitBrat(const Document &doc) {
  Document canonical = Canonicalized(doc);
  BratPair out;
  out.txt = doc.text;
  for (const EntityAnnotation &e : canonical.entities) {
    out.ann += e.id;
    out.ann += '\t';
    out.ann += Name(e.type);
    out.ann += ' ';
    out.ann += e.span.ToString();
    out.ann += '\t';
    out.ann += e.surface;
    out.ann += '\n';
  }
  size_t r = 0;
  for (const FrameElementInstance &el : canonical.elements) {
    out.ann += 'R' + std::to_string(++r) + '\t';
    out.ann += Name(el.element);
    out.ann += " Arg1:" + el.anchor_id + " Arg2:" + el.filler_id + '\n';
  }
  return out;
}

}  // namespace spatialqa
