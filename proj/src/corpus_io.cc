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

#include "spatialqa/corpus_io.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "spatialqa/errors.h"

namespace spatialqa {
namespace fs = std::filesystem;

namespace {

// Document stems of the .txt files in |dir|, sorted.
std::vector<std::string> TxtStems(const std::string &dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorCode::kIo, dir + " is not a directory");
  }
  std::vector<std::string> stems;
  for (const auto &entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      stems.push_back(entry.path().stem().string());
    }
  }
  std::sort(stems.begin(), stems.end());
  return stems;
}

BratPair ReadPair(const std::string &dir, const std::string &stem) {
  BratPair pair;
  fs::path base = fs::path(dir) / stem;
  pair.txt = ReadFile(base.string() + ".txt");
  std::string ann = base.string() + ".ann";
  if (fs::exists(ann)) pair.ann = ReadFile(ann);
  return pair;
}

bool HasLayerDirs(const std::string &dir) {
  std::error_code ec;
  return fs::is_directory(fs::path(dir) / "a", ec) &&
         fs::is_directory(fs::path(dir) / "b", ec);
}

bool IsJsonlPath(const std::string &path) {
  return fs::path(path).extension() == ".jsonl";
}

template <typename T>
const T &Field(const nlohmann::json &j, const char *key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kMalformedLine, std::string("missing field '") + key + "'");
  }
  const nlohmann::json &v = j.at(key);
  if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) {
      throw Error(ErrorCode::kMalformedLine, std::string("'") + key + "' must be a string");
    }
    return v.get_ref<const std::string &>();
  } else {
    if (!v.is_array()) {
      throw Error(ErrorCode::kMalformedLine, std::string("'") + key + "' must be a list");
    }
    return v;
  }
}

}  // namespace

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string &path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path);
}

Corpus LoadBratDir(const std::string &dir) {
  Corpus corpus;
  for (const std::string &stem : TxtStems(dir)) {
    BratPair pair = ReadPair(dir, stem);
    corpus.documents.push_back(ParseBrat(pair.txt, pair.ann, stem));
  }
  return corpus;
}

std::vector<LenientParse> LoadBratDirLenient(const std::string &dir) {
  std::vector<LenientParse> out;
  for (const std::string &stem : TxtStems(dir)) {
    BratPair pair = ReadPair(dir, stem);
    out.push_back(ParseBratLenient(pair.txt, pair.ann, stem));
  }
  return out;
}

void SaveBratDir(const std::vector<Document> &docs, const std::string &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir + ": " + ec.message());
  std::set<std::string> seen;
  for (const Document &doc : docs) {
    if (doc.doc_id.empty() || !seen.insert(doc.doc_id).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "doc ids must be unique and non-empty: '" + doc.doc_id + "'");
    }
    BratPair pair = EmitBrat(doc);
    fs::path base = fs::path(dir) / doc.doc_id;
    WriteFile(base.string() + ".txt", pair.txt);
    WriteFile(base.string() + ".ann", pair.ann);
  }
}

nlohmann::json DocumentToJson(const Document &doc) {
  nlohmann::json entities = nlohmann::json::array();
  for (const EntityAnnotation &e : doc.entities) {
    nlohmann::json fragments = nlohmann::json::array();
    for (const Fragment &f : e.span.fragments) {
      fragments.push_back({f.start, f.end});
    }
    entities.push_back({{"id", e.id},
                        {"type", std::string(Name(e.type))},
                        {"fragments", fragments},
                        {"surface", e.surface}});
  }
  nlohmann::json elements = nlohmann::json::array();
  for (const FrameElementInstance &el : doc.elements) {
    elements.push_back({{"element", std::string(Name(el.element))},
                        {"anchor", el.anchor_id},
                        {"filler", el.filler_id}});
  }
  return {{"doc_id", doc.doc_id},
          {"text", doc.text},
          {"entities", entities},
          {"elements", elements}};
}

Document DocumentFromJson(const nlohmann::json &j) {
  Document doc;
  doc.doc_id = Field<std::string>(j, "doc_id");
  doc.text = Field<std::string>(j, "text");
  Utf8Text text(doc.text);
  std::set<std::string> ids;
  for (const auto &je : Field<nlohmann::json>(j, "entities")) {
    EntityAnnotation e;
    e.id = Field<std::string>(je, "id");
    const std::string &type_name = Field<std::string>(je, "type");
    auto type = ParseEntityTypeOrAlias(type_name);
    if (!type) throw Error(ErrorCode::kUnknownType, "entity type '" + type_name + "'");
    e.type = *type;
    for (const auto &f : Field<nlohmann::json>(je, "fragments")) {
      if (!f.is_array() || f.size() != 2 || !f[0].is_number_integer() ||
          !f[1].is_number_integer()) {
        throw Error(ErrorCode::kMalformedLine, e.id + ": fragments are [start, end]");
      }
      e.span.fragments.push_back({f[0].get<int32_t>(), f[1].get<int32_t>()});
    }
    e.surface = Field<std::string>(je, "surface");
    if (!ids.insert(e.id).second) {
      throw Error(ErrorCode::kMalformedLine, "duplicate id " + e.id);
    }
    if (!e.span.WellFormed(text.length())) {
      throw Error(ErrorCode::kSpanOutOfBounds, e.id + " " + e.span.ToString());
    }
    if (SurfaceOf(text, e.span) != e.surface) {
      throw Error(ErrorCode::kSurfaceMismatch, e.id + " '" + e.surface + "'");
    }
    doc.entities.push_back(std::move(e));
  }
  for (const auto &jr : Field<nlohmann::json>(j, "elements")) {
    const std::string &name = Field<std::string>(jr, "element");
    auto element = ParseElementTypeOrAlias(name);
    if (!element) throw Error(ErrorCode::kUnknownType, "element type '" + name + "'");
    FrameElementInstance el{*element, Field<std::string>(jr, "anchor"),
                            Field<std::string>(jr, "filler")};
    if (!ids.count(el.anchor_id) || !ids.count(el.filler_id)) {
      throw Error(ErrorCode::kDanglingReference,
                  name + "(" + el.anchor_id + "," + el.filler_id + ")");
    }
    doc.elements.push_back(std::move(el));
  }
  return doc;
}

Corpus LoadJsonl(const std::string &path) {
  std::istringstream in(ReadFile(path));
  Corpus corpus;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      corpus.documents.push_back(DocumentFromJson(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorCode::kMalformedLine,
                  path + " line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error &e) {
      throw Error(e.code(),
                  path + " line " + std::to_string(line_no) + ": " + e.detail());
    }
  }
  SortByDocId(corpus);
  return corpus;
}

void SaveJsonl(const std::vector<Document> &docs, const std::string &path) {
  std::string out;
  for (const Document &doc : docs) {
    out += DocumentToJson(doc).dump();
    out += '\n';
  }
  WriteFile(path, out);
}

Corpus LoadCorpus(const std::string &path) {
  if (IsJsonlPath(path)) return LoadJsonl(path);
  if (HasLayerDirs(path) && TxtStems(path).empty()) {
    Corpus corpus = LoadBratDir((fs::path(path) / "a").string());
    corpus.second_layer = LoadBratDir((fs::path(path) / "b").string()).documents;
    return corpus;
  }
  return LoadBratDir(path);
}

void SaveCorpus(const std::vector<Document> &docs, const std::string &path) {
  if (IsJsonlPath(path)) {
    fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    SaveJsonl(docs, path);
  } else {
    SaveBratDir(docs, path);
  }
}

}  // namespace spatialqa
