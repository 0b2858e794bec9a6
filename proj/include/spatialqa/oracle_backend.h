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

#ifndef SPATIALQA_ORACLE_BACKEND_H_
#define SPATIALQA_ORACLE_BACKEND_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "spatialqa/document.h"
#include "spatialqa/mrc.h"
#include "spatialqa/query.h"

namespace spatialqa {

// Backend answering from gold annotations. It parses each query back through
// the templates, locates the context in the gold text and returns the gold
// spans that lie entirely inside it, with score 1.
//
// Turn-2 anchors are identified by the marked extent when the context
// carries anchor markers, otherwise by (type, surface) among the anchors in
// the context; several matching anchors contribute the union of their
// fillers. Discontinuous gold spans cannot be expressed as answers and are
// never returned. Pure and reentrant.
class OracleBackend : public Backend {
 public:
  OracleBackend(Document gold,
                QueryTemplateTable table = QueryTemplateTable::Default(),
                AnchorMarkers markers = {});

  std::string name() const override { return "oracle"; }

  // Throws Error(kUnparsableQuery) for a query the templates do not produce.
  BackendResponse Answer(const BackendRequest &request) override;

  std::vector<AnswerSpan> AnswerOne(const RequestItem &item) const;

 private:
  Document gold_;
  QueryTemplateTable table_;
  AnchorMarkers markers_;
};

// One oracle backend and gateway per gold document, looked up by doc_id.
class OracleGateways {
 public:
  OracleGateways(const std::vector<Document> &gold,
                 const QueryTemplateTable &table, const AnchorMarkers &markers,
                 GatewayOptions options = {});

  // Throws Error(kCorpusMismatch) for an unknown doc_id.
  MrcGateway &For(const std::string &doc_id);

 private:
  struct Entry {
    std::unique_ptr<OracleBackend> backend;
    std::unique_ptr<MrcGateway> gateway;
  };
  std::map<std::string, Entry> entries_;
};

}  // namespace spatialqa

#endif  // SPATIALQA_ORACLE_BACKEND_H_
