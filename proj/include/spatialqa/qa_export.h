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

#ifndef SPATIALQA_QA_EXPORT_H_
#define SPATIALQA_QA_EXPORT_H_

#include <string>
#include <vector>

#include "spatialqa/document.h"
#include "spatialqa/query.h"
#include "spatialqa/schema.h"
#include "spatialqa/window.h"

namespace spatialqa {

struct ExportOptions {
  std::vector<EntityType> turn1_types{AllEntityTypes().begin(),
                                      AllEntityTypes().end()};
  WindowOptions window;
};

// Training records from gold annotations, the same queries and windows the
// pipeline issues: one turn-1 record per (entity type, window) and one
// turn-2 record per (anchor, licensed element). Records without answers are
// kept as no-answer examples. Record ids:
//   <doc_id>:t1:<EntityType>:w<k>
//   <doc_id>:t2:<anchor id>:<ElementType>
std::vector<QARecord> ExportQaRecords(const Document &gold,
                                      const QueryTemplateTable &table,
                                      const AttachmentMap &map,
                                      const ExportOptions &options = {});

}  // namespace spatialqa

#endif  // SPATIALQA_QA_EXPORT_H_
