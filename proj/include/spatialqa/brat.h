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

// BRAT standoff reader and writer.
//
//   T<id>\t<EntityType> <start> <end>[;<start> <end>]*\t<surface>
//   R<id>\t<ElementType> Arg1:T<anchor> Arg2:T<filler>
//
// Offsets are code points into the .txt content, taken exactly as given (no
// newline normalization). Blank lines and '#' note lines are skipped; event
// and attribute lines are rejected.

#ifndef SPATIALQA_BRAT_H_
#define SPATIALQA_BRAT_H_

#include <string>
#include <string_view>
#include <vector>

#include "spatialqa/document.h"
#include "spatialqa/validation.h"

namespace spatialqa {

struct BratPair {
  std::string txt;
  std::string ann;
};

// Strict parse. Throws Error with kMalformedLine, kUnknownType,
// kSpanOutOfBounds, kSurfaceMismatch or kDanglingReference.
Document ParseBrat(std::string_view txt, std::string_view ann,
                   std::string doc_id = "");

// Lenient parse: lines that cannot be represented (malformed, unknown type
// names, duplicate ids) are dropped and reported; everything else, including
// out-of-bounds spans and dangling references, is kept for validation.
struct LenientParse {
  Document doc;
  std::vector<Violation> issues;
};
LenientParse ParseBratLenient(std::string_view txt, std::string_view ann,
                              std::string doc_id = "");

// Canonical emission: T-lines sorted by (span, type), then R-lines sorted by
// (element, anchor, filler) and numbered R1..Rn. T ids are preserved.
BratPair EmitBrat(const Document &doc);

}  // namespace spatialqa

#endif  // SPATIALQA_BRAT_H_
