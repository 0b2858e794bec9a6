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

#ifndef SPATIALQA_TOKENIZER_H_
#define SPATIALQA_TOKENIZER_H_

#include <vector>

#include "spatialqa/document.h"
#include "spatialqa/utf8.h"

namespace spatialqa {

// Whitespace split, then every leading and trailing ASCII punctuation
// character becomes its own token: "(20/20)." -> "(", "20/20", ")", ".".
std::vector<Fragment> Tokenize(const Utf8Text &text);

// Sentence extents. A sentence ends at a newline or after a period followed
// by a space; the period belongs to the sentence it closes.
std::vector<Fragment> SplitSentences(const Utf8Text &text);

}  // namespace spatialqa

#endif  // SPATIALQA_TOKENIZER_H_
