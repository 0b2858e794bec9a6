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

#ifndef SPATIALQA_WINDOW_H_
#define SPATIALQA_WINDOW_H_

#include <cstdint>
#include <vector>

#include "spatialqa/document.h"
#include "spatialqa/utf8.h"

namespace spatialqa {

struct WindowOptions {
  int max_tokens = 128;
  int overlap = 32;
};

// A context window: code point extent plus the token range it covers.
struct ContextWindow {
  int32_t start = 0;
  int32_t end = 0;
  int first_token = 0;
  int end_token = 0;

  bool Contains(const Span &span) const {
    return span.begin() >= start && span.end() <= end;
  }
  bool operator==(const ContextWindow &) const = default;
};

// Tokenized document text, shared by all window computations on it. Holds a
// view of the text; the text must outlive it.
class TokenizedText {
 public:
  explicit TokenizedText(std::string_view text);

  const Utf8Text &text() const { return text_; }
  const std::vector<Fragment> &tokens() const { return tokens_; }
  int num_tokens() const { return static_cast<int>(tokens_.size()); }

 private:
  Utf8Text text_;
  std::vector<Fragment> tokens_;
};

// Without an anchor: windows of max_tokens tokens at a fixed stride of
// max_tokens - overlap, covering the whole document. The first window starts
// at offset 0 and the last ends at the text end; inner boundaries fall on
// token boundaries.
//
// With an anchor: a single window of up to max_tokens tokens that contains
// the anchor, centered on it and shifted inward at the document edges.
//
// Throws Error(kInvalidArgument) unless max_tokens > overlap >= 0, and
// Error(kAnchorTooLong) when the anchor spans more than max_tokens tokens.
std::vector<ContextWindow> WindowContext(const TokenizedText &text,
                                         const Span *anchor,
                                         const WindowOptions &options);

}  // namespace spatialqa

#endif  // SPATIALQA_WINDOW_H_
