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

#include "spatialqa/window.h"

#include <algorithm>

#include "spatialqa/errors.h"
#include "spatialqa/tokenizer.h"

namespace spatialqa {

TokenizedText::TokenizedText(std::string_view text)
    : text_(text), tokens_(Tokenize(text_)) {}

namespace {

ContextWindow MakeWindow(const TokenizedText &text, int first, int end) {
  const auto &tokens = text.tokens();
  ContextWindow w;
  w.first_token = first;
  w.end_token = end;
  w.start = first == 0 ? 0 : tokens[first].start;
  w.end = end == text.num_tokens() ? text.text().length() : tokens[end - 1].end;
  return w;
}

}  // namespace

std::vector<ContextWindow> WindowContext(const TokenizedText &text,
                                         const Span *anchor,
                                         const WindowOptions &options) {
  if (options.overlap < 0 || options.max_tokens <= options.overlap) {
    throw Error(ErrorCode::kInvalidArgument,
                "need max_tokens > overlap >= 0, got " +
                    std::to_string(options.max_tokens) + " and " +
                    std::to_string(options.overlap));
  }
  const int n = text.num_tokens();
  const int max = options.max_tokens;
  if (anchor == nullptr) {
    std::vector<ContextWindow> windows;
    const int stride = max - options.overlap;
    int first = 0;
    while (true) {
      int end = std::min(first + max, n);
      windows.push_back(MakeWindow(text, first, end));
      if (end >= n) break;
      first += stride;
    }
    return windows;
  }

  const auto &tokens = text.tokens();
  const int32_t begin = anchor->begin();
  const int32_t stop = anchor->end();
  // Tokens overlapping the anchor extent.
  auto lo = std::partition_point(tokens.begin(), tokens.end(),
                                 [&](const Fragment &t) { return t.end <= begin; });
  auto hi = std::partition_point(tokens.begin(), tokens.end(),
                                 [&](const Fragment &t) { return t.start < stop; });
  int a_first = static_cast<int>(lo - tokens.begin());
  int a_end = std::max(a_first, static_cast<int>(hi - tokens.begin()));
  int a_len = a_end - a_first;
  if (a_len > max) {
    throw Error(ErrorCode::kAnchorTooLong,
                "anchor covers " + std::to_string(a_len) + " tokens, window " +
                    std::to_string(max));
  }
  int first = a_first - (max - a_len) / 2;
  int end = first + max;
  if (end > n) {
    end = n;
    first = n - max;
  }
  if (first < 0) {
    first = 0;
    end = std::min(max, n);
  }
  ContextWindow w = MakeWindow(text, first, end);
  w.start = std::min(w.start, begin);
  w.end = std::max(w.end, stop);
  return {w};
}

}  // namespace spatialqa
