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

#include "spatialqa/tokenizer.h"

namespace spatialqa {
namespace {

bool IsSpace(char32_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v' || c == 0xA0;
}

bool IsPunct(char32_t c) {
  return c < 0x80 && ((c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
                      (c >= '[' && c <= '`') || (c >= '{' && c <= '~'));
}

}  // namespace

std::vector<Fragment> Tokenize(const Utf8Text &text) {
  std::vector<Fragment> tokens;
  const int32_t n = text.length();
  int32_t i = 0;
  while (i < n) {
    if (IsSpace(text.At(i))) {
      ++i;
      continue;
    }
    int32_t start = i;
    while (i < n && !IsSpace(text.At(i))) ++i;
    int32_t end = i;

    int32_t lo = start;
    while (lo < end && IsPunct(text.At(lo))) {
      tokens.push_back({lo, lo + 1});
      ++lo;
    }
    int32_t hi = end;
    while (hi > lo && IsPunct(text.At(hi - 1))) --hi;
    if (hi > lo) tokens.push_back({lo, hi});
    for (int32_t p = hi; p < end; ++p) tokens.push_back({p, p + 1});
  }
  return tokens;
}

std::vector<Fragment> SplitSentences(const Utf8Text &text) {
  std::vector<Fragment> sentences;
  const int32_t n = text.length();
  int32_t start = 0;
  for (int32_t i = 0; i < n; ++i) {
    char32_t c = text.At(i);
    if (c == '\n') {
      if (i > start) sentences.push_back({start, i});
      start = i + 1;
    } else if (c == '.' && i + 1 < n && text.At(i + 1) == ' ') {
      sentences.push_back({start, i + 1});
      start = i + 1;
    }
  }
  if (n > start) sentences.push_back({start, n});
  return sentences;
}

}  // namespace spatialqa
