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

#include "spatialqa/utf8.h"

#include <algorithm>

#include "spatialqa/errors.h"

namespace spatialqa {
namespace {

// Length of the sequence starting with |lead|, 0 if |lead| cannot start one.
int SequenceLength(unsigned char lead) {
  if (lead < 0x80) return 1;
  if (lead >= 0xC2 && lead <= 0xDF) return 2;
  if (lead >= 0xE0 && lead <= 0xEF) return 3;
  if (lead >= 0xF0 && lead <= 0xF4) return 4;
  return 0;
}

bool IsContinuation(unsigned char c) { return (c & 0xC0) == 0x80; }

}  // namespace

Utf8Text::Utf8Text(std::string_view text) : text_(text) {
  offsets_.reserve(text.size() + 1);
  size_t i = 0;
  while (i < text.size()) {
    auto lead = static_cast<unsigned char>(text[i]);
    int n = SequenceLength(lead);
    if (n == 0 || i + n > text.size()) {
      throw Error(ErrorCode::kInvalidUtf8,
                  "bad sequence at byte " + std::to_string(i));
    }
    for (int k = 1; k < n; ++k) {
      if (!IsContinuation(static_cast<unsigned char>(text[i + k]))) {
        throw Error(ErrorCode::kInvalidUtf8,
                    "bad continuation at byte " + std::to_string(i + k));
      }
    }
    // Overlong and surrogate forms.
    auto second = n > 1 ? static_cast<unsigned char>(text[i + 1]) : 0;
    if ((lead == 0xE0 && second < 0xA0) || (lead == 0xED && second > 0x9F) ||
        (lead == 0xF0 && second < 0x90) || (lead == 0xF4 && second > 0x8F)) {
      throw Error(ErrorCode::kInvalidUtf8,
                  "non-canonical sequence at byte " + std::to_string(i));
    }
    offsets_.push_back(static_cast<uint32_t>(i));
    i += n;
  }
  offsets_.push_back(static_cast<uint32_t>(text.size()));
}

int32_t Utf8Text::CodepointAt(size_t byte) const {
  auto it = std::lower_bound(offsets_.begin(), offsets_.end(),
                             static_cast<uint32_t>(byte));
  return static_cast<int32_t>(it - offsets_.begin());
}

char32_t Utf8Text::At(int32_t cp) const {
  size_t i = offsets_[cp];
  auto lead = static_cast<unsigned char>(text_[i]);
  int n = SequenceLength(lead);
  if (n == 1) return lead;
  char32_t value = lead & (0x7F >> n);
  for (int k = 1; k < n; ++k) {
    value = (value << 6) | (static_cast<unsigned char>(text_[i + k]) & 0x3F);
  }
  return value;
}

int32_t CodepointLength(std::string_view text) {
  return Utf8Text(text).length();
}

}  // namespace spatialqa
