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

#ifndef SPATIALQA_UTF8_H_
#define SPATIALQA_UTF8_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace spatialqa {

// Code point view over a UTF-8 buffer. All annotation offsets in the toolkit
// are code point offsets; this maps them to byte ranges. The view does not
// own the buffer.
class Utf8Text {
 public:
  // Throws Error(kInvalidUtf8) on malformed input.
  explicit Utf8Text(std::string_view text);

  // Number of code points.
  int32_t length() const { return static_cast<int32_t>(offsets_.size()) - 1; }

  std::string_view bytes() const { return text_; }

  // Byte offset of code point |cp|; cp == length() maps to the buffer end.
  size_t ByteOffset(int32_t cp) const { return offsets_[cp]; }

  // Code point index of byte offset |byte|, which must start a code point.
  int32_t CodepointAt(size_t byte) const;

  // Slice [begin, end) in code points. Requires 0 <= begin <= end <= length.
  std::string_view Slice(int32_t begin, int32_t end) const {
    return text_.substr(offsets_[begin], offsets_[end] - offsets_[begin]);
  }

  // Decoded scalar value of code point |cp|.
  char32_t At(int32_t cp) const;

 private:
  std::string_view text_;
  std::vector<uint32_t> offsets_;
};

// Number of code points in |text|; throws on malformed UTF-8.
int32_t CodepointLength(std::string_view text);

}  // namespace spatialqa

#endif  // SPATIALQA_UTF8_H_
