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

#include "test_util.h"

namespace spatialqa {
namespace {

std::string Words(int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += (i ? " w" : "w") + std::to_string(i);
  return s;
}

TEST(WindowTest, ShortDocumentIsOneWindow) {
  std::string s = Words(10);
  TokenizedText t(s);
  auto ws = WindowContext(t, nullptr, {});
  ASSERT_EQ(ws.size(), 1u);
  EXPECT_EQ(ws[0].start, 0);
  EXPECT_EQ(ws[0].end, t.text().length());
  EXPECT_EQ(ws[0].end_token, 10);
}

TEST(WindowTest, StrideIsMaxMinusOverlap) {
  std::string s = Words(300);
  TokenizedText t(s);
  auto ws = WindowContext(t, nullptr, {128, 32});
  ASSERT_EQ(ws.size(), 3u);
  EXPECT_EQ(ws[0].first_token, 0);
  EXPECT_EQ(ws[1].first_token, 96);
  EXPECT_EQ(ws[2].first_token, 192);
  EXPECT_EQ(ws[2].end_token, 300);
  for (size_t i = 1; i < ws.size(); ++i) {
    EXPECT_EQ(ws[i - 1].end_token - ws[i].first_token, 32);
    EXPECT_EQ(ws[i].start, t.tokens()[ws[i].first_token].start);
  }
  EXPECT_EQ(ws.back().end, t.text().length());
}

TEST(WindowTest, AnchorLongerThanWindow) {
  std::string s = Words(300);
  TokenizedText t(s);
  Span anchor(0, t.tokens()[199].end);
  EXPECT_ERROR_CODE(WindowContext(t, &anchor, {128, 32}), ErrorCode::kAnchorTooLong);
}

TEST(WindowTest, RejectsBadOptions) {
  TokenizedText t("a b");
  EXPECT_ERROR_CODE(WindowContext(t, nullptr, {32, 32}), ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(WindowContext(t, nullptr, {8, -1}), ErrorCode::kInvalidArgument);
}

TEST(WindowTest, AnchorWindowIsCenteredWhenRoomAllows) {
  std::string s = Words(300);
  TokenizedText t(s);
  Span anchor = Span(t.tokens()[150].start, t.tokens()[150].end);
  auto ws = WindowContext(t, &anchor, {10, 2});
  ASSERT_EQ(ws.size(), 1u);
  EXPECT_EQ(ws[0].first_token, 146);
  EXPECT_EQ(ws[0].end_token, 156);
}

// Token-aligned cover without anchor; containment and alignment with one.
TEST(WindowProperty, CoverAndAnchorContainment) {
  for (int n : {0, 1, 5, 31, 32, 33, 64, 100, 257}) {
    std::string s = Words(n);
    TokenizedText t(s);
    for (WindowOptions o : {WindowOptions{8, 0}, WindowOptions{8, 3},
                            WindowOptions{16, 15}, WindowOptions{128, 32}}) {
      auto ws = WindowContext(t, nullptr, o);
      ASSERT_FALSE(ws.empty());
      EXPECT_EQ(ws.front().start, 0);
      EXPECT_EQ(ws.back().end, t.text().length());
      for (size_t i = 0; i < ws.size(); ++i) {
        EXPECT_LE(ws[i].end_token - ws[i].first_token, o.max_tokens);
        if (i > 0) EXPECT_LE(ws[i].first_token, ws[i - 1].end_token);
      }
      for (int k = 0; k < n; k += 3) {
        int len = std::min(n - k, 1 + k % 4);
        if (len > o.max_tokens) continue;
        Span anchor(t.tokens()[k].start, t.tokens()[k + len - 1].end);
        auto aw = WindowContext(t, &anchor, o);
        ASSERT_EQ(aw.size(), 1u);
        EXPECT_TRUE(aw[0].Contains(anchor));
        EXPECT_LE(aw[0].end_token - aw[0].first_token, o.max_tokens);
        EXPECT_EQ(aw[0].end_token - aw[0].first_token, std::min(n, o.max_tokens));
      }
    }
  }
}

}  // namespace
}  // namespace spatialqa
