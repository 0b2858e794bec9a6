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


#include "spatialqa/split.h"

#include <set>

#include "test_util.h"

namespace spatialqa {
namespace {

// Frozen from scripts/oracles/split_oracle.py, an independent Python
// MT19937-64 with the same rejection sampling and Fisher-Yates loop.
TEST(SplitOracleTest, Mt19937_64MatchesReferenceStream) {
  std::mt19937_64 rng;  // default seed 5489
  rng.discard(9999);
  EXPECT_EQ(rng(), 9981545732273789042ULL);
}

TEST(SplitOracleTest, PermutationMatchesPythonReference) {
  EXPECT_EQ(SeededPermutation(10, 42),
            (std::vector<size_t>{1, 7, 9, 0, 3, 8, 4, 2, 5, 6}));
}

Corpus Named(int n) {
  Corpus c;
  for (int i = 1; i <= n; ++i) {
    Document d;
    char id[16];
    std::snprintf(id, sizeof(id), "note_%04d", i);
    d.doc_id = id;
    c.documents.push_back(d);
  }
  return c;
}

std::vector<std::string> Ids(const Corpus &c) {
  std::vector<std::string> out;
  for (const auto &d : c.documents) out.push_back(d.doc_id);
  return out;
}

TEST(SplitOracleTest, Seed13On600NotesMatchesPythonReference) {
  CorpusSplit s = SplitCorpus(Named(600), 13, {450, 50, 100});
  ASSERT_EQ(s.train.documents.size(), 450u);
  ASSERT_EQ(s.dev.documents.size(), 50u);
  ASSERT_EQ(s.test.documents.size(), 100u);
  std::vector<std::string> train = Ids(s.train), test = Ids(s.test);
  std::vector<std::string> train_head(train.begin(), train.begin() + 10);
  EXPECT_EQ(train_head,
            (std::vector<std::string>{"note_0143", "note_0348", "note_0546",
                                      "note_0466", "note_0334", "note_0409",
                                      "note_0370", "note_0219", "note_0275",
                                      "note_0572"}));
  EXPECT_EQ(Ids(s.dev),
            (std::vector<std::string>{
                "note_0431", "note_0540", "note_0469", "note_0006", "note_0383",
                "note_0216", "note_0297", "note_0412", "note_0371", "note_0241",
                "note_0064", "note_0272", "note_0571", "note_0553", "note_0095",
                "note_0276", "note_0290", "note_0202", "note_0294", "note_0542",
                "note_0091", "note_0461", "note_0086", "note_0403", "note_0562",
                "note_0424", "note_0589", "note_0211", "note_0453", "note_0331",
                "note_0174", "note_0581", "note_0543", "note_0102", "note_0263",
                "note_0042", "note_0395", "note_0160", "note_0416", "note_0141",
                "note_0179", "note_0031", "note_0478", "note_0289", "note_0103",
                "note_0421", "note_0309", "note_0087", "note_0550", "note_0465"}));
  std::vector<std::string> test_head(test.begin(), test.begin() + 5);
  EXPECT_EQ(test_head, (std::vector<std::string>{"note_0377", "note_0455",
                                                 "note_0344", "note_0511",
                                                 "note_0359"}));
  EXPECT_EQ(test.back(), "note_0392");
}

TEST(SplitTest, InputOrderDoesNotMatter) {
  Corpus c = Named(60);
  Corpus reversed = c;
  std::reverse(reversed.documents.begin(), reversed.documents.end());
  EXPECT_EQ(Ids(SplitCorpus(c, 5, {40, 10, 10}).test),
            Ids(SplitCorpus(reversed, 5, {40, 10, 10}).test));
}

TEST(SplitTest, SizeMismatch) {
  EXPECT_ERROR_CODE(SplitCorpus(Named(2), 1, {1, 1, 1}), ErrorCode::kSizeMismatch);
}

// Partition: disjoint, exhaustive, exact sizes, deterministic.
TEST(SplitProperty, PartitionForManySeeds) {
  Corpus c = Named(97);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    std::array<size_t, 3> sizes{seed % 40, 30, 97 - 30 - seed % 40};
    CorpusSplit a = SplitCorpus(c, seed, sizes);
    CorpusSplit b = SplitCorpus(c, seed, sizes);
    EXPECT_EQ(Ids(a.train), Ids(b.train));
    EXPECT_EQ(a.train.documents.size(), sizes[0]);
    EXPECT_EQ(a.dev.documents.size(), sizes[1]);
    std::set<std::string> all;
    for (const Corpus *part : {&a.train, &a.dev, &a.test}) {
      for (const auto &id : Ids(*part)) EXPECT_TRUE(all.insert(id).second);
    }
    EXPECT_EQ(all.size(), 97u);
  }
}

TEST(UniformBelowProperty, StaysInRange) {
  std::mt19937_64 rng(9);
  for (uint64_t bound : {1ull, 2ull, 3ull, 7ull, 1000ull, (1ull << 63) + 5}) {
    for (int i = 0; i < 200; ++i) EXPECT_LT(UniformBelow(rng, bound), bound);
  }
}

}  // namespace
}  // namespace spatialqa
