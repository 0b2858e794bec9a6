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


#include "spatialqa/oracle_backend.h"

#include "test_util.h"

namespace spatialqa {
namespace {

using testing::Ent;

Document EdemaDoc() {
  Document d;
  d.doc_id = "d";
  d.text = "mild disc edema in the left eye.";
  d.entities = {Ent("T1", EntityType::kOtherDescriptor, 0, 4, "mild"),
                Ent("T2", EntityType::kOtherDescriptor, 5, 9, "disc"),
                Ent("T3", EntityType::kFinding, 10, 15, "edema"),
                Ent("T4", EntityType::kSpatialTrigger, 16, 18, "in"),
                Ent("T5", EntityType::kOtherDescriptor, 23, 27, "left"),
                Ent("T6", EntityType::kAnatomy, 28, 31, "eye")};
  d.elements = {{ElementType::kStatus, "T3", "T1"},
                {ElementType::kSpecificLocation, "T3", "T2"},
                {ElementType::kFigure, "T4", "T3"},
                {ElementType::kGround, "T4", "T6"},
                {ElementType::kLaterality, "T3", "T5"}};
  return d;
}

const QueryTemplateTable &Table() { return QueryTemplateTable::Default(); }

std::string Turn2(ElementType element, const EntityAnnotation &anchor) {
  return MakeTurn2Query(Table(), AttachmentMap::Default(), element, anchor);
}

TEST(OracleBackendTest, Turn1ReturnsGoldSpans) {
  OracleBackend oracle(EdemaDoc());
  Document d = EdemaDoc();
  auto answers =
      oracle.AnswerOne({"x", MakeTurn1Query(Table(), EntityType::kFinding), d.text});
  ASSERT_EQ(answers.size(), 1u);
  EXPECT_EQ(answers[0], (AnswerSpan{10, 15, "edema", 1.0}));
  auto descriptors = oracle.AnswerOne(
      {"x", MakeTurn1Query(Table(), EntityType::kOtherDescriptor), d.text});
  EXPECT_EQ(descriptors.size(), 3u);
}

TEST(OracleBackendTest, FigureOfTriggerIsEdema) {
  Document d = EdemaDoc();
  OracleBackend oracle(d);
  auto answers =
      oracle.AnswerOne({"x", Turn2(ElementType::kFigure, d.entities[3]), d.text});
  ASSERT_EQ(answers.size(), 1u);
  EXPECT_EQ(answers[0].start, 10);
  EXPECT_EQ(answers[0].end, 15);
}

TEST(OracleBackendTest, AbsentElementIsEmpty) {
  Document d = EdemaDoc();
  OracleBackend oracle(d);
  EXPECT_TRUE(oracle
                  .AnswerOne({"x", Turn2(ElementType::kImpactOnSide, d.entities[2]),
                              d.text})
                  .empty());
}

TEST(OracleBackendTest, UnknownQueryIsUnparsable) {
  OracleBackend oracle(EdemaDoc());
  EXPECT_ERROR_CODE(
      oracle.Answer({{"q7", "find all lesion entities in the context.", "edema"}}),
      ErrorCode::kUnparsableQuery);
}

TEST(OracleBackendTest, WindowExcludesOutsideSpans) {
  Document d = EdemaDoc();
  OracleBackend oracle(d);
  // Context "edema in the left" cuts off "mild", "disc" and "eye".
  std::string ctx = d.text.substr(10, 17);
  auto answers = oracle.AnswerOne(
      {"x", MakeTurn1Query(Table(), EntityType::kOtherDescriptor), ctx});
  ASSERT_EQ(answers.size(), 1u);
  EXPECT_EQ(answers[0], (AnswerSpan{13, 17, "left", 1.0}));
  EXPECT_TRUE(oracle
                  .AnswerOne({"x", Turn2(ElementType::kGround, d.entities[3]), ctx})
                  .empty());
}

TEST(OracleBackendTest, MarkedAnchorSelectsOneOccurrence) {
  Document d;
  d.doc_id = "m";
  d.text = "20/20 vision OD and 20/30 vision OS";
  d.entities = {Ent("T1", EntityType::kOtherDescriptor, 0, 5, "20/20"),
                Ent("T2", EntityType::kFinding, 6, 12, "vision"),
                Ent("T3", EntityType::kOtherDescriptor, 20, 25, "20/30"),
                Ent("T4", EntityType::kFinding, 26, 32, "vision")};
  d.elements = {{ElementType::kValue, "T2", "T1"}, {ElementType::kValue, "T4", "T3"}};
  OracleBackend oracle(d);
  std::string q = Turn2(ElementType::kValue, d.entities[3]);

  auto unmarked = oracle.AnswerOne({"x", q, d.text});
  EXPECT_EQ(unmarked.size(), 2u);

  std::string marked = "20/20 vision OD and 20/30 [[vision]] OS";
  auto answers = oracle.AnswerOne({"x", q, marked});
  ASSERT_EQ(answers.size(), 1u);
  EXPECT_EQ(answers[0], (AnswerSpan{20, 25, "20/30", 1.0}));

  // Fillers after the marked anchor shift by both marker widths.
  Document after = d;
  after.elements = {{ElementType::kValue, "T2", "T3"}};
  OracleBackend oracle2(after);
  auto shifted = oracle2.AnswerOne(
      {"x", Turn2(ElementType::kValue, d.entities[1]),
       "20/20 [[vision]] OD and 20/30 vision OS"});
  ASSERT_EQ(shifted.size(), 1u);
  EXPECT_EQ(shifted[0], (AnswerSpan{24, 29, "20/30", 1.0}));
}

TEST(OracleBackendTest, DiscontinuousGoldIsNeverReturned) {
  Document d;
  d.doc_id = "g";
  d.text = "upper and lower eyelids";
  d.entities = {
      {"T1", EntityType::kAnatomy, Span({{0, 5}, {16, 23}}), "upper eyelids"},
      Ent("T2", EntityType::kAnatomy, 10, 23, "lower eyelids")};
  OracleBackend oracle(d);
  auto answers =
      oracle.AnswerOne({"x", MakeTurn1Query(Table(), EntityType::kAnatomy), d.text});
  ASSERT_EQ(answers.size(), 1u);
  EXPECT_EQ(answers[0].text, "lower eyelids");
}

// Answering twice, or as part of any batch, gives the same spans.
TEST(OracleBackendProperty, IdempotentOverSynthCorpus) {
  Corpus c = testing::SmallSynthCorpus(5, 3);
  for (const Document &doc : c.documents) {
    OracleBackend oracle(doc);
    BackendRequest batch;
    for (EntityType t : AllEntityTypes()) {
      batch.push_back({std::string(Name(t)), MakeTurn1Query(Table(), t), doc.text});
    }
    BackendResponse first = oracle.Answer(batch);
    BackendResponse second = oracle.Answer(batch);
    size_t total = 0;
    for (size_t i = 0; i < batch.size(); ++i) {
      EXPECT_EQ(first[i].answers, second[i].answers);
      EXPECT_EQ(first[i].answers, oracle.AnswerOne(batch[i]));
      total += first[i].answers.size();
    }
    size_t contiguous = 0;
    for (const auto &e : doc.entities) contiguous += e.span.contiguous();
    EXPECT_EQ(total, contiguous);
  }
}

TEST(OracleGatewaysTest, UnknownDocument) {
  OracleGateways gws({EdemaDoc()}, Table(), {});
  EXPECT_EQ(gws.For("d").backend_name(), "oracle");
  EXPECT_ERROR_CODE(gws.For("nope"), ErrorCode::kCorpusMismatch);
}

}  // namespace
}  // namespace spatialqa
