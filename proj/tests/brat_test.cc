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


#include "spatialqa/brat.h"

#include "spatialqa/validation.h"
#include "test_util.h"

namespace spatialqa {
namespace {

using testing::Ent;

TEST(ParseBratTest, SingleEntity) {
  Document d = ParseBrat("mild disc edema", "T1\tFinding 10 15\tedema\n", "d");
  ASSERT_EQ(d.entities.size(), 1u);
  EXPECT_EQ(d.entities[0], Ent("T1", EntityType::kFinding, 10, 15, "edema"));
  EXPECT_EQ(d.doc_id, "d");
  EXPECT_EQ(d.text, "mild disc edema");
}

TEST(ParseBratTest, RelationResolvesToFrameElement) {
  Document d = ParseBrat("mild disc edema",
                         "T1\tFinding 10 15\tedema\n"
                         "T2\tAnatomy 5 9\tdisc\n"
                         "R1\tSpecificLocation Arg1:T1 Arg2:T2\n");
  ASSERT_EQ(d.elements.size(), 1u);
  EXPECT_EQ(d.elements[0],
            (FrameElementInstance{ElementType::kSpecificLocation, "T1", "T2"}));
}

TEST(ParseBratTest, AcceptsElementAliases) {
  Document d = ParseBrat("mild disc edema",
                         "T1\tFinding 10 15\tedema\n"
                         "T2\tLocation_descriptor 5 9\tdisc\n"
                         "R1\tLocationDesc Arg1:T1 Arg2:T2\n");
  EXPECT_EQ(d.entities[1].type, EntityType::kLocationDescriptor);
  EXPECT_EQ(d.elements[0].element, ElementType::kSpecificLocation);
}

TEST(ParseBratTest, OffsetsAreCodePoints) {
  // "é" occupies two bytes but one offset unit.
  std::string txt = "r\xC3\xA9tine edema";
  Document d = ParseBrat(txt, "T1\tFinding 7 12\tedema\nT2\tAnatomy 0 6\tr\xC3\xA9tine\n");
  EXPECT_EQ(d.entities[0].span, Span(7, 12));
  EXPECT_EQ(d.entities[1].surface, "r\xC3\xA9tine");
}

TEST(ParseBratTest, DiscontinuousSpanJoinsFragmentsWithSpace) {
  std::string txt = "upper and lower eyelids";
  Document d = ParseBrat(txt, "T1\tAnatomy 0 5;16 23\tupper eyelids\n");
  EXPECT_EQ(d.entities[0].span.fragments.size(), 2u);
  EXPECT_EQ(d.entities[0].span.ToString(), "0 5;16 23");
  EXPECT_ERROR_CODE(ParseBrat(txt, "T1\tAnatomy 0 5;16 23\tupper  eyelids\n"),
                    ErrorCode::kSurfaceMismatch);
}

TEST(ParseBratTest, ToleratesCrlfBlankAndCommentLines) {
  Document d = ParseBrat("mild disc edema",
                         "# note\r\n\r\nT1\tFinding 10 15\tedema\r\n");
  EXPECT_EQ(d.entities.size(), 1u);
}

TEST(ParseBratTest, ErrorsCarryTheirClass) {
  const std::string txt = "mild disc edema";
  EXPECT_ERROR_CODE(ParseBrat(txt, "T1\tFinding 10 99\tedema\n"),
                    ErrorCode::kSpanOutOfBounds);
  EXPECT_ERROR_CODE(ParseBrat(txt, "T1\tFinding 10 15\tedemas\n"),
                    ErrorCode::kSurfaceMismatch);
  EXPECT_ERROR_CODE(ParseBrat(txt, "T1\tLesion 10 15\tedema\n"),
                    ErrorCode::kUnknownType);
  EXPECT_ERROR_CODE(ParseBrat(txt, "T1\tFinding 10 15\tedema\n"
                                   "R1\tColor Arg1:T1 Arg2:T1\n"),
                    ErrorCode::kUnknownType);
  EXPECT_ERROR_CODE(ParseBrat(txt, "T1\tFinding 10 15\tedema\n"
                                   "R1\tLaterality Arg1:T1 Arg2:T9\n"),
                    ErrorCode::kDanglingReference);
  EXPECT_ERROR_CODE(ParseBrat(txt, "T1 Finding 10 15 edema\n"),
                    ErrorCode::kMalformedLine);
  EXPECT_ERROR_CODE(ParseBrat(txt, "E1\tEvent:T1\n"), ErrorCode::kMalformedLine);
  EXPECT_ERROR_CODE(ParseBrat(txt, "T1\tFinding 15 10\tedema\n"),
                    ErrorCode::kSpanOutOfBounds);
  EXPECT_ERROR_CODE(ParseBrat(txt, "T1\tFinding 10 15\tedema\nT1\tAnatomy 5 9\tdisc\n"),
                    ErrorCode::kMalformedLine);
}

TEST(ParseBratTest, MalformedLineNamesItsLineNumber) {
  try {
    ParseBrat("abc", "T1\tFinding 0 3\tabc\nbogus\n", "doc");
    FAIL();
  } catch (const Error &e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(ParseBratTest, LenientParseKeepsGoodLines) {
  LenientParse p = ParseBratLenient(
      "mild disc edema",
      "T1\tFinding 10 15\tedema\nT2\tLesion 5 9\tdisc\nbad line\n", "d");
  EXPECT_EQ(p.doc.entities.size(), 1u);
  ASSERT_EQ(p.issues.size(), 2u);
  EXPECT_EQ(p.issues[0].kind, ViolationKind::kUnknownEntityType);
  EXPECT_EQ(p.issues[1].kind, ViolationKind::kMalformedLine);
}

TEST(EmitBratTest, EmptyDocumentHasEmptyAnn) {
  Document d;
  d.text = "nothing here\n";
  BratPair p = EmitBrat(d);
  EXPECT_EQ(p.txt, d.text);
  EXPECT_EQ(p.ann, "");
}

TEST(EmitBratTest, CanonicalOrderAndRelationNumbering) {
  Document d;
  d.text = "mild disc edema";
  d.entities = {Ent("T1", EntityType::kFinding, 10, 15, "edema"),
                Ent("T2", EntityType::kAnatomy, 5, 9, "disc"),
                Ent("T3", EntityType::kOtherDescriptor, 0, 4, "mild")};
  d.elements = {{ElementType::kStatus, "T1", "T3"},
                {ElementType::kSpecificLocation, "T1", "T2"}};
  BratPair p = EmitBrat(d);
  EXPECT_EQ(p.ann,
            "T3\tOtherDescriptor 0 4\tmild\n"
            "T2\tAnatomy 5 9\tdisc\n"
            "T1\tFinding 10 15\tedema\n"
            "R1\tSpecificLocation Arg1:T1 Arg2:T2\n"
            "R2\tStatus Arg1:T1 Arg2:T3\n");
  EXPECT_EQ(ParseBrat(p.txt, p.ann), Canonicalized(d));
}

// parse(emit(d)) == d and emit is a fixpoint, over generated documents.
TEST(BratRoundTripProperty, SynthCorpusWithDiscontinuousSpans) {
  Corpus corpus = testing::SmallSynthCorpus(60, 11, 0.5);
  int discontinuous = 0;
  for (const Document &doc : corpus.documents) {
    BratPair first = EmitBrat(doc);
    Document parsed = ParseBrat(first.txt, first.ann, doc.doc_id);
    EXPECT_EQ(parsed, Canonicalized(doc)) << doc.doc_id;
    BratPair second = EmitBrat(parsed);
    EXPECT_EQ(first.ann, second.ann);
    EXPECT_EQ(first.txt, second.txt);
    for (const auto &e : doc.entities) discontinuous += !e.span.contiguous();
  }
  EXPECT_GT(discontinuous, 0);
}

}  // namespace
}  // namespace spatialqa
