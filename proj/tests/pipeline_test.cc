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


#include "spatialqa/pipeline.h"

#include "spatialqa/evaluation.h"
#include "spatialqa/oracle_backend.h"
#include "spatialqa/validation.h"
#include "test_util.h"

namespace spatialqa {
namespace {

using testing::Ent;

Document VisionDoc() {
  Document d;
  d.doc_id = "v";
  d.text = "20/20 vision OD and 20/30 vision OS";
  d.entities = {Ent("T1", EntityType::kOtherDescriptor, 0, 5, "20/20"),
                Ent("T2", EntityType::kFinding, 6, 12, "vision"),
                Ent("T3", EntityType::kOtherDescriptor, 13, 15, "OD"),
                Ent("T4", EntityType::kOtherDescriptor, 20, 25, "20/30"),
                Ent("T5", EntityType::kFinding, 26, 32, "vision"),
                Ent("T6", EntityType::kOtherDescriptor, 33, 35, "OS")};
  d.elements = {{ElementType::kValue, "T2", "T1"},
                {ElementType::kLaterality, "T2", "T3"},
                {ElementType::kValue, "T5", "T4"},
                {ElementType::kLaterality, "T5", "T6"}};
  return d;
}

Document EdemaDoc() {
  Document d;
  d.doc_id = "e";
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

struct OracleRun {
  std::vector<ExtractionResult> results;
  EvaluationReports reports;
};

OracleRun RunOracle(const std::vector<Document> &docs, ExtractionConfig config,
                    Execution execution = Execution::kParallel) {
  OracleGateways gws(docs, config.templates, config.marker_tokens);
  OracleRun run;
  run.results = RunPipeline(
      docs, [&](const Document &d) -> MrcGateway & { return gws.For(d.doc_id); },
      config, execution);
  Corpus gold;
  gold.documents = docs;
  run.reports = Evaluate(PredictedCorpus(run.results), gold);
  return run;
}

ExtractionConfig Marked() {
  ExtractionConfig c;
  c.markers = true;
  return c;
}

TEST(PipelineTest, EdemaSentenceIsRecoveredExactly) {
  OracleRun run = RunOracle({EdemaDoc()}, ExtractionConfig());
  ASSERT_TRUE(run.results[0].ok) << run.results[0].error;
  EXPECT_EQ(Canonicalized(run.results[0].predicted), Canonicalized(EdemaDoc()));
  EXPECT_DOUBLE_EQ(run.reports.entities.micro.prf.f1, 1.0);
  EXPECT_DOUBLE_EQ(run.reports.elements_strict.micro.prf.f1, 1.0);
}

TEST(PipelineTest, SameSurfaceAnchorsNeedMarkers) {
  OracleRun plain = RunOracle({VisionDoc()}, ExtractionConfig());
  const ExtractionResult &r = plain.results[0];
  ASSERT_TRUE(r.ok);
  // Both "vision" queries read the same, so each anchor receives both values.
  int values = 0, ambiguous = 0;
  for (const auto &el : r.predicted.elements) values += el.element == ElementType::kValue;
  for (const auto &p : r.provenance) ambiguous += p.ambiguous;
  EXPECT_EQ(values, 4);
  EXPECT_GT(ambiguous, 0);
  EXPECT_LT(plain.reports.elements_strict.micro.prf.precision, 1.0);
  EXPECT_DOUBLE_EQ(plain.reports.elements_strict.micro.prf.recall, 1.0);

  OracleRun marked = RunOracle({VisionDoc()}, Marked());
  ASSERT_TRUE(marked.results[0].ok);
  EXPECT_EQ(Canonicalized(marked.results[0].predicted), Canonicalized(VisionDoc()));
  for (const auto &p : marked.results[0].provenance) EXPECT_FALSE(p.ambiguous);
}

TEST(PipelineTest, ProvenanceCoversEveryAnnotation) {
  OracleRun run = RunOracle({EdemaDoc()}, Marked());
  const ExtractionResult &r = run.results[0];
  EXPECT_EQ(r.provenance.size(), r.predicted.entities.size() + r.predicted.elements.size());
  for (const auto &p : r.provenance) {
    EXPECT_EQ(p.backend, "oracle");
    EXPECT_EQ(p.record_id.rfind("e:t" + std::to_string(p.turn), 0), 0u);
  }
  nlohmann::json j = ToJson(r);
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_TRUE(j["error_code"].is_null());
  EXPECT_EQ(j["provenance"].size(), r.provenance.size());
}

TEST(PipelineTest, EmptyCorpus) {
  OracleRun run = RunOracle({}, ExtractionConfig());
  EXPECT_TRUE(run.results.empty());
}

TEST(PipelineTest, GoldAnchorsWithoutTurn1) {
  ExtractionConfig c = Marked();
  c.anchors = AnchorMode::kGold;
  c.run_turn1 = false;
  OracleRun run = RunOracle({EdemaDoc(), VisionDoc()}, c);
  for (const auto &r : run.results) ASSERT_TRUE(r.ok) << r.error;
  EXPECT_DOUBLE_EQ(run.reports.elements_strict.micro.prf.f1, 1.0);
  EXPECT_DOUBLE_EQ(run.reports.elements_span_only.micro.prf.f1, 1.0);
}

TEST(PipelineTest, ConfigChecks) {
  ExtractionConfig c;
  c.run_turn1 = false;
  EXPECT_ERROR_CODE(c.Check(), ErrorCode::kInvalidArgument);
  ExtractionConfig w;
  w.window.overlap = w.window.max_tokens;
  EXPECT_ERROR_CODE(w.Check(), ErrorCode::kInvalidArgument);
  ExtractionConfig m = Marked();
  m.marker_tokens.open = "";
  EXPECT_ERROR_CODE(m.Check(), ErrorCode::kInvalidArgument);
}

class DownBackend : public Backend {
 public:
  std::string name() const override { return "down"; }
  BackendResponse Answer(const BackendRequest &) override {
    throw Error(ErrorCode::kBackendUnavailable, "down");
  }
};

TEST(PipelineTest, BackendDownFailsDocumentOnly) {
  DownBackend down;
  GatewayOptions o;
  o.max_retries = 1;
  o.initial_backoff = std::chrono::milliseconds(1);
  MrcGateway down_gw(down, o);
  OracleGateways gws({EdemaDoc()}, QueryTemplateTable::Default(), {});
  auto results = RunPipeline(
      {EdemaDoc(), VisionDoc()},
      [&](const Document &d) -> MrcGateway & {
        return d.doc_id == "v" ? down_gw : gws.For(d.doc_id);
      },
      ExtractionConfig(), Execution::kSerial);
  ASSERT_EQ(results.size(), 2u);
  EXPECT_TRUE(results[0].ok);
  EXPECT_FALSE(results[1].ok);
  EXPECT_EQ(results[1].error_code, ErrorCode::kBackendUnavailable);
  EXPECT_NE(results[1].error.find("v:t1:"), std::string::npos);
  EXPECT_EQ(PredictedCorpus(results).documents.size(), 1u);
}

// Oracle output over synthetic notes: valid, perfect with markers, and the
// same under both execution modes.
TEST(PipelineProperty, OracleFixpointOnSynthNotes) {
  Corpus gold = testing::SmallSynthCorpus(15, 21);
  OracleRun par = RunOracle(gold.documents, Marked(), Execution::kParallel);
  OracleRun ser = RunOracle(gold.documents, Marked(), Execution::kSerial);
  ASSERT_EQ(par.results.size(), ser.results.size());
  for (size_t i = 0; i < par.results.size(); ++i) {
    ASSERT_TRUE(par.results[i].ok) << par.results[i].error;
    EXPECT_EQ(par.results[i].predicted, ser.results[i].predicted);
    EXPECT_TRUE(ValidateDocument(par.results[i].predicted, AttachmentMap::Default())
                    .empty());
  }
  for (const auto &row : par.reports.entities.rows) {
    if (row.tally.gold() > 0) EXPECT_DOUBLE_EQ(row.prf.f1, 1.0) << row.type;
  }
  for (const auto &row : par.reports.elements_strict.rows) {
    if (row.tally.gold() > 0) EXPECT_DOUBLE_EQ(row.prf.f1, 1.0) << row.type;
  }
}

// Smaller windows can only lose answers that cross window edges, so recall
// with a wider window is at least as high.
TEST(PipelineProperty, WiderWindowsDoNotLoseRecall) {
  Corpus gold = testing::SmallSynthCorpus(8, 5);
  double last = -1;
  for (int max_tokens : {8, 16, 48, 256}) {
    ExtractionConfig c = Marked();
    c.window.max_tokens = max_tokens;
    c.window.overlap = max_tokens / 4;
    OracleRun run = RunOracle(gold.documents, c);
    double r = run.reports.elements_span_only.micro.prf.recall;
    EXPECT_GE(r + 1e-12, last) << max_tokens;
    last = r;
  }
  EXPECT_DOUBLE_EQ(last, 1.0);
}

}  // namespace
}  // namespace spatialqa
