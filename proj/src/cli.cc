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


#include "spatialqa/cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "spatialqa/agreement.h"
#include "spatialqa/corpus_io.h"
#include "spatialqa/errors.h"
#include "spatialqa/evaluation.h"
#include "spatialqa/execution.h"
#include "spatialqa/oracle_backend.h"
#include "spatialqa/pipeline.h"
#include "spatialqa/qa_export.h"
#include "spatialqa/remote_backend.h"
#include "spatialqa/split.h"
#include "spatialqa/stats.h"
#include "spatialqa/synth.h"
#include "spatialqa/validation.h"

namespace spatialqa {
namespace {

namespace fs = std::filesystem;

std::string ExistingPath(const nlohmann::json &v, const std::string &key) {
  if (!v.is_string()) {
    throw Error(ErrorCode::kMalformedConfig, key + " must be a string");
  }
  std::string path = v.get<std::string>();
  if (!fs::exists(path)) {
    throw Error(ErrorCode::kIo, key + ": no such path " + path);
  }
  return path;
}

int IntField(const nlohmann::json &v, const std::string &key) {
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::kMalformedConfig, key + " must be an integer");
  }
  return v.get<int>();
}

// Options shared by every subcommand.
struct Common {
  std::string config_path;
  std::string format = "table";
  int jobs = 0;
};

struct Flags {
  std::string corpus;
  std::string templates;
  std::string map;
  std::string endpoint;
  std::string out;
  std::string a, b;
  std::string pred, gold;
  std::string backend = "oracle";
  std::string anchors = "predicted";
  std::string markers = "off";
  std::string anchor_matching = "strict";
  std::string sizes;
  std::string mode = "drop";
  int max_tokens = 128;
  int overlap = 32;
  uint64_t seed = 13;
  int notes = 100;
  bool dual = false;
  double rate = 0.2;
  double discontinuous_rate = 0.0;
};

class Runner {
 public:
  Runner(const Common &common, const Flags &flags, const CLI::App &sub,
         std::ostream &out, std::ostream &err)
      : common_(common), f_(flags), sub_(sub), out_(out), err_(err) {
    if (!common.config_path.empty()) config_ = ToolConfig::Load(common.config_path);
    if (common.jobs > 0) SetMaxThreads(common.jobs);
  }

  bool json() const { return common_.format == "json"; }
  bool Given(const std::string &name) const {
    return sub_.get_option(name)->count() > 0;
  }

  std::string CorpusPath() const {
    if (Given("--corpus")) return f_.corpus;
    if (config_.corpus) return *config_.corpus;
    throw CLI::RequiredError("--corpus");
  }
  AttachmentMap Map() const {
    std::string path = Given("--map") ? f_.map : config_.attachment_map.value_or("");
    return path.empty() ? AttachmentMap::Default() : AttachmentMap::Load(path);
  }
  QueryTemplateTable Templates() const {
    std::string path =
        Given("--templates") ? f_.templates : config_.templates.value_or("");
    return path.empty() ? QueryTemplateTable::Default()
                        : QueryTemplateTable::Load(path);
  }
  WindowOptions Window() const {
    WindowOptions w;
    w.max_tokens = Given("--max-tokens") ? f_.max_tokens
                                         : config_.max_tokens.value_or(128);
    w.overlap = Given("--overlap") ? f_.overlap : config_.overlap.value_or(32);
    return w;
  }
  uint64_t Seed(uint64_t fallback) const {
    if (Given("--seed")) return f_.seed;
    return config_.seed.value_or(fallback);
  }
  std::string Endpoint() const {
    if (Given("--endpoint")) return f_.endpoint;
    if (const char *env = std::getenv(kEndpointEnv); env && *env) return env;
    if (config_.endpoint) return *config_.endpoint;
    throw CLI::ValidationError("--endpoint",
                               "remote backend needs --endpoint or " +
                                   std::string(kEndpointEnv));
  }

  int Validate();
  int Stats();
  int Agreement();
  int Split();
  int ExportQa();
  int Extract();
  int Evaluate();
  int Synth();

 private:
  void PrintReport(const MetricsReport &r, const std::string &title) {
    out_ << FormatTable(r, title) << "\n";
  }

  const Common &common_;
  const Flags &f_;
  const CLI::App &sub_;
  std::ostream &out_;
  std::ostream &err_;
  ToolConfig config_;
};

int Runner::Validate() {
  std::string path = CorpusPath();
  AttachmentMap map = Map();
  std::vector<Violation> violations;
  size_t docs = 0;
  if (fs::is_directory(path)) {
    for (LenientParse &p : LoadBratDirLenient(path)) {
      ++docs;
      for (auto &v : p.issues) violations.push_back(std::move(v));
      for (auto &v : ValidateDocument(p.doc, map)) {
        violations.push_back(std::move(v));
      }
    }
  } else {
    Corpus corpus = LoadCorpus(path);
    for (const Document &d : corpus.documents) {
      ++docs;
      for (auto &v : ValidateDocument(d, map)) violations.push_back(std::move(v));
    }
  }
  if (json()) {
    nlohmann::json j = {{"documents", docs},
                        {"violations", nlohmann::json::array()}};
    for (const auto &v : violations) {
      j["violations"].push_back({{"kind", std::string(ViolationKindName(v.kind))},
                                 {"doc_id", v.doc_id},
                                 {"where", v.where},
                                 {"message", v.message}});
    }
    out_ << j.dump(2) << "\n";
  } else {
    for (const auto &v : violations) {
      out_ << v.doc_id << "\t" << ViolationKindName(v.kind) << "\t" << v.where
           << "\t" << v.message << "\n";
    }
    out_ << docs << " documents, " << violations.size() << " violations\n";
  }
  return violations.empty() ? kExitOk : kExitViolations;
}

int Runner::Stats() {
  CorpusStats stats = ComputeStats(LoadCorpus(CorpusPath()));
  if (json()) {
    out_ << ToJson(stats).dump(2) << "\n";
  } else {
    out_ << FormatStats(stats);
  }
  return kExitOk;
}

int Runner::Agreement() {
  std::vector<Document> a, b;
  if (Given("--a") || Given("--b")) {
    if (!Given("--a") || !Given("--b")) {
      throw CLI::ValidationError("--a/--b", "both layers are required");
    }
    a = LoadCorpus(f_.a).documents;
    b = LoadCorpus(f_.b).documents;
  } else {
    Corpus corpus = LoadCorpus(CorpusPath());
    if (!corpus.has_second_layer()) {
      throw Error(ErrorCode::kCorpusMismatch,
                  "corpus has no second layer (expected a/ and b/)");
    }
    a = std::move(corpus.documents);
    b = std::move(corpus.second_layer);
  }
  AgreementReport report = AgreementF1(a, b);
  if (json()) {
    out_ << ToJson(report).dump(2) << "\n";
  } else {
    PrintReport(report.entities, "Entity agreement");
    PrintReport(report.elements, "Frame element agreement");
  }
  return kExitOk;
}

int Runner::Split() {
  std::array<size_t, 3> sizes{};
  {
    std::stringstream ss(f_.sizes);
    std::string part;
    size_t i = 0;
    while (std::getline(ss, part, ',')) {
      if (i == 3) throw CLI::ValidationError("--sizes", "expected three sizes");
      try {
        size_t used = 0;
        long long v = std::stoll(part, &used);
        if (used != part.size() || v < 0) throw std::invalid_argument(part);
        sizes[i++] = static_cast<size_t>(v);
      } catch (const std::exception &) {
        throw CLI::ValidationError("--sizes", "bad size '" + part + "'");
      }
    }
    if (i != 3) throw CLI::ValidationError("--sizes", "expected three sizes");
  }
  uint64_t seed = Seed(13);
  CorpusSplit split = SplitCorpus(LoadCorpus(CorpusPath()), seed, sizes);
  const std::pair<const char *, const Corpus *> parts[] = {
      {"train", &split.train}, {"dev", &split.dev}, {"test", &split.test}};
  if (!f_.out.empty()) {
    for (const auto &[name, c] : parts) {
      SaveBratDir(c->documents, (fs::path(f_.out) / name).string());
    }
  }
  if (json()) {
    nlohmann::json j = {{"seed", seed}};
    for (const auto &[name, c] : parts) {
      nlohmann::json ids = nlohmann::json::array();
      for (const auto &d : c->documents) ids.push_back(d.doc_id);
      j[name] = ids;
    }
    out_ << j.dump(2) << "\n";
  } else {
    for (const auto &[name, c] : parts) {
      out_ << name << " (" << c->documents.size() << "):";
      for (const auto &d : c->documents) out_ << " " << d.doc_id;
      out_ << "\n";
    }
  }
  return kExitOk;
}

int Runner::ExportQa() {
  Corpus corpus = LoadCorpus(CorpusPath());
  QueryTemplateTable table = Templates();
  AttachmentMap map = Map();
  ExportOptions options;
  options.window = Window();
  std::ofstream file;
  if (!f_.out.empty()) {
    file.open(f_.out, std::ios::binary);
    if (!file) throw Error(ErrorCode::kIo, "cannot write " + f_.out);
  }
  std::ostream &sink = f_.out.empty() ? out_ : file;
  size_t records = 0;
  for (const Document &doc : corpus.documents) {
    for (const QARecord &r : ExportQaRecords(doc, table, map, options)) {
      sink << ToJson(r).dump() << "\n";
      ++records;
    }
  }
  if (!f_.out.empty()) {
    if (json()) {
      out_ << nlohmann::json{{"records", records}, {"out", f_.out}}.dump(2)
           << "\n";
    } else {
      out_ << records << " records written to " << f_.out << "\n";
    }
  }
  return kExitOk;
}

int Runner::Extract() {
  Corpus corpus = LoadCorpus(CorpusPath());
  ExtractionConfig config;
  config.map = Map();
  config.templates = Templates();
  config.window = Window();
  config.anchors = f_.anchors == "gold" ? AnchorMode::kGold : AnchorMode::kPredicted;
  config.markers = f_.markers == "on";
  config.Check();

  std::vector<ExtractionResult> results;
  if (f_.backend == "oracle") {
    OracleGateways gateways(corpus.documents, config.templates,
                            config.markers ? config.marker_tokens
                                           : AnchorMarkers{});
    results = RunPipeline(
        corpus.documents,
        [&](const Document &d) -> MrcGateway & { return gateways.For(d.doc_id); },
        config);
  } else {
    RemoteBackend backend(Endpoint());
    MrcGateway gateway(backend);
    results = RunPipeline(
        corpus.documents, [&](const Document &) -> MrcGateway & { return gateway; },
        config);
  }

  size_t failed = 0;
  bool backend_failure = false;
  nlohmann::json provenance = nlohmann::json::array();
  for (const auto &r : results) {
    if (!r.ok) {
      ++failed;
      err_ << r.doc_id << ": " << r.error << "\n";
      if (r.error_code && Error(*r.error_code, "").IsBackendFailure()) {
        backend_failure = true;
      }
    }
    provenance.push_back(ToJson(r));
  }
  if (!f_.out.empty()) {
    SaveBratDir(PredictedCorpus(results).documents, f_.out);
    WriteFile((fs::path(f_.out) / "provenance.json").string(),
              provenance.dump(2) + "\n");
  }
  if (json()) {
    out_ << nlohmann::json{{"documents", results.size()},
                           {"failed", failed},
                           {"out", f_.out}}
                .dump(2)
         << "\n";
  } else {
    out_ << results.size() << " documents, " << failed << " failed\n";
  }
  if (backend_failure) return kExitBackend;
  return failed == 0 ? kExitOk : kExitViolations;
}

int Runner::Evaluate() {
  Corpus pred = LoadCorpus(f_.pred);
  Corpus gold = LoadCorpus(f_.gold);
  AnchorMatching matching = f_.anchor_matching == "span-only"
                                ? AnchorMatching::kSpanOnly
                                : AnchorMatching::kStrict;
  EvaluationOptions options;
  options.map = Map();
  MetricsReport entities = EvaluateEntities(pred, gold, options);
  MetricsReport elements = EvaluateElements(pred, gold, matching, options);
  if (json()) {
    out_ << nlohmann::json{{"anchor_matching", f_.anchor_matching},
                           {"entities", ToJson(entities)},
                           {"elements", ToJson(elements)}}
                .dump(2)
         << "\n";
  } else {
    PrintReport(entities, "Entities");
    PrintReport(elements, "Frame elements (" + f_.anchor_matching + ")");
  }
  return kExitOk;
}

int Runner::Synth() {
  GeneratorConfig config;
  config.seed = Seed(7);
  config.note_count = f_.notes;
  config.discontinuous_rate = f_.discontinuous_rate;
  PerturbationMode mode =
      f_.mode == "mixed" ? PerturbationMode::kMixed : PerturbationMode::kDropOnly;
  Corpus corpus = f_.dual ? GenerateDualLayer(config, f_.rate, mode)
                          : Generate(config);
  if (f_.dual) {
    SaveBratDir(corpus.documents, (fs::path(f_.out) / "a").string());
    SaveBratDir(corpus.second_layer, (fs::path(f_.out) / "b").string());
  } else {
    SaveBratDir(corpus.documents, f_.out);
  }
  if (json()) {
    out_ << nlohmann::json{{"documents", corpus.documents.size()},
                           {"seed", config.seed},
                           {"dual", f_.dual},
                           {"out", f_.out}}
                .dump(2)
         << "\n";
  } else {
    out_ << corpus.documents.size() << " notes written to " << f_.out << "\n";
  }
  return kExitOk;
}

}  // namespace

ToolConfig ToolConfig::FromJson(const nlohmann::json &j) {
  if (!j.is_object()) {
    throw Error(ErrorCode::kMalformedConfig, "config must be an object");
  }
  ToolConfig c;
  for (const auto &[key, v] : j.items()) {
    if (key == "corpus") {
      c.corpus = ExistingPath(v, key);
    } else if (key == "templates") {
      c.templates = ExistingPath(v, key);
    } else if (key == "attachment_map") {
      c.attachment_map = ExistingPath(v, key);
    } else if (key == "endpoint") {
      if (!v.is_string()) {
        throw Error(ErrorCode::kMalformedConfig, "endpoint must be a string");
      }
      c.endpoint = v.get<std::string>();
    } else if (key == "max_tokens") {
      c.max_tokens = IntField(v, key);
    } else if (key == "overlap") {
      c.overlap = IntField(v, key);
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) {
        throw Error(ErrorCode::kMalformedConfig,
                    "seed must be a non-negative integer");
      }
      c.seed = v.get<uint64_t>();
    } else {
      throw Error(ErrorCode::kMalformedConfig, "unknown config key '" + key + "'");
    }
  }
  return c;
}

ToolConfig ToolConfig::Load(const std::string &path) {
  std::string text = ReadFile(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorCode::kMalformedConfig, path + ": " + e.what());
  }
  return FromJson(j);
}

int Dispatch(const std::vector<std::string> &args, std::ostream &out,
             std::ostream &err) {
  CLI::App app{"Spatial information extraction toolkit for clinical notes",
               "spatialqa"};
  app.require_subcommand(1);
  Common common;
  Flags f;

  auto add_common = [&](CLI::App *s) {
    s->add_option("--config", common.config_path, "ToolConfig JSON file");
    s->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"table", "json"}));
    s->add_option("--jobs", common.jobs, "Worker thread cap")
        ->check(CLI::NonNegativeNumber);
  };
  auto add_corpus = [&](CLI::App *s) {
    s->add_option("--corpus", f.corpus, "BRAT directory or .jsonl file");
  };
  auto add_window = [&](CLI::App *s) {
    s->add_option("--max-tokens", f.max_tokens, "Window size in tokens")
        ->check(CLI::PositiveNumber);
    s->add_option("--overlap", f.overlap, "Window overlap in tokens")
        ->check(CLI::NonNegativeNumber);
  };
  auto add_schema = [&](CLI::App *s) {
    s->add_option("--map", f.map, "Attachment map JSON");
    s->add_option("--templates", f.templates, "Query template JSON");
  };

  CLI::App *validate = app.add_subcommand("validate", "Check a corpus against the schema");
  add_common(validate);
  add_corpus(validate);
  validate->add_option("--map", f.map, "Attachment map JSON");

  CLI::App *stats = app.add_subcommand("stats", "Corpus statistics");
  add_common(stats);
  add_corpus(stats);

  CLI::App *agreement =
      app.add_subcommand("agreement", "Inter-annotator agreement between two layers");
  add_common(agreement);
  add_corpus(agreement);
  agreement->add_option("--a", f.a, "First layer");
  agreement->add_option("--b", f.b, "Second layer");

  CLI::App *split = app.add_subcommand("split", "Seeded train/dev/test split");
  add_common(split);
  add_corpus(split);
  split->add_option("--seed", f.seed, "Permutation seed");
  split->add_option("--sizes", f.sizes, "train,dev,test")->required();
  split->add_option("--out", f.out, "Write BRAT parts under DIR");

  CLI::App *export_qa = app.add_subcommand("export-qa", "Export QA training records");
  add_common(export_qa);
  add_corpus(export_qa);
  add_window(export_qa);
  add_schema(export_qa);
  export_qa->add_option("--out", f.out, "Output .jsonl (stdout if omitted)");

  CLI::App *extract = app.add_subcommand("extract", "Two-turn extraction");
  add_common(extract);
  add_corpus(extract);
  add_window(extract);
  add_schema(extract);
  extract->add_option("--backend", f.backend)
      ->check(CLI::IsMember({"oracle", "remote"}));
  extract->add_option("--endpoint", f.endpoint, "Remote backend base URL");
  extract->add_option("--anchors", f.anchors)
      ->check(CLI::IsMember({"predicted", "gold"}));
  extract->add_option("--markers", f.markers)->check(CLI::IsMember({"on", "off"}));
  extract->add_option("--out", f.out, "Output directory");

  CLI::App *evaluate = app.add_subcommand("evaluate", "Score predictions against gold");
  add_common(evaluate);
  evaluate->add_option("--pred", f.pred)->required();
  evaluate->add_option("--gold", f.gold)->required();
  evaluate->add_option("--anchor-matching", f.anchor_matching)
      ->check(CLI::IsMember({"strict", "span-only"}));
  evaluate->add_option("--map", f.map, "Attachment map JSON");

  CLI::App *synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  add_common(synth);
  synth->add_option("--seed", f.seed, "Generator seed");
  synth->add_option("--notes", f.notes)->check(CLI::NonNegativeNumber);
  synth->add_option("--out", f.out)->required();
  synth->add_flag("--dual", f.dual, "Also write a perturbed second layer");
  synth->add_option("--rate", f.rate)->check(CLI::Range(0.0, 1.0));
  synth->add_option("--mode", f.mode)->check(CLI::IsMember({"drop", "mixed"}));
  synth->add_option("--discontinuous-rate", f.discontinuous_rate)
      ->check(CLI::Range(0.0, 1.0));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    err << app.help();
    return kExitUsage;
  }

  CLI::App *sub = app.get_subcommands().front();
  try {
    Runner r(common, f, *sub, out, err);
    if (sub == validate) return r.Validate();
    if (sub == stats) return r.Stats();
    if (sub == agreement) return r.Agreement();
    if (sub == split) return r.Split();
    if (sub == export_qa) return r.ExportQa();
    if (sub == extract) return r.Extract();
    if (sub == evaluate) return r.Evaluate();
    return r.Synth();
  } catch (const CLI::Error &e) {
    err << "error: " << e.what() << "\n" << sub->help();
    return kExitUsage;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    if (e.IsBackendFailure()) return kExitBackend;
    if (e.code() == ErrorCode::kInvalidArgument ||
        e.code() == ErrorCode::kMalformedConfig) {
      return kExitUsage;
    }
    return kExitViolations;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitViolations;
  }
}

}  // namespace spatialqa
