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

#include "spatialqa/metrics.h"

#include <cstdio>

#include "spatialqa/errors.h"

namespace spatialqa {
namespace {

constexpr std::string_view kGroupNames[] = {"Entity", "Spatial(sptr)",
                                            "Spatial(entity)", "Desc(entity)"};

bool Empty(const Tally &t) { return t.tp == 0 && t.fp == 0 && t.fn == 0; }

nlohmann::json TallyJson(const Tally &t, const Prf &p) {
  return {{"tp", t.tp},
          {"fp", t.fp},
          {"fn", t.fn},
          {"precision", p.precision},
          {"recall", p.recall},
          {"f1", p.f1}};
}

void ReadTally(const nlohmann::json &j, Tally &t, Prf &p) {
  t.tp = j.at("tp").get<int64_t>();
  t.fp = j.at("fp").get<int64_t>();
  t.fn = j.at("fn").get<int64_t>();
  p.precision = j.at("precision").get<double>();
  p.recall = j.at("recall").get<double>();
  p.f1 = j.at("f1").get<double>();
}

RowGroup ParseGroup(const std::string &name) {
  for (int g = 0; g < 4; ++g) {
    if (kGroupNames[g] == name) return static_cast<RowGroup>(g);
  }
  throw Error(ErrorCode::kMalformedConfig, "unknown row group '" + name + "'");
}

}  // namespace

Prf ComputePrf(const Tally &t) {
  Prf p;
  if (t.tp + t.fp > 0) p.precision = static_cast<double>(t.tp) / (t.tp + t.fp);
  if (t.tp + t.fn > 0) p.recall = static_cast<double>(t.tp) / (t.tp + t.fn);
  if (p.precision + p.recall > 0) {
    p.f1 = 2 * p.precision * p.recall / (p.precision + p.recall);
  }
  return p;
}

std::string_view RowGroupName(RowGroup group) {
  return kGroupNames[static_cast<int>(group)];
}

const MetricsRow *MetricsReport::Find(std::string_view type) const {
  for (const MetricsRow &row : rows) {
    if (row.type == type) return &row;
  }
  return nullptr;
}

MetricsReport BuildReport(const std::vector<NamedTally> &tallies,
                          const ReportOptions &options) {
  MetricsReport report;
  double sum_p = 0, sum_r = 0, sum_f = 0;
  for (const NamedTally &t : tallies) {
    bool empty = Empty(t.tally);
    report.micro.tally += t.tally;
    report.macro.tally += t.tally;
    if (!(empty && options.omit_empty_from_macro)) {
      Prf p = ComputePrf(t.tally);
      sum_p += p.precision;
      sum_r += p.recall;
      sum_f += p.f1;
      ++report.macro.types;
    }
    ++report.micro.types;
    if (empty && options.omit_empty_rows) continue;
    report.rows.push_back({t.type, t.group, t.tally, ComputePrf(t.tally)});
  }
  report.micro.prf = ComputePrf(report.micro.tally);
  if (report.macro.types > 0) {
    report.macro.prf = {sum_p / report.macro.types, sum_r / report.macro.types,
                        sum_f / report.macro.types};
  }
  return report;
}

nlohmann::json ToJson(const MetricsReport &report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const MetricsRow &row : report.rows) {
    nlohmann::json j = TallyJson(row.tally, row.prf);
    j["type"] = row.type;
    j["group"] = std::string(RowGroupName(row.group));
    rows.push_back(std::move(j));
  }
  nlohmann::json micro = TallyJson(report.micro.tally, report.micro.prf);
  micro["types"] = report.micro.types;
  nlohmann::json macro = TallyJson(report.macro.tally, report.macro.prf);
  macro["types"] = report.macro.types;
  return {{"rows", rows}, {"micro", micro}, {"macro", macro}};
}

MetricsReport ReportFromJson(const nlohmann::json &j) {
  MetricsReport report;
  try {
    for (const auto &jr : j.at("rows")) {
      MetricsRow row;
      row.type = jr.at("type").get<std::string>();
      row.group = ParseGroup(jr.at("group").get<std::string>());
      ReadTally(jr, row.tally, row.prf);
      report.rows.push_back(std::move(row));
    }
    for (auto [key, agg] : {std::pair{"micro", &report.micro},
                            std::pair{"macro", &report.macro}}) {
      ReadTally(j.at(key), agg->tally, agg->prf);
      agg->types = j.at(key).at("types").get<int>();
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kMalformedConfig, std::string("report: ") + e.what());
  }
  return report;
}

std::string FormatTable(const MetricsReport &report, std::string_view title) {
  std::string out;
  char line[160];
  out += title;
  out += '\n';
  std::snprintf(line, sizeof(line), "%-16s %-20s %7s %7s %7s %7s %7s %7s\n",
                "Group", "Type", "P(%)", "R(%)", "F1(%)", "TP", "FP", "FN");
  out += line;
  auto emit = [&](std::string_view group, std::string_view type,
                  const Tally &t, const Prf &p) {
    std::snprintf(line, sizeof(line),
                  "%-16.*s %-20.*s %7.2f %7.2f %7.2f %7lld %7lld %7lld\n",
                  static_cast<int>(group.size()), group.data(),
                  static_cast<int>(type.size()), type.data(),
                  100 * p.precision, 100 * p.recall, 100 * p.f1,
                  static_cast<long long>(t.tp), static_cast<long long>(t.fp),
                  static_cast<long long>(t.fn));
    out += line;
  };
  for (const MetricsRow &row : report.rows) {
    emit(RowGroupName(row.group), row.type, row.tally, row.prf);
  }
  emit("Overall", "micro", report.micro.tally, report.micro.prf);
  emit("Overall", "macro", report.macro.tally, report.macro.prf);
  return out;
}

}  // namespace spatialqa
