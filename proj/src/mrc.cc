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

#include "spatialqa/mrc.h"

#include <cmath>
#include <map>
#include <set>
#include <thread>

#include "spatialqa/errors.h"
#include "spatialqa/utf8.h"

namespace spatialqa {
namespace {

[[noreturn]] void Malformed(const std::string &message) {
  throw Error(ErrorCode::kMalformedResponse, message);
}

const nlohmann::json &Items(const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("items") || !j.at("items").is_array()) {
    Malformed("body must be an object with an 'items' list");
  }
  return j.at("items");
}

const std::string &StringField(const nlohmann::json &j, const char *key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_string()) {
    Malformed(std::string("field '") + key + "' must be a string");
  }
  return j.at(key).get_ref<const std::string &>();
}

AnswerSpan AnswerFromWire(const nlohmann::json &a) {
  if (!a.is_object()) Malformed("answer must be an object");
  for (const char *key : {"start", "end"}) {
    if (!a.contains(key) || !a.at(key).is_number_integer()) {
      Malformed(std::string("answer '") + key + "' must be an integer");
    }
  }
  if (!a.contains("score") || !a.at("score").is_number()) {
    Malformed("answer 'score' must be a number");
  }
  AnswerSpan s;
  int64_t start = a.at("start").get<int64_t>();
  int64_t end = a.at("end").get<int64_t>();
  if (start < INT32_MIN || start > INT32_MAX || end < INT32_MIN || end > INT32_MAX) {
    Malformed("answer offsets out of range");
  }
  s.start = static_cast<int32_t>(start);
  s.end = static_cast<int32_t>(end);
  s.text = StringField(a, "text");
  s.score = a.at("score").get<double>();
  return s;
}

class SlotGuard {
 public:
  SlotGuard(std::mutex &mu, std::condition_variable &cv, int &in_flight,
            int limit)
      : mu_(mu), cv_(cv), in_flight_(in_flight) {
    std::unique_lock<std::mutex> lock(mu_);
    cv_.wait(lock, [&] { return in_flight_ < limit; });
    ++in_flight_;
  }
  ~SlotGuard() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      --in_flight_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex &mu_;
  std::condition_variable &cv_;
  int &in_flight_;
};

}  // namespace

nlohmann::json RequestToWire(const BackendRequest &request) {
  nlohmann::json items = nlohmann::json::array();
  for (const RequestItem &item : request) {
    items.push_back(
        {{"id", item.id}, {"query", item.query}, {"context", item.context}});
  }
  return {{"items", items}};
}

BackendRequest RequestFromWire(const nlohmann::json &j) {
  BackendRequest request;
  for (const auto &item : Items(j)) {
    request.push_back({StringField(item, "id"), StringField(item, "query"),
                       StringField(item, "context")});
  }
  return request;
}

nlohmann::json ResponseToWire(const BackendResponse &response) {
  nlohmann::json items = nlohmann::json::array();
  for (const ResponseItem &item : response) {
    nlohmann::json answers = nlohmann::json::array();
    for (const AnswerSpan &a : item.answers) {
      answers.push_back({{"start", a.start},
                         {"end", a.end},
                         {"text", a.text},
                         {"score", a.score}});
    }
    items.push_back({{"id", item.id}, {"answers", answers}});
  }
  return {{"items", items}};
}

BackendResponse ResponseFromWire(const nlohmann::json &j) {
  BackendResponse response;
  for (const auto &item : Items(j)) {
    ResponseItem r;
    r.id = StringField(item, "id");
    if (!item.contains("answers") || !item.at("answers").is_array()) {
      Malformed("item '" + r.id + "' needs an 'answers' list");
    }
    for (const auto &a : item.at("answers")) r.answers.push_back(AnswerFromWire(a));
    response.push_back(std::move(r));
  }
  return response;
}

std::vector<std::string> CheckWireResponse(const nlohmann::json &request,
                                           const nlohmann::json &response) {
  std::vector<std::string> problems;
  BackendRequest req;
  BackendResponse resp;
  try {
    req = RequestFromWire(request);
  } catch (const Error &e) {
    return {"request: " + e.detail()};
  }
  try {
    resp = ResponseFromWire(response);
  } catch (const Error &e) {
    return {"response: " + e.detail()};
  }
  std::map<std::string, const RequestItem *> by_id;
  for (const RequestItem &item : req) by_id.emplace(item.id, &item);
  std::set<std::string> answered;
  for (const ResponseItem &item : resp) {
    auto it = by_id.find(item.id);
    if (it == by_id.end()) {
      problems.push_back("unknown id '" + item.id + "'");
      continue;
    }
    if (!answered.insert(item.id).second) {
      problems.push_back("id '" + item.id + "' answered twice");
    }
    std::optional<Utf8Text> context;
    try {
      context.emplace(it->second->context);
    } catch (const Error &e) {
      problems.push_back("id '" + item.id + "': context " + e.detail());
      continue;
    }
    for (const AnswerSpan &a : item.answers) {
      std::string where = "id '" + item.id + "' span (" + std::to_string(a.start) +
                          "," + std::to_string(a.end) + ")";
      if (a.start < 0 || a.start >= a.end || a.end > context->length()) {
        problems.push_back(where + ": outside context");
      } else if (context->Slice(a.start, a.end) != a.text) {
        problems.push_back(where + ": text differs from context slice");
      }
      if (!(a.score >= 0 && a.score <= 1)) {
        problems.push_back(where + ": score outside [0, 1]");
      }
    }
  }
  for (const RequestItem &item : req) {
    if (!answered.count(item.id)) problems.push_back("id '" + item.id + "' unanswered");
  }
  return problems;
}

MrcGateway::MrcGateway(Backend &backend, GatewayOptions options)
    : backend_(backend), options_(options), backend_name_(backend.name()) {
  if (options_.max_in_flight < 1) options_.max_in_flight = 1;
  if (options_.max_retries < 0) options_.max_retries = 0;
}

BackendResponse MrcGateway::AnswerBatch(const BackendRequest &request) {
  if (request.empty()) throw Error(ErrorCode::kInvalidArgument, "empty batch");
  std::set<std::string_view> ids;
  for (const RequestItem &item : request) {
    if (item.context.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "empty context for " + item.id);
    }
    if (!ids.insert(item.id).second) {
      throw Error(ErrorCode::kInvalidArgument, "repeated id " + item.id);
    }
  }

  SlotGuard slot(mu_, cv_, in_flight_, options_.max_in_flight);
  auto backoff = options_.initial_backoff;
  for (int attempt = 0;; ++attempt) {
    try {
      return Validate(request, backend_.Answer(request));
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kBackendUnavailable ||
          attempt >= options_.max_retries) {
        throw;
      }
    }
    std::this_thread::sleep_for(backoff);
    backoff *= 2;
  }
}

BackendResponse MrcGateway::Validate(const BackendRequest &request,
                                     BackendResponse response) {
  std::map<std::string_view, size_t> position;
  for (size_t i = 0; i < request.size(); ++i) position.emplace(request[i].id, i);
  if (response.size() != request.size()) {
    Malformed(std::to_string(response.size()) + " items for " +
              std::to_string(request.size()) + " requests");
  }
  BackendResponse ordered(request.size());
  std::vector<bool> filled(request.size(), false);
  for (ResponseItem &item : response) {
    auto it = position.find(item.id);
    if (it == position.end()) Malformed("unknown id '" + item.id + "'");
    if (filled[it->second]) Malformed("id '" + item.id + "' answered twice");
    filled[it->second] = true;

    Utf8Text context(request[it->second].context);
    std::vector<AnswerSpan> kept;
    for (AnswerSpan &a : item.answers) {
      if (a.start < 0 || a.start >= a.end) {
        Malformed("id '" + item.id + "': bad span (" + std::to_string(a.start) +
                  "," + std::to_string(a.end) + ")");
      }
      if (!(a.score >= 0 && a.score <= 1)) {
        Malformed("id '" + item.id + "': score outside [0, 1]");
      }
      if (a.end > context.length()) {
        ++dropped_spans_;
        continue;
      }
      if (context.Slice(a.start, a.end) != a.text) {
        Malformed("id '" + item.id + "': answer text differs from context");
      }
      if (a.score < options_.score_threshold) continue;
      kept.push_back(std::move(a));
    }
    ordered[it->second] = {std::move(item.id), std::move(kept)};
  }
  return ordered;
}

}  // namespace spatialqa
