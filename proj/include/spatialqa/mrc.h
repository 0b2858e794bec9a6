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

// Machine reading backend contract and the gateway that enforces it.
//
// Wire protocol (remote backends):
//   POST /v1/answers
//     {"items": [{"id": str, "query": str, "context": str}, ...]}
//   200 {"items": [{"id": str, "answers": [{"start": int, "end": int,
//                                            "text": str, "score": num}]}]}
//   503 while unavailable.
//   GET /v1/health -> {"status": "ok"}
// Offsets are code points into "context". An empty answer list means the
// element is absent.

#ifndef SPATIALQA_MRC_H_
#define SPATIALQA_MRC_H_

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace spatialqa {

struct AnswerSpan {
  int32_t start = 0;
  int32_t end = 0;
  std::string text;
  double score = 1.0;

  bool operator==(const AnswerSpan &) const = default;
};

struct RequestItem {
  std::string id;
  std::string query;
  std::string context;
};

struct ResponseItem {
  std::string id;
  std::vector<AnswerSpan> answers;
};

using BackendRequest = std::vector<RequestItem>;
using BackendResponse = std::vector<ResponseItem>;

// Implementations may throw Error with kBackendUnavailable, kTimeout or
// kMalformedResponse. Implementations must be safe to call concurrently.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string name() const = 0;
  virtual BackendResponse Answer(const BackendRequest &request) = 0;
};

nlohmann::json RequestToWire(const BackendRequest &request);
// Throws Error(kMalformedResponse) on schema violations.
BackendRequest RequestFromWire(const nlohmann::json &j);
nlohmann::json ResponseToWire(const BackendResponse &response);
BackendResponse ResponseFromWire(const nlohmann::json &j);

// Protocol conformance of a wire response against its request: schema,
// id permutation, span bounds and text fidelity. Returns one message per
// problem; empty means conformant.
std::vector<std::string> CheckWireResponse(const nlohmann::json &request,
                                           const nlohmann::json &response);

struct GatewayOptions {
  // Batches allowed in flight at once across all callers.
  int max_in_flight = 4;
  // Retries after BackendUnavailable, with exponential backoff.
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{50};
  // Answers scoring below this are discarded.
  double score_threshold = 0.0;
};

// Front door to a backend. Validates every response, drops answers that
// extend past their context, and returns items in request order. Safe for
// concurrent use.
class MrcGateway {
 public:
  explicit MrcGateway(Backend &backend, GatewayOptions options = {});

  // Throws Error(kInvalidArgument) for an empty batch, an empty context or
  // repeated ids; kMalformedResponse when the response ids are not a
  // permutation of the request ids or a span is reversed, negative, scored
  // outside [0, 1], or disagrees with the context text; kBackendUnavailable
  // once retries are exhausted; kTimeout as raised by the backend.
  BackendResponse AnswerBatch(const BackendRequest &request);

  const std::string &backend_name() const { return backend_name_; }

  // Answers dropped for ending past the context.
  int64_t dropped_spans() const { return dropped_spans_.load(); }

 private:
  BackendResponse Validate(const BackendRequest &request,
                           BackendResponse response);

  Backend &backend_;
  GatewayOptions options_;
  std::string backend_name_;
  std::mutex mu_;
  std::condition_variable cv_;
  int in_flight_ = 0;
  std::atomic<int64_t> dropped_spans_{0};
};

}  // namespace spatialqa

#endif  // SPATIALQA_MRC_H_
