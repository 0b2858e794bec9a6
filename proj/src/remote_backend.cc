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

#include "spatialqa/remote_backend.h"

#include "httplib.h"
#include "spatialqa/errors.h"

namespace spatialqa {
namespace {

httplib::Client MakeClient(const std::string &endpoint,
                           const RemoteOptions &options) {
  httplib::Client client(endpoint);
  if (!client.is_valid()) {
    throw Error(ErrorCode::kInvalidArgument, "bad endpoint '" + endpoint + "'");
  }
  client.set_connection_timeout(options.connect_timeout);
  client.set_read_timeout(options.read_timeout);
  client.set_write_timeout(options.read_timeout);
  return client;
}

}  // namespace

RemoteBackend::RemoteBackend(std::string endpoint, RemoteOptions options)
    : endpoint_(std::move(endpoint)), options_(options) {
  while (!endpoint_.empty() && endpoint_.back() == '/') endpoint_.pop_back();
}

BackendResponse RemoteBackend::Answer(const BackendRequest &request) {
  httplib::Client client = MakeClient(endpoint_, options_);
  std::string body = RequestToWire(request).dump();
  auto result = client.Post("/v1/answers", body, "application/json");
  if (!result) {
    if (result.error() == httplib::Error::Read) {
      throw Error(ErrorCode::kTimeout,
                  request.empty() ? endpoint_ : request.front().id);
    }
    throw Error(ErrorCode::kBackendUnavailable,
                endpoint_ + ": " + httplib::to_string(result.error()));
  }
  if (result->status == 503) {
    throw Error(ErrorCode::kBackendUnavailable, endpoint_ + " returned 503");
  }
  if (result->status != 200) {
    throw Error(ErrorCode::kMalformedResponse,
                endpoint_ + " returned status " + std::to_string(result->status));
  }
  nlohmann::json j = nlohmann::json::parse(result->body, nullptr, false);
  if (j.is_discarded()) {
    throw Error(ErrorCode::kMalformedResponse, "response body is not JSON");
  }
  return ResponseFromWire(j);
}

bool RemoteBackend::Healthy() const {
  try {
    httplib::Client client = MakeClient(endpoint_, options_);
    auto result = client.Get("/v1/health");
    if (!result || result->status != 200) return false;
    nlohmann::json j = nlohmann::json::parse(result->body, nullptr, false);
    return j.is_object() && j.value("status", "") == "ok";
  } catch (const Error &) {
    return false;
  }
}

}  // namespace spatialqa
