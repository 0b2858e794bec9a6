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

#ifndef SPATIALQA_REMOTE_BACKEND_H_
#define SPATIALQA_REMOTE_BACKEND_H_

#include <chrono>
#include <string>

#include "spatialqa/mrc.h"

namespace spatialqa {

struct RemoteOptions {
  std::chrono::milliseconds connect_timeout{2000};
  std::chrono::milliseconds read_timeout{60000};
};

// HTTP client for the /v1/answers wire protocol. A fresh connection is made
// per call, so instances are safe to share between threads.
class RemoteBackend : public Backend {
 public:
  // |endpoint| is a base URL such as "http://localhost:8000".
  explicit RemoteBackend(std::string endpoint, RemoteOptions options = {});

  std::string name() const override { return "remote:" + endpoint_; }

  // Connection failures and HTTP 503 raise kBackendUnavailable; a read
  // timeout raises kTimeout naming the batch's first id; any other status or
  // an unparsable body raises kMalformedResponse.
  BackendResponse Answer(const BackendRequest &request) override;

  // GET /v1/health returned {"status": "ok"}.
  bool Healthy() const;

 private:
  std::string endpoint_;
  RemoteOptions options_;
};

}  // namespace spatialqa

#endif  // SPATIALQA_REMOTE_BACKEND_H_
