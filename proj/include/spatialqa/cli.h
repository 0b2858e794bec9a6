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


// Subcommand dispatch for the spatialqa binary. Lives in the library so
// tests can drive it with captured streams.

#ifndef SPATIALQA_CLI_H_
#define SPATIALQA_CLI_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace spatialqa {

// Shared defaults read from --config FILE; explicit flags win. Keys:
// corpus, templates, attachment_map, endpoint, max_tokens, overlap, seed.
struct ToolConfig {
  std::optional<std::string> corpus;
  std::optional<std::string> templates;
  std::optional<std::string> attachment_map;
  std::optional<std::string> endpoint;
  std::optional<int> max_tokens;
  std::optional<int> overlap;
  std::optional<uint64_t> seed;

  // Throws Error(kMalformedConfig) on unknown keys or wrong value types and
  // Error(kIo) when a referenced path does not exist.
  static ToolConfig FromJson(const nlohmann::json &j);
  static ToolConfig Load(const std::string &path);
};

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;  // also data and I/O errors
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBackend = 3;

// Environment variable overriding the configured backend endpoint.
inline constexpr const char *kEndpointEnv = "SPATIALQA_ENDPOINT";

// |args| excludes the program name.
int Dispatch(const std::vector<std::string> &args, std::ostream &out,
             std::ostream &err);

}  // namespace spatialqa

#endif  // SPATIALQA_CLI_H_
