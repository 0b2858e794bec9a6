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

#ifndef SPATIALQA_ERRORS_H_
#define SPATIALQA_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace spatialqa {

// Failure classes raised by the toolkit. Schema violations found during
// validation are reported as data (see validation.h), not through these.
enum class ErrorCode {
  kMalformedLine,
  kUnknownType,
  kSpanOutOfBounds,
  kSurfaceMismatch,
  kDanglingReference,
  kInvalidUtf8,
  kMissingElement,
  kMalformedConfig,
  kEmptyCorpus,
  kTextMismatch,
  kCorpusMismatch,
  kSizeMismatch,
  kUnlicensedPair,
  kAnchorTooLong,
  kInvalidArgument,
  kBackendUnavailable,
  kTimeout,
  kMalformedResponse,
  kUnparsableQuery,
  kVocabularyMissing,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &detail)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const { return code_; }
  const std::string &detail() const { return detail_; }

  // Backend failures the pipeline may retry or record as a gap.
  bool IsBackendFailure() const {
    return code_ == ErrorCode::kBackendUnavailable ||
           code_ == ErrorCode::kTimeout ||
           code_ == ErrorCode::kMalformedResponse;
  }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace spatialqa

#endif  // SPATIALQA_ERRORS_H_
