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

#include "spatialqa/errors.h"

namespace spatialqa {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kUnknownType: return "UnknownType";
    case ErrorCode::kSpanOutOfBounds: return "SpanOutOfBounds";
    case ErrorCode::kSurfaceMismatch: return "SurfaceMismatch";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kInvalidUtf8: return "InvalidUtf8";
    case ErrorCode::kMissingElement: return "MissingElement";
    case ErrorCode::kMalformedConfig: return "MalformedConfig";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kTextMismatch: return "TextMismatch";
    case ErrorCode::kCorpusMismatch: return "CorpusMismatch";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kUnlicensedPair: return "UnlicensedPair";
    case ErrorCode::kAnchorTooLong: return "AnchorTooLong";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kBackendUnavailable: return "BackendUnavailable";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kMalformedResponse: return "MalformedResponse";
    case ErrorCode::kUnparsableQuery: return "UnparsableQuery";
    case ErrorCode::kVocabularyMissing: return "VocabularyMissing";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace spatialqa
