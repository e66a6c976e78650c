// Copyright 2026 The softlayer Authors.
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

#include "softlayer/error.h"

namespace softlayer {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
      return "io";
    case ErrorCode::kUnsupportedFormat:
      return "unsupported_format";
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kDimensionMismatch:
      return "dimension_mismatch";
    case ErrorCode::kNonFiniteData:
      return "non_finite_data";
    case ErrorCode::kDegenerateDisparity:
      return "degenerate_disparity";
    case ErrorCode::kNoSourcePixels:
      return "no_source_pixels";
    case ErrorCode::kManifest:
      return "manifest";
    case ErrorCode::kVersion:
      return "version";
    case ErrorCode::kUnmatchedFiles:
      return "unmatched_files";
  }
  return "unknown";
}

void RethrowWithStage(std::string_view stage, const Error& error) {
  throw Error(error.code(), std::string(stage) + ": " + error.what());
}

}  // namespace softlayer
