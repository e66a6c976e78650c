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

#ifndef SOFTLAYER_ERROR_H_
#define SOFTLAYER_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace softlayer {

enum class ErrorCode {
  kIo,
  kUnsupportedFormat,
  kInvalidArgument,
  kDimensionMismatch,
  kNonFiniteData,
  kDegenerateDisparity,
  kNoSourcePixels,
  kManifest,
  kVersion,
  kUnmatchedFiles,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures surface as this exception. The code is stable; the
// message names the offending path or field.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Rethrows `error` with `stage` prepended to its message, keeping the code.
[[noreturn]] void RethrowWithStage(std::string_view stage, const Error& error);

}  // namespace softlayer

#endif  // SOFTLAYER_ERROR_H_
