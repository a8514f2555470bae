// util/error.h

// Copyright 2026  The senan authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SENAN_UTIL_ERROR_H_
#define SENAN_UTIL_ERROR_H_

#include <stdexcept>
#include <string>

namespace senan {

enum class ErrorCode {
  kShapeMismatch,
  kDomainError,
  kNotScalar,
  kDegenerateMatrix,
  kInvalidConfig,
  kZeroReferenceSignal,
  kLengthMismatch,
  kZeroNoiseSignal,
  kInvalidFactor,
  kTooShort,
  kUnknownSpeaker,
  kInvalidWidth,
  kFrameCountMismatch,
  kLabelOutOfRange,
  kUnknownPhone,
  kEmptyTranscript,
  kNoPath,
  kMissingUtterance,
  kIoError,
};

// Single exception type carrying a machine-checkable code; callers that need
// to distinguish failure modes switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void ThrowError(ErrorCode code, const std::string &msg) {
  throw Error(code, msg);
}

#define SENAN_CHECK(cond, code, msg)             \
  do {                                           \
    if (!(cond)) ::senan::ThrowError(code, msg); \
  } while (0)

}  // namespace senan

#endif  // SENAN_UTIL_ERROR_H_
