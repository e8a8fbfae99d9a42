/* Copyright 2026 The AAS Kernels Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef AAS_ERROR_HPP_
#define AAS_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace aas {

enum class ErrorCode {
  kDimensionMismatch,
  kLengthMismatch,
  kNonFiniteInput,
  kInvalidParameter,
  kNoFeasiblePath,
  kInvalidPath,
  kNegativeDuration,
  kEmptyOutput,
  kEmptyInput,
  kInsufficientVoicedFrames,
  kZeroVariance,
  kMalformedHeader,
  kUnsupportedDtype,
  kUnsupportedRank,
  kFortranOrderUnsupported,
  kIoFailure,
};

// Stable snake_case identifier, used in machine-readable error output.
std::string_view ErrorCodeName(ErrorCode code) noexcept;

// All library failures are reported through this exception type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace aas

#endif  // AAS_ERROR_HPP_
