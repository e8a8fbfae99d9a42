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

#include "aas/error.hpp"

namespace aas {

std::string_view ErrorCodeName(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "dim_mismatch";
    case ErrorCode::kLengthMismatch: return "length_mismatch";
    case ErrorCode::kNonFiniteInput: return "non_finite_input";
    case ErrorCode::kInvalidParameter: return "invalid_parameter";
    case ErrorCode::kNoFeasiblePath: return "no_feasible_path";
    case ErrorCode::kInvalidPath: return "invalid_path";
    case ErrorCode::kNegativeDuration: return "negative_duration";
    case ErrorCode::kEmptyOutput: return "empty_output";
    case ErrorCode::kEmptyInput: return "empty_input";
    case ErrorCode::kInsufficientVoicedFrames: return "insufficient_voiced_frames";
    case ErrorCode::kZeroVariance: return "zero_variance";
    case ErrorCode::kMalformedHeader: return "malformed_header";
    case ErrorCode::kUnsupportedDtype: return "unsupported_dtype";
    case ErrorCode::kUnsupportedRank: return "unsupported_rank";
    case ErrorCode::kFortranOrderUnsupported: return "fortran_order_unsupported";
    case ErrorCode::kIoFailure: return "io_failure";
  }
  return "unknown";
}

}  // namespace aas
