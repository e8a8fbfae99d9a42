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

#include "aas/regulate.hpp"

#include <algorithm>
#include <string>

#include "aas/error.hpp"

namespace aas {

std::string_view PadPolicyName(PadPolicy policy) noexcept {
  return policy == PadPolicy::kTruncate ? "truncate" : "pad_repeat_last";
}

std::string_view PlacementName(ReductionPlacement placement) noexcept {
  return placement == ReductionPlacement::kPreEncoder ? "pre_encoder" : "post_encoder";
}

FeatureMatrix Expand(const FeatureMatrix& seq, const DurationSeq& durations) {
  if (durations.size() != seq.rows()) {
    throw Error(ErrorCode::kLengthMismatch,
                "sequence has " + std::to_string(seq.rows()) + " frames but " +
                    std::to_string(durations.size()) + " durations were given");
  }
  std::size_t total = 0;
  for (std::int64_t d : durations.values) {
    if (d < 0) throw Error(ErrorCode::kNegativeDuration, "negative duration");
    total += static_cast<std::size_t>(d);
  }
  if (total == 0) throw Error(ErrorCode::kEmptyOutput, "all durations are zero");

  FeatureMatrix out(total, seq.cols());
  std::size_t row = 0;
  for (std::size_t i = 0; i < seq.rows(); ++i) {
    const auto src = seq.row(i);
    for (std::int64_t r = 0; r < durations.values[i]; ++r, ++row) {
      std::copy(src.begin(), src.end(), out.row(row).begin());
    }
  }
  return out;
}

FeatureMatrix ReduceStack(const FeatureMatrix& seq, const ReductionConfig& config) {
  const std::size_t k = config.k;
  if (k == 0) throw Error(ErrorCode::kInvalidParameter, "reduction factor must be >= 1");
  if (seq.rows() == 0 || seq.cols() == 0) {
    throw Error(ErrorCode::kEmptyInput, "cannot reduce an empty sequence");
  }

  const std::size_t t = seq.rows();
  const std::size_t d = seq.cols();
  const std::size_t out_rows = config.pad_policy == PadPolicy::kTruncate ? t / k : (t + k - 1) / k;
  if (out_rows == 0) {
    throw Error(ErrorCode::kEmptyOutput,
                "truncating " + std::to_string(t) + " frames by k=" + std::to_string(k) +
                    " leaves nothing");
  }

  FeatureMatrix out(out_rows, d * k);
  for (std::size_t m = 0; m < out_rows; ++m) {
    auto dst = out.row(m);
    for (std::size_t s = 0; s < k; ++s) {
      const auto src = seq.row(std::min(m * k + s, t - 1));
      std::copy(src.begin(), src.end(), dst.begin() + static_cast<std::ptrdiff_t>(s * d));
    }
  }
  return out;
}

FeatureMatrix Unstack(const FeatureMatrix& stacked, std::size_t k) {
  if (k == 0 || stacked.cols() % k != 0) {
    throw Error(ErrorCode::kInvalidParameter, "row width is not a multiple of k");
  }
  const std::size_t d = stacked.cols() / k;
  // Row-major storage makes this a reshape.
  std::vector<double> data(stacked.data().begin(), stacked.data().end());
  return FeatureMatrix(stacked.rows() * k, d, std::move(data));
}

}  // namespace aas
