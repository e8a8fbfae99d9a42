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

#ifndef AAS_REGULATE_HPP_
#define AAS_REGULATE_HPP_

#include <cstddef>
#include <string_view>

#include "aas/align.hpp"
#include "aas/config.hpp"
#include "aas/matrix.hpp"

namespace aas {

// Where the stacking happens in a model pipeline. The tensor operation is
// identical for both; the tag is carried through for reports.
enum class ReductionPlacement { kPreEncoder, kPostEncoder };

struct ReductionConfig {
  std::size_t k = 4;
  PadPolicy pad_policy = PadPolicy::kPadRepeatLast;
  ReductionPlacement placement = ReductionPlacement::kPostEncoder;
};

std::string_view PadPolicyName(PadPolicy policy) noexcept;
std::string_view PlacementName(ReductionPlacement placement) noexcept;

// Length regulation: frame i is repeated durations[i] times; zero
// durations drop the frame.
FeatureMatrix Expand(const FeatureMatrix& seq, const DurationSeq& durations);

// Stacks k adjacent frames into one row of width d * k.
FeatureMatrix ReduceStack(const FeatureMatrix& seq, const ReductionConfig& config);

// Inverse of ReduceStack: splits each row into k frames of width cols / k.
FeatureMatrix Unstack(const FeatureMatrix& stacked, std::size_t k);

}  // namespace aas

#endif  // AAS_REGULATE_HPP_
