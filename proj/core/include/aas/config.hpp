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

#ifndef AAS_CONFIG_HPP_
#define AAS_CONFIG_HPP_

#include <cstddef>

namespace aas {

enum class PadPolicy { kPadRepeatLast, kTruncate };

enum class LossNormalization { kRaw, kPerFrame };

// Knobs for the alignment pipeline and the command-line tools.
struct AASConfig {
  double omega = 1.0;  // beta-binomial prior scaling
  bool use_prior = true;
  bool viterbi_on_linear = false;  // run MAS on exp(scores) instead of log scores
  double alpha = 2.0;              // weight of forward-sum + KL in the total objective
  std::size_t k = 4;               // source reduction factor
  PadPolicy pad_policy = PadPolicy::kPadRepeatLast;
  LossNormalization loss_normalization = LossNormalization::kRaw;
};

}  // namespace aas

#endif  // AAS_CONFIG_HPP_
