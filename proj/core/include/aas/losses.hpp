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

#ifndef AAS_LOSSES_HPP_
#define AAS_LOSSES_HPP_

#include <optional>
#include <span>

#include "aas/align.hpp"
#include "aas/matrix.hpp"

namespace aas {

// A loss value and, when requested, its gradient with respect to the
// differentiated input (same shape; vectors are stored as N x 1).
struct LossValue {
  double value = 0.0;
  std::optional<Matrix> gradient;
};

struct ObjectiveWeights {
  double alpha = 2.0;
};

enum class DurationDomain { kLog1p, kLinear };

// Negative log of the total probability of all monotone stay-or-advance
// paths through `log_probs` (no blank symbol, no normalization). The
// gradient is minus the posterior occupancy of each cell.
LossValue ForwardSumLoss(const Matrix& log_probs, bool with_gradient = true);
inline LossValue ForwardSumLoss(const LogAlignment& log_probs, bool with_gradient = true) {
  return ForwardSumLoss(log_probs.values, with_gradient);
}

// -(1/T_trg) * sum_j log_soft(a(j), j): KL(hard || soft) averaged per
// target frame. The gradient is -1/T_trg on path cells and 0 elsewhere.
LossValue KlHardSoftLoss(const LogAlignment& log_soft, const PathMatrix& hard);

// Mean absolute difference; gradient sign(pred - target) / N.
LossValue L1Loss(const FeatureMatrix& pred, const FeatureMatrix& target);

// Mean |pred(i) - f(gt(i))| with f = log1p (default) or the identity.
LossValue DurationLoss(std::span<const double> pred, const DurationSeq& gt,
                       DurationDomain domain = DurationDomain::kLog1p);

// l1 + ldp + alpha * (lfwd + lkl).
double TotalObjective(double l1, double ldp, double lfwd, double lkl,
                      const ObjectiveWeights& weights = {});

}  // namespace aas

#endif  // AAS_LOSSES_HPP_
