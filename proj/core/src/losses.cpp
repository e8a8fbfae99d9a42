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

#include "aas/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "aas/error.hpp"

namespace aas {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double LogAdd(double a, double b) noexcept {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::abs(a - b)));
}

inline double Sign(double v) noexcept { return static_cast<double>((v > 0.0) - (v < 0.0)); }

void CheckLatticeInput(const Matrix& log_probs) {
  if (log_probs.empty()) throw Error(ErrorCode::kEmptyInput, "empty log-probability matrix");
  if (log_probs.cols() < log_probs.rows()) {
    throw Error(ErrorCode::kNoFeasiblePath,
                "target length " + std::to_string(log_probs.cols()) +
                    " is shorter than source length " + std::to_string(log_probs.rows()));
  }
  for (double v : log_probs.data()) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      throw Error(ErrorCode::kNonFiniteInput, "log-probabilities contain NaN or +inf");
    }
  }
}

// Forward variables for row i given row i-1 (or nothing for i == 0).
// Only the feasible band [i, i + slack] is written.
void ForwardRow(std::span<const double> lp, std::span<const double> prev, std::span<double> cur,
                std::size_t i, std::size_t slack) {
  if (i == 0) {
    cur[0] = lp[0];
    for (std::size_t j = 1; j <= slack; ++j) cur[j] = cur[j - 1] + lp[j];
    return;
  }
  cur[i] = prev[i - 1] + lp[i];
  for (std::size_t j = i + 1; j <= i + slack; ++j) {
    cur[j] = LogAdd(prev[j - 1], cur[j - 1]) + lp[j];
  }
}

}  // namespace

LossValue ForwardSumLoss(const Matrix& log_probs, bool with_gradient) {
  CheckLatticeInput(log_probs);
  const std::size_t t_src = log_probs.rows();
  const std::size_t t_trg = log_probs.cols();
  const std::size_t slack = t_trg - t_src;

  LossValue out;
  if (!with_gradient) {
    std::vector<double> prev(t_trg, kNegInf);
    std::vector<double> cur(t_trg, kNegInf);
    for (std::size_t i = 0; i < t_src; ++i) {
      ForwardRow(log_probs.row(i), prev, cur, i, slack);
      std::swap(prev, cur);
    }
    const double log_z = prev[t_trg - 1];
    if (!std::isfinite(log_z)) {
      throw Error(ErrorCode::kNonFiniteInput, "no monotone path has non-zero probability");
    }
    out.value = -log_z;
    return out;
  }

  Matrix alpha(t_src, t_trg, kNegInf);
  for (std::size_t i = 0; i < t_src; ++i) {
    ForwardRow(log_probs.row(i), i == 0 ? std::span<const double>{} : alpha.row(i - 1),
               alpha.row(i), i, slack);
  }
  const double log_z = alpha(t_src - 1, t_trg - 1);
  if (!std::isfinite(log_z)) {
    throw Error(ErrorCode::kNonFiniteInput, "no monotone path has non-zero probability");
  }

  // beta(i, j): log mass of all completions leaving (i, j), excluding the
  // score of (i, j) itself.
  Matrix beta(t_src, t_trg, kNegInf);
  {
    const std::size_t last = t_src - 1;
    const auto lp = log_probs.row(last);
    auto b = beta.row(last);
    b[t_trg - 1] = 0.0;
    for (std::size_t j = t_trg - 1; j > last; --j) b[j - 1] = b[j] + lp[j];
  }
  for (std::size_t i = t_src - 1; i-- > 0;) {
    const auto lp_next = log_probs.row(i + 1);
    const auto lp = log_probs.row(i);
    const auto b_next = beta.row(i + 1);
    auto b = beta.row(i);
    const std::size_t hi = i + slack;
    b[hi] = b_next[hi + 1] + lp_next[hi + 1];
    for (std::size_t j = hi; j-- > i;) {
      b[j] = LogAdd(b_next[j + 1] + lp_next[j + 1], b[j + 1] + lp[j + 1]);
    }
  }

  Matrix grad(t_src, t_trg, 0.0);
  for (std::size_t i = 0; i < t_src; ++i) {
    const auto a = alpha.row(i);
    const auto b = beta.row(i);
    auto g = grad.row(i);
    for (std::size_t j = i; j <= i + slack; ++j) g[j] = -std::exp(a[j] + b[j] - log_z);
  }

  out.value = -log_z;
  out.gradient = std::move(grad);
  return out;
}

LossValue KlHardSoftLoss(const LogAlignment& log_soft, const PathMatrix& hard) {
  if (log_soft.t_src() != hard.t_src() || log_soft.t_trg() != hard.t_trg()) {
    throw Error(ErrorCode::kDimensionMismatch, "soft alignment and hard path shapes differ");
  }
  hard.Validate();

  const std::size_t t_trg = hard.t_trg();
  const double scale = 1.0 / static_cast<double>(t_trg);
  double sum = 0.0;
  Matrix grad(log_soft.t_src(), t_trg, 0.0);
  for (std::size_t j = 0; j < t_trg; ++j) {
    const double v = log_soft.values(hard[j], j);
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFiniteInput, "soft alignment is not finite on the path");
    }
    sum += v;
    grad(hard[j], j) = -scale;
  }
  return {-sum * scale, std::move(grad)};
}

LossValue L1Loss(const FeatureMatrix& pred, const FeatureMatrix& target) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "prediction and target shapes differ");
  }
  RequireFeatures(pred, "prediction");
  RequireFeatures(target, "target");

  const auto p = pred.data();
  const auto t = target.data();
  const double inv_n = 1.0 / static_cast<double>(p.size());
  Matrix grad(pred.rows(), pred.cols());
  auto g = grad.data();
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double diff = p[k] - t[k];
    sum += std::abs(diff);
    g[k] = Sign(diff) * inv_n;
  }
  return {sum * inv_n, std::move(grad)};
}

LossValue DurationLoss(std::span<const double> pred, const DurationSeq& gt,
                       DurationDomain domain) {
  if (pred.size() != gt.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "predicted durations have length " + std::to_string(pred.size()) +
                    ", ground truth has " + std::to_string(gt.size()));
  }
  if (pred.empty()) throw Error(ErrorCode::kEmptyInput, "empty duration sequence");

  const double inv_n = 1.0 / static_cast<double>(pred.size());
  Matrix grad(pred.size(), 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (gt.values[i] < 0) throw Error(ErrorCode::kNegativeDuration, "negative duration");
    if (!std::isfinite(pred[i])) {
      throw Error(ErrorCode::kNonFiniteInput, "predicted duration is not finite");
    }
    const auto d = static_cast<double>(gt.values[i]);
    const double target = domain == DurationDomain::kLog1p ? std::log1p(d) : d;
    const double diff = pred[i] - target;
    sum += std::abs(diff);
    grad(i, 0) = Sign(diff) * inv_n;
  }
  return {sum * inv_n, std::move(grad)};
}

double TotalObjective(double l1, double ldp, double lfwd, double lkl,
                      const ObjectiveWeights& weights) {
  if (!std::isfinite(l1) || !std::isfinite(ldp) || !std::isfinite(lfwd) ||
      !std::isfinite(lkl) || !std::isfinite(weights.alpha)) {
    throw Error(ErrorCode::kNonFiniteInput, "objective terms must be finite");
  }
  if (weights.alpha < 0.0) throw Error(ErrorCode::kInvalidParameter, "alpha must be >= 0");
  return l1 + ldp + weights.alpha * (lfwd + lkl);
}

}  // namespace aas
