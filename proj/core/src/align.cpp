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

#include "aas/align.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

#include "aas/error.hpp"
#include "aas/losses.hpp"

namespace aas {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void FillDistanceRows(const FeatureMatrix& src, const FeatureMatrix& trg, Matrix& out,
                      std::size_t row_begin, std::size_t row_end) {
  const std::size_t dim = src.cols();
  for (std::size_t i = row_begin; i < row_end; ++i) {
    const auto a = src.row(i);
    auto out_row = out.row(i);
    for (std::size_t j = 0; j < trg.rows(); ++j) {
      const auto b = trg.row(j);
      double acc = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        const double diff = a[d] - b[d];
        acc += diff * diff;
      }
      out_row[j] = std::sqrt(acc);
    }
  }
}

double LogBeta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

}  // namespace

std::int64_t DurationSeq::Total() const noexcept {
  return std::accumulate(values.begin(), values.end(), std::int64_t{0});
}

void PathMatrix::Validate() const {
  if (source_index_.empty() || t_src_ == 0) {
    throw Error(ErrorCode::kInvalidPath, "empty path");
  }
  if (source_index_.front() != 0) {
    throw Error(ErrorCode::kInvalidPath, "path does not start at source index 0");
  }
  if (source_index_.back() != t_src_ - 1) {
    throw Error(ErrorCode::kInvalidPath, "path does not end at the last source index");
  }
  for (std::size_t j = 1; j < source_index_.size(); ++j) {
    const std::size_t prev = source_index_[j - 1];
    const std::size_t cur = source_index_[j];
    if (cur != prev && cur != prev + 1) {
      throw Error(ErrorCode::kInvalidPath,
                  "non-monotone step at target frame " + std::to_string(j));
    }
  }
}

Matrix PathMatrix::ToDense() const {
  Matrix dense(t_src_, source_index_.size(), 0.0);
  for (std::size_t j = 0; j < source_index_.size(); ++j) dense(source_index_[j], j) = 1.0;
  return dense;
}

DistanceMatrix ComputeDistanceMatrix(const FeatureMatrix& src, const FeatureMatrix& trg,
                                     unsigned threads) {
  RequireFeatures(src, "source features");
  RequireFeatures(trg, "target features");
  if (src.cols() != trg.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "feature dimensions differ: " + std::to_string(src.cols()) + " vs " +
                    std::to_string(trg.cols()));
  }

  Matrix out(src.rows(), trg.rows());
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, src.rows());
  if (workers == 1) {
    FillDistanceRows(src, trg, out, 0, src.rows());
    return {std::move(out)};
  }

  // Each cell is computed by exactly the same instruction sequence as in the
  // serial path, so the partitioning cannot change any bit of the output.
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (src.rows() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(src.rows(), begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] { FillDistanceRows(src, trg, out, begin, end); });
  }
  pool.clear();
  return {std::move(out)};
}

PriorMatrix BetaBinomialPrior(std::size_t t_src, std::size_t t_trg, double omega) {
  if (t_src == 0 || t_trg == 0) {
    throw Error(ErrorCode::kInvalidParameter, "prior sizes must be positive");
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw Error(ErrorCode::kInvalidParameter, "prior omega must be a positive finite number");
  }

  const auto n = static_cast<double>(t_src - 1);
  std::vector<double> log_choose(t_src);
  for (std::size_t k = 0; k < t_src; ++k) {
    const auto kd = static_cast<double>(k);
    log_choose[k] = std::lgamma(n + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(n - kd + 1.0);
  }

  Matrix values(t_src, t_trg);
  for (std::size_t j = 0; j < t_trg; ++j) {
    const double a = omega * static_cast<double>(j + 1);
    const double b = omega * static_cast<double>(t_trg - j);
    const double log_norm = LogBeta(a, b);
    for (std::size_t k = 0; k < t_src; ++k) {
      const auto kd = static_cast<double>(k);
      values(k, j) = std::exp(log_choose[k] + LogBeta(kd + a, n - kd + b) - log_norm);
    }
  }
  return {std::move(values)};
}

LogAlignment LogSoftAlignment(const DistanceMatrix& dist, const PriorMatrix* prior) {
  const Matrix& d = dist.values;
  if (d.empty()) throw Error(ErrorCode::kEmptyInput, "empty distance matrix");
  if (!d.AllFinite()) throw Error(ErrorCode::kNonFiniteInput, "distance matrix is not finite");
  if (prior != nullptr &&
      (prior->t_src() != dist.t_src() || prior->t_trg() != dist.t_trg())) {
    throw Error(ErrorCode::kDimensionMismatch, "prior shape differs from distance matrix");
  }

  const std::size_t rows = d.rows();
  const std::size_t cols = d.cols();

  // Column-wise log-softmax of -d, accumulated row by row to stay
  // contiguous in memory.
  std::vector<double> col_min(d.row(0).begin(), d.row(0).end());
  for (std::size_t i = 1; i < rows; ++i) {
    const auto r = d.row(i);
    for (std::size_t j = 0; j < cols; ++j) col_min[j] = std::min(col_min[j], r[j]);
  }
  std::vector<double> col_sum(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto r = d.row(i);
    for (std::size_t j = 0; j < cols; ++j) col_sum[j] += std::exp(col_min[j] - r[j]);
  }
  std::vector<double> log_norm(cols);
  for (std::size_t j = 0; j < cols; ++j) log_norm[j] = -col_min[j] + std::log(col_sum[j]);

  LogAlignment out{Matrix(rows, cols), prior != nullptr};
  for (std::size_t i = 0; i < rows; ++i) {
    const auto r = d.row(i);
    auto o = out.values.row(i);
    for (std::size_t j = 0; j < cols; ++j) o[j] = -r[j] - log_norm[j];
    if (prior != nullptr) {
      const auto p = prior->values.row(i);
      for (std::size_t j = 0; j < cols; ++j) o[j] += std::log(std::max(p[j], kPriorFloor));
    }
  }
  return out;
}

MasResult MonotonicAlignmentSearch(const Matrix& scores) {
  const std::size_t t_src = scores.rows();
  const std::size_t t_trg = scores.cols();
  if (t_src == 0 || t_trg == 0) throw Error(ErrorCode::kEmptyInput, "empty score matrix");
  if (t_trg < t_src) {
    throw Error(ErrorCode::kNoFeasiblePath,
                "target length " + std::to_string(t_trg) + " is shorter than source length " +
                    std::to_string(t_src));
  }
  for (double v : scores.data()) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      throw Error(ErrorCode::kNonFiniteInput, "score matrix contains NaN or +inf");
    }
  }

  // Row i is feasible for j in [i, i + slack].
  const std::size_t slack = t_trg - t_src;
  Matrix q(t_src, t_trg, kNegInf);

  {
    const auto s = scores.row(0);
    auto qr = q.row(0);
    qr[0] = s[0];
    for (std::size_t j = 1; j <= slack; ++j) qr[j] = qr[j - 1] + s[j];
  }
  for (std::size_t i = 1; i < t_src; ++i) {
    const auto s = scores.row(i);
    const auto prev = q.row(i - 1);
    auto qr = q.row(i);
    qr[i] = prev[i - 1] + s[i];
    for (std::size_t j = i + 1; j <= i + slack; ++j) {
      qr[j] = std::max(prev[j - 1], qr[j - 1]) + s[j];
    }
  }

  std::vector<std::size_t> index(t_trg);
  std::size_t i = t_src - 1;
  for (std::size_t j = t_trg - 1; j > 0; --j) {
    index[j] = i;
    if (i > 0 && q(i - 1, j - 1) >= q(i, j - 1)) --i;
  }
  index[0] = i;

  MasResult result;
  result.score = q(t_src - 1, t_trg - 1);
  result.path = PathMatrix(t_src, std::move(index));
  result.table = {std::move(q)};
  return result;
}

DurationSeq PathToDurations(const PathMatrix& path) {
  path.Validate();
  DurationSeq out{std::vector<std::int64_t>(path.t_src(), 0)};
  for (std::size_t idx : path.source_index()) ++out.values[idx];
  return out;
}

AlignmentResult AlignSequences(const FeatureMatrix& src, const FeatureMatrix& trg,
                               const AASConfig& config) {
  RequireFeatures(src, "source features");
  RequireFeatures(trg, "target features");
  if (src.cols() != trg.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "feature dimensions differ: " + std::to_string(src.cols()) + " vs " +
                    std::to_string(trg.cols()));
  }
  if (trg.rows() < src.rows()) {
    throw Error(ErrorCode::kNoFeasiblePath,
                "target has " + std::to_string(trg.rows()) + " frames, source has " +
                    std::to_string(src.rows()));
  }

  const DistanceMatrix dist = ComputeDistanceMatrix(src, trg);
  std::optional<PriorMatrix> prior;
  if (config.use_prior) prior = BetaBinomialPrior(src.rows(), trg.rows(), config.omega);
  LogAlignment log_alignment = LogSoftAlignment(dist, prior ? &*prior : nullptr);

  MasResult mas;
  if (config.viterbi_on_linear) {
    Matrix linear = log_alignment.values;
    for (double& v : linear.data()) v = std::exp(v);
    mas = MonotonicAlignmentSearch(linear);
  } else {
    mas = MonotonicAlignmentSearch(log_alignment);
  }

  AlignmentResult result;
  result.durations = PathToDurations(mas.path);
  result.diagnostics.forward_sum = ForwardSumLoss(log_alignment, false).value;
  result.diagnostics.kl = KlHardSoftLoss(log_alignment, mas.path).value;
  result.diagnostics.viterbi_score = mas.score;
  result.diagnostics.path = std::move(mas.path);
  result.diagnostics.log_alignment = std::move(log_alignment);
  return result;
}

}  // namespace aas
