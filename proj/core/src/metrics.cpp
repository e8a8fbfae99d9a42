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

#include "aas/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "aas/align.hpp"
#include "aas/error.hpp"

namespace aas {
namespace {

enum Step : std::uint8_t { kDiag, kDown, kRight, kStart };

// Welford accumulator for the population variance.
class VarianceAccumulator {
 public:
  void Add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }
  std::size_t count() const { return n_; }
  double Variance() const { return m2_ / static_cast<double>(n_); }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

double Pearson(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 2) {
    throw Error(ErrorCode::kInsufficientVoicedFrames,
                "need at least 2 frames voiced in both contours, got " +
                    std::to_string(pairs.size()));
  }
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pairs) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pairs.size());
  my /= static_cast<double>(pairs.size());
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (const auto& [x, y] : pairs) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kZeroVariance, "F0 contour is constant over voiced frames");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

void CheckContour(std::span<const double> f0) {
  for (double v : f0) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteInput, "F0 contour is not finite");
    if (v < 0.0) throw Error(ErrorCode::kInvalidParameter, "F0 contour has negative values");
  }
}

Matrix DropFirstColumn(const FeatureMatrix& m) {
  Matrix out(m.rows(), m.cols() - 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    std::copy(r.begin() + 1, r.end(), out.row(i).begin());
  }
  return out;
}

}  // namespace

WarpPath Dtw(const Matrix& cost) {
  const std::size_t n = cost.rows();
  const std::size_t m = cost.cols();
  if (n == 0 || m == 0) throw Error(ErrorCode::kEmptyInput, "empty cost matrix");
  for (double v : cost.data()) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteInput, "DTW cost is not finite");
    if (v < 0.0) throw Error(ErrorCode::kInvalidParameter, "DTW cost must be non-negative");
  }

  Matrix acc(n, m);
  std::vector<std::uint8_t> step(n * m, kStart);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double best = 0.0;
      Step from = kStart;
      if (i > 0 && j > 0) {
        best = acc(i - 1, j - 1);
        from = kDiag;
      }
      if (i > 0 && (from == kStart || acc(i - 1, j) < best)) {
        best = acc(i - 1, j);
        from = kDown;
      }
      if (j > 0 && (from == kStart || acc(i, j - 1) < best)) {
        best = acc(i, j - 1);
        from = kRight;
      }
      acc(i, j) = best + cost(i, j);
      step[i * m + j] = from;
    }
  }

  WarpPath path;
  path.total_cost = acc(n - 1, m - 1);
  std::size_t i = n - 1, j = m - 1;
  while (true) {
    path.nodes.emplace_back(i, j);
    const auto s = static_cast<Step>(step[i * m + j]);
    if (s == kStart) break;
    if (s != kRight) --i;
    if (s != kDown) --j;
  }
  std::reverse(path.nodes.begin(), path.nodes.end());
  return path;
}

double MelCepstralDistortion(const FeatureMatrix& mcc_x, const FeatureMatrix& mcc_y,
                             bool exclude_c0, WarpPath* path_out) {
  if (mcc_x.rows() == 0 || mcc_y.rows() == 0) {
    throw Error(ErrorCode::kEmptyInput, "mel-cepstral sequence has no frames");
  }
  if (mcc_x.cols() != mcc_y.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mel-cepstral orders differ: " + std::to_string(mcc_x.cols()) + " vs " +
                    std::to_string(mcc_y.cols()));
  }
  if (mcc_x.cols() == 0 || (exclude_c0 && mcc_x.cols() == 1)) {
    throw Error(ErrorCode::kEmptyInput, "no mel-cepstral coefficients left to compare");
  }

  const DistanceMatrix dist =
      exclude_c0 ? ComputeDistanceMatrix(DropFirstColumn(mcc_x), DropFirstColumn(mcc_y))
                 : ComputeDistanceMatrix(mcc_x, mcc_y);
  WarpPath path = Dtw(dist.values);

  const double scale = 10.0 / std::numbers::ln10 * std::numbers::sqrt2;
  double sum = 0.0;
  for (const auto& [i, j] : path.nodes) sum += scale * dist.values(i, j);
  const double mcd = sum / static_cast<double>(path.nodes.size());
  if (path_out != nullptr) *path_out = std::move(path);
  return mcd;
}

double F0Correlation(std::span<const double> f0_x, std::span<const double> f0_y) {
  if (f0_x.size() != f0_y.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "F0 contours differ in length: " + std::to_string(f0_x.size()) + " vs " +
                    std::to_string(f0_y.size()));
  }
  CheckContour(f0_x);
  CheckContour(f0_y);
  std::vector<std::pair<double, double>> voiced;
  for (std::size_t t = 0; t < f0_x.size(); ++t) {
    if (f0_x[t] > 0.0 && f0_y[t] > 0.0) voiced.emplace_back(f0_x[t], f0_y[t]);
  }
  return Pearson(voiced);
}

double F0Correlation(std::span<const double> f0_x, std::span<const double> f0_y,
                     const WarpPath& pairing) {
  CheckContour(f0_x);
  CheckContour(f0_y);
  std::vector<std::pair<double, double>> voiced;
  for (const auto& [i, j] : pairing.nodes) {
    if (i >= f0_x.size() || j >= f0_y.size()) {
      throw Error(ErrorCode::kLengthMismatch, "warp path runs past the F0 contour");
    }
    if (f0_x[i] > 0.0 && f0_y[j] > 0.0) voiced.emplace_back(f0_x[i], f0_y[j]);
  }
  return Pearson(voiced);
}

double DurationDifference(std::size_t frames_x, std::size_t frames_y, double frame_shift_s) {
  if (frames_x == 0 || frames_y == 0) {
    throw Error(ErrorCode::kInvalidParameter, "frame counts must be positive");
  }
  if (!(frame_shift_s > 0.0) || !std::isfinite(frame_shift_s)) {
    throw Error(ErrorCode::kInvalidParameter, "frame shift must be positive");
  }
  const std::size_t diff = frames_x > frames_y ? frames_x - frames_y : frames_y - frames_x;
  return static_cast<double>(diff) * frame_shift_s;
}

double DurationVariance(std::span<const double> predicted) {
  if (predicted.empty()) throw Error(ErrorCode::kEmptyInput, "no duration predictions");
  VarianceAccumulator acc;
  for (double v : predicted) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteInput, "duration is not finite");
    acc.Add(v);
  }
  return acc.Variance();
}

double DurationVariance(std::span<const std::vector<double>> predicted) {
  VarianceAccumulator acc;
  for (const auto& seq : predicted) {
    for (double v : seq) {
      if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteInput, "duration is not finite");
      acc.Add(v);
    }
  }
  if (acc.count() == 0) throw Error(ErrorCode::kEmptyInput, "no duration predictions");
  return acc.Variance();
}

}  // namespace aas
