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

#ifndef AAS_METRICS_HPP_
#define AAS_METRICS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "aas/matrix.hpp"

namespace aas {

// 256-sample hop at 16 kHz.
inline constexpr double kDefaultFrameShiftSeconds = 256.0 / 16000.0;

// Per-frame fundamental frequency in Hz; 0 marks an unvoiced frame.
using F0Contour = std::vector<double>;

struct WarpPath {
  std::vector<std::pair<std::size_t, std::size_t>> nodes;
  double total_cost = 0.0;
};

struct MetricReport {
  std::optional<double> mcd_db;
  std::optional<double> f0corr;
  std::optional<double> ddur_s;
  std::optional<double> dvar;
  double frame_shift_s = kDefaultFrameShiftSeconds;
};

// Minimum-cost warp from (0,0) to (N-1,M-1) with unit moves
// (1,1), (1,0), (0,1). Ties prefer (1,1), then (1,0).
WarpPath Dtw(const Matrix& cost);

// Mel-cepstral distortion in dB: mean over DTW path nodes of
// (10 / ln 10) * sqrt(2 * sum_d diff_d^2). Coefficient 0 is dropped when
// exclude_c0 is set. If `path_out` is given it receives the warp path.
double MelCepstralDistortion(const FeatureMatrix& mcc_x, const FeatureMatrix& mcc_y,
                             bool exclude_c0 = true, WarpPath* path_out = nullptr);

// Pearson correlation over frames voiced in both equal-length contours.
double F0Correlation(std::span<const double> f0_x, std::span<const double> f0_y);

// Same, pairing frames along a warp path instead of by index.
double F0Correlation(std::span<const double> f0_x, std::span<const double> f0_y,
                     const WarpPath& pairing);

// |frames_x - frames_y| * frame_shift_s.
double DurationDifference(std::size_t frames_x, std::size_t frames_y, double frame_shift_s);

// Population variance of predicted durations.
double DurationVariance(std::span<const double> predicted);
// Pooled over all vectors as one population.
double DurationVariance(std::span<const std::vector<double>> predicted);

}  // namespace aas

#endif  // AAS_METRICS_HPP_
