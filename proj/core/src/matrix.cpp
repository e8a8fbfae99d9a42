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

#include "aas/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aas/error.hpp"

namespace aas {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix buffer holds " + std::to_string(data_.size()) + " values, expected " +
                    std::to_string(rows * cols));
  }
}

Matrix Matrix::FromRows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t n = rows.size();
  const std::size_t d = n == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(n * d);
  for (const auto& r : rows) {
    if (r.size() != d) throw Error(ErrorCode::kDimensionMismatch, "ragged row list");
    data.insert(data.end(), r.begin(), r.end());
  }
  return Matrix(n, d, std::move(data));
}

Matrix Matrix::FromBuffer(std::span<const double> data, std::size_t rows, std::size_t cols) {
  return Matrix(rows, cols, std::vector<double>(data.begin(), data.end()));
}

Matrix Matrix::FromBuffer(std::span<const float> data, std::size_t rows, std::size_t cols) {
  return Matrix(rows, cols, std::vector<double>(data.begin(), data.end()));
}

bool Matrix::AllFinite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

void RequireFeatures(const FeatureMatrix& m, const char* what) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw Error(ErrorCode::kEmptyInput, std::string(what) + " has no frames or no features");
  }
  if (!m.AllFinite()) {
    throw Error(ErrorCode::kNonFiniteInput, std::string(what) + " contains NaN or Inf");
  }
}

}  // namespace aas
