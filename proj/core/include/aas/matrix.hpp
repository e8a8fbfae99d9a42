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

#ifndef AAS_MATRIX_HPP_
#define AAS_MATRIX_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace aas {

// Dense row-major matrix of doubles. All kernels compute in double
// precision; other storage precisions are converted on entry.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  // Takes ownership of row-major `data`; size must equal rows * cols.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  // Nested-list construction, mostly for tests and small fixtures.
  static Matrix FromRows(std::initializer_list<std::initializer_list<double>> rows);

  // Copies a caller-owned contiguous row-major buffer.
  static Matrix FromBuffer(std::span<const double> data, std::size_t rows, std::size_t cols);
  static Matrix FromBuffer(std::span<const float> data, std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  // True when no element is NaN or +/-Inf.
  bool AllFinite() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// A T x d frame sequence: mel-spectrogram frames, alignment-encoder
// outputs or synthetic features.
using FeatureMatrix = Matrix;

// Throws kEmptyInput / kNonFiniteInput unless `m` is a valid feature
// sequence (at least one row and one column, all finite).
void RequireFeatures(const FeatureMatrix& m, const char* what);

}  // namespace aas

#endif  // AAS_MATRIX_HPP_
