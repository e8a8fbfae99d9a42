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

#ifndef AAS_IO_HPP_
#define AAS_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "aas/align.hpp"
#include "aas/matrix.hpp"

namespace aas::io {

enum class Dtype { kF32, kF64, kI64 };

std::string_view DtypeDescr(Dtype dtype) noexcept;  // "<f4", "<f8", "<i8"

// A 1-D or 2-D array as loaded from disk. Real dtypes land in `real`
// (f32 promoted to f64); i64 lands in `integer`.
struct NpyArray {
  Dtype dtype = Dtype::kF64;
  std::vector<std::size_t> shape;
  std::vector<double> real;
  std::vector<std::int64_t> integer;

  std::size_t rank() const noexcept { return shape.size(); }
  std::size_t element_count() const noexcept;

  // 2-D arrays map directly; 1-D arrays become N x 1. Integers convert.
  Matrix ToMatrix() const;
  // Flattened values as doubles.
  std::vector<double> ToReal() const;
  // Requires a 1-D array of integers (or integral reals).
  DurationSeq ToDurations() const;
};

// Parses an in-memory NPY v1.0 image. Any inconsistency is an error; no
// partial array is ever returned.
NpyArray ParseNpy(std::span<const std::byte> bytes);
NpyArray ReadNpy(const std::filesystem::path& path);

// Serializes to NPY v1.0 (C order, little endian, header padded to 64 bytes).
std::vector<std::byte> EncodeNpy(std::span<const double> values,
                                 std::span<const std::size_t> shape, Dtype dtype);
std::vector<std::byte> EncodeNpy(std::span<const std::int64_t> values,
                                 std::span<const std::size_t> shape);

void WriteMatrix(const std::filesystem::path& path, const Matrix& m, Dtype dtype = Dtype::kF64);
void WriteVector(const std::filesystem::path& path, std::span<const double> v,
                 Dtype dtype = Dtype::kF64);
void WriteDurations(const std::filesystem::path& path, const DurationSeq& durations);

enum class HeatmapNormalization {
  kMinMax,
  // Input holds log values: clamp to [max - kHeatmapLogRange, max], then min-max.
  kLog,
};

inline constexpr double kHeatmapLogRange = 30.0;

// Binary PGM (P5), one pixel per cell; row = source index, column = target frame.
std::vector<std::byte> EncodeHeatmap(const Matrix& m, HeatmapNormalization normalization);
void WriteHeatmap(const std::filesystem::path& path, const Matrix& m,
                  HeatmapNormalization normalization = HeatmapNormalization::kMinMax);

}  // namespace aas::io

#endif  // AAS_IO_HPP_
