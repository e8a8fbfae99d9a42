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

#ifndef AAS_ALIGN_HPP_
#define AAS_ALIGN_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aas/config.hpp"
#include "aas/matrix.hpp"

namespace aas {

// T_src x T_trg Euclidean distances between source and target frames.
struct DistanceMatrix {
  Matrix values;

  std::size_t t_src() const noexcept { return values.rows(); }
  std::size_t t_trg() const noexcept { return values.cols(); }
};

// Column j holds a beta-binomial pmf over source indices.
struct PriorMatrix {
  Matrix values;

  std::size_t t_src() const noexcept { return values.rows(); }
  std::size_t t_trg() const noexcept { return values.cols(); }
};

// Column-wise log soft alignment. Without a prior every column is a
// log-probability distribution over source indices; with a prior the
// log-prior has been added on top (unnormalized).
struct LogAlignment {
  Matrix values;
  bool prior_applied = false;

  std::size_t t_src() const noexcept { return values.rows(); }
  std::size_t t_trg() const noexcept { return values.cols(); }
};

// Cumulative best-path scores. Cells outside the feasible band hold -inf.
struct ViterbiTable {
  Matrix scores;
};

// Monotone hard alignment stored as one source index per target frame.
class PathMatrix {
 public:
  PathMatrix() = default;
  // Does not validate; see Validate().
  PathMatrix(std::size_t t_src, std::vector<std::size_t> source_index)
      : t_src_(t_src), source_index_(std::move(source_index)) {}

  std::size_t t_src() const noexcept { return t_src_; }
  std::size_t t_trg() const noexcept { return source_index_.size(); }
  std::span<const std::size_t> source_index() const noexcept { return source_index_; }
  std::size_t operator[](std::size_t j) const noexcept { return source_index_[j]; }

  // Throws kInvalidPath unless a(0)=0, a(T-1)=T_src-1 and every step
  // is 0 or 1.
  void Validate() const;

  // Binary T_src x T_trg form.
  Matrix ToDense() const;

  friend bool operator==(const PathMatrix&, const PathMatrix&) = default;

 private:
  std::size_t t_src_ = 0;
  std::vector<std::size_t> source_index_;
};

// Per-source-frame durations in target frames.
struct DurationSeq {
  std::vector<std::int64_t> values;

  std::size_t size() const noexcept { return values.size(); }
  std::int64_t Total() const noexcept;

  friend bool operator==(const DurationSeq&, const DurationSeq&) = default;
};

// Probabilities below this are clamped before taking logs.
inline constexpr double kPriorFloor = 1e-12;

// threads > 1 partitions source rows across workers; output is bitwise
// identical to the serial path.
DistanceMatrix ComputeDistanceMatrix(const FeatureMatrix& src, const FeatureMatrix& trg,
                                     unsigned threads = 1);

// Column j is the beta-binomial pmf with n = t_src - 1,
// a = omega * (j + 1), b = omega * (t_trg - j).
PriorMatrix BetaBinomialPrior(std::size_t t_src, std::size_t t_trg, double omega);

LogAlignment LogSoftAlignment(const DistanceMatrix& dist,
                              const PriorMatrix* prior = nullptr);

struct MasResult {
  PathMatrix path;
  ViterbiTable table;
  double score = 0.0;  // Q(T_src-1, T_trg-1)
};

// Viterbi monotonic alignment search over stay-or-advance moves.
// Ties between the diagonal and the horizontal predecessor resolve to the
// diagonal. Throws kNoFeasiblePath when t_trg < t_src and kNonFiniteInput
// on NaN or +inf scores (-inf is allowed and means "forbidden").
MasResult MonotonicAlignmentSearch(const Matrix& scores);
inline MasResult MonotonicAlignmentSearch(const LogAlignment& scores) {
  return MonotonicAlignmentSearch(scores.values);
}

DurationSeq PathToDurations(const PathMatrix& path);

// Cell (i, j) can lie on some monotone path from (0,0) to (t_src-1, t_trg-1).
constexpr bool IsFeasibleCell(std::size_t i, std::size_t j, std::size_t t_src,
                              std::size_t t_trg) noexcept {
  return i <= j && (t_src - 1 - i) <= (t_trg - 1 - j);
}

struct AlignmentDiagnostics {
  LogAlignment log_alignment;
  PathMatrix path;
  double viterbi_score = 0.0;
  double forward_sum = 0.0;  // raw NLL
  double kl = 0.0;
};

struct AlignmentResult {
  DurationSeq durations;
  AlignmentDiagnostics diagnostics;
};

// distance -> log soft alignment (+ prior) -> MAS -> durations, plus both
// alignment losses on the same log alignment.
AlignmentResult AlignSequences(const FeatureMatrix& src, const FeatureMatrix& trg,
                               const AASConfig& config = {});

}  // namespace aas

#endif  // AAS_ALIGN_HPP_
