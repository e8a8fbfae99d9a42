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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "aas/error.hpp"
#include "aas/testing/oracles.hpp"

namespace aas {
namespace {

using testing::BruteForceBestPath;
using testing::RandomLogAlignment;
using testing::RandomMatrix;

template <typename Fn>
ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected aas::Error";
  return ErrorCode::kIoFailure;
}

// log(sigmoid(1)): the larger entry of a two-way softmax over logits {0, -1}.
const double kLogSigmoidOne = -std::log1p(std::exp(-1.0));

TEST(DistanceMatrixTest, IdenticalFramesAreZero) {
  const auto d = ComputeDistanceMatrix(Matrix::FromRows({{1, 0}}), Matrix::FromRows({{1, 0}}));
  ASSERT_EQ(d.t_src(), 1u);
  ASSERT_EQ(d.t_trg(), 1u);
  EXPECT_EQ(d.values(0, 0), 0.0);
}

TEST(DistanceMatrixTest, PythagoreanTriple) {
  const auto d = ComputeDistanceMatrix(Matrix::FromRows({{0, 0}}), Matrix::FromRows({{3, 4}}));
  EXPECT_EQ(d.values(0, 0), 5.0);
}

TEST(DistanceMatrixTest, MatchesPerPairOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix src = RandomMatrix(rng, 3, 2, -5, 5);
    const Matrix trg = RandomMatrix(rng, 4, 2, -5, 5);
    const auto d = ComputeDistanceMatrix(src, trg);
    const Matrix oracle = testing::NaiveDistances(src, trg);
    for (std::size_t k = 0; k < oracle.size(); ++k) {
      EXPECT_NEAR(d.values.data()[k], oracle.data()[k], 1e-12);
    }
  }
}

TEST(DistanceMatrixTest, ParallelIsBitwiseIdentical) {
  std::mt19937_64 rng(5);
  const Matrix src = RandomMatrix(rng, 37, 13);
  const Matrix trg = RandomMatrix(rng, 91, 13);
  const auto serial = ComputeDistanceMatrix(src, trg, 1);
  for (unsigned threads : {2u, 3u, 8u, 64u}) {
    EXPECT_EQ(ComputeDistanceMatrix(src, trg, threads).values, serial.values) << threads;
  }
}

TEST(DistanceMatrixTest, Errors) {
  EXPECT_EQ(CodeOf([] {
              ComputeDistanceMatrix(Matrix::FromRows({{1, 2}}), Matrix::FromRows({{1, 2, 3}}));
            }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(CodeOf([] {
              ComputeDistanceMatrix(Matrix::FromRows({{std::nan(""), 2}}),
                                    Matrix::FromRows({{1, 2}}));
            }),
            ErrorCode::kNonFiniteInput);
  EXPECT_EQ(CodeOf([] {
              ComputeDistanceMatrix(Matrix::FromRows({{1, 2}}),
                                    Matrix::FromRows({{std::numeric_limits<double>::infinity(), 2}}));
            }),
            ErrorCode::kNonFiniteInput);
}

TEST(BetaBinomialPriorTest, SingleSourceFrameIsCertain) {
  for (std::size_t t_trg : {1u, 2u, 17u}) {
    const auto p = BetaBinomialPrior(1, t_trg, 1.0);
    for (std::size_t j = 0; j < t_trg; ++j) EXPECT_EQ(p.values(0, j), 1.0);
  }
}

TEST(BetaBinomialPriorTest, TwoByTwoMatchesBetaFunctionOracle) {
  const auto p = BetaBinomialPrior(2, 2, 1.0);
  // Column j: n = 1, a = j + 1, b = 2 - j.
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t i = 0; i < 2; ++i) {
      const double oracle = testing::BetaBinomialPmfDirect(1, i, j + 1.0, 2.0 - j);
      EXPECT_NEAR(p.values(i, j), oracle, 1e-12);
    }
  }
  // Frozen from the oracle above.
  EXPECT_NEAR(p.values(0, 0), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(p.values(1, 0), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(p.values(0, 1), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(p.values(1, 1), 2.0 / 3.0, 1e-12);
}

TEST(BetaBinomialPriorTest, MatchesDirectPmfAcrossShapesAndOmegas) {
  for (double omega : {0.3, 1.0, 2.5}) {
    const std::size_t t_src = 7, t_trg = 19;
    const auto p = BetaBinomialPrior(t_src, t_trg, omega);
    for (std::size_t j = 0; j < t_trg; ++j) {
      for (std::size_t i = 0; i < t_src; ++i) {
        const double oracle = testing::BetaBinomialPmfDirect(
            t_src - 1, i, omega * static_cast<double>(j + 1), omega * static_cast<double>(t_trg - j));
        EXPECT_NEAR(p.values(i, j), oracle, 1e-12 + 1e-10 * oracle);
      }
    }
  }
}

TEST(BetaBinomialPriorTest, ColumnsSumToOneAndModeAdvances) {
  const auto p = BetaBinomialPrior(5, 20, 1.0);
  std::size_t prev_mode = 0;
  for (std::size_t j = 0; j < 20; ++j) {
    double sum = 0.0;
    std::size_t mode = 0;
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_GE(p.values(i, j), 0.0);
      EXPECT_LE(p.values(i, j), 1.0);
      sum += p.values(i, j);
      if (p.values(i, j) > p.values(mode, j)) mode = i;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
    EXPECT_GE(mode, prev_mode) << "column " << j;
    prev_mode = mode;
  }
}

TEST(BetaBinomialPriorTest, RejectsBadParameters) {
  EXPECT_EQ(CodeOf([] { BetaBinomialPrior(0, 3, 1.0); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([] { BetaBinomialPrior(3, 0, 1.0); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([] { BetaBinomialPrior(3, 3, 0.0); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([] { BetaBinomialPrior(3, 3, -1.0); }), ErrorCode::kInvalidParameter);
}

TEST(LogSoftAlignmentTest, SingleSourceFrameIsLogOne) {
  const auto la = LogSoftAlignment({Matrix::FromRows({{0.5, 3.0, 7.0}})});
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(la.values(0, j), 0.0);
  EXPECT_FALSE(la.prior_applied);
}

TEST(LogSoftAlignmentTest, EqualDistancesGiveUniformColumn) {
  const auto la = LogSoftAlignment({Matrix(4, 3, 2.5)});
  for (double v : la.values.data()) EXPECT_NEAR(v, std::log(0.25), 1e-15);
}

TEST(LogSoftAlignmentTest, TwoWaySoftmax) {
  const auto la = LogSoftAlignment({Matrix::FromRows({{0, 1}, {1, 0}})});
  EXPECT_NEAR(kLogSigmoidOne, -0.31326, 1e-5);
  EXPECT_NEAR(la.values(0, 0), kLogSigmoidOne, 1e-14);
  EXPECT_NEAR(la.values(1, 0), kLogSigmoidOne - 1.0, 1e-14);
  EXPECT_NEAR(la.values(0, 1), kLogSigmoidOne - 1.0, 1e-14);
  EXPECT_NEAR(la.values(1, 1), kLogSigmoidOne, 1e-14);
}

TEST(LogSoftAlignmentTest, ColumnsNormalizeWithoutPrior) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix dist = RandomMatrix(rng, 1 + trial % 9, 1 + trial % 13, 0.0, 40.0);
    const auto la = LogSoftAlignment({dist});
    for (std::size_t j = 0; j < dist.cols(); ++j) {
      double sum = 0.0;
      for (std::size_t i = 0; i < dist.rows(); ++i) sum += std::exp(la.values(i, j));
      EXPECT_NEAR(sum, 1.0, 1e-6);
    }
  }
}

TEST(LogSoftAlignmentTest, PriorIsAddedInLogDomainWithFloor) {
  const DistanceMatrix dist{Matrix::FromRows({{0, 1}, {1, 0}})};
  PriorMatrix prior{Matrix::FromRows({{0.25, 0.0}, {0.75, 1.0}})};
  const auto plain = LogSoftAlignment(dist);
  const auto la = LogSoftAlignment(dist, &prior);
  EXPECT_TRUE(la.prior_applied);
  EXPECT_NEAR(la.values(0, 0), plain.values(0, 0) + std::log(0.25), 1e-15);
  EXPECT_NEAR(la.values(1, 0), plain.values(1, 0) + std::log(0.75), 1e-15);
  EXPECT_NEAR(la.values(0, 1), plain.values(0, 1) + std::log(kPriorFloor), 1e-12);
  EXPECT_TRUE(la.values.AllFinite());
}

TEST(LogSoftAlignmentTest, PriorShapeMismatch) {
  const DistanceMatrix dist{Matrix(2, 3, 1.0)};
  const PriorMatrix prior = BetaBinomialPrior(2, 4, 1.0);
  EXPECT_EQ(CodeOf([&] { LogSoftAlignment(dist, &prior); }), ErrorCode::kDimensionMismatch);
}

TEST(MasTest, SingleCell) {
  const auto r = MonotonicAlignmentSearch(Matrix::FromRows({{-0.7}}));
  EXPECT_EQ(r.score, -0.7);
  EXPECT_EQ(r.table.scores(0, 0), -0.7);
  EXPECT_EQ(r.path.t_trg(), 1u);
  EXPECT_EQ(r.path[0], 0u);
}

TEST(MasTest, DominantDiagonalGivesIdentity) {
  const std::size_t n = 6;
  Matrix s(n, n, -10.0);
  for (std::size_t i = 0; i < n; ++i) s(i, i) = 0.0;
  const auto r = MonotonicAlignmentSearch(s);
  for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(r.path[j], j);
  EXPECT_EQ(PathToDurations(r.path).values, std::vector<std::int64_t>(n, 1));
}

TEST(MasTest, TableMarksInfeasibleCells) {
  std::mt19937_64 rng(2);
  const Matrix s = RandomLogAlignment(rng, 4, 7);
  const auto r = MonotonicAlignmentSearch(s);
  EXPECT_EQ(r.table.scores(0, 0), s(0, 0));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 7; ++j) {
      const double q = r.table.scores(i, j);
      if (IsFeasibleCell(i, j, 4, 7)) {
        EXPECT_TRUE(std::isfinite(q)) << i << "," << j;
      } else {
        EXPECT_EQ(q, -std::numeric_limits<double>::infinity()) << i << "," << j;
      }
    }
  }
}

TEST(MasTest, MatchesExhaustiveEnumeration4x6) {
  std::mt19937_64 rng(17);
  ASSERT_EQ(testing::EnumerateMonotonePaths(4, 6).size(), 10u);  // C(5,3)
  for (int trial = 0; trial < 1000; ++trial) {
    const Matrix s = RandomLogAlignment(rng, 4, 6);
    const auto r = MonotonicAlignmentSearch(s);
    const auto best = BruteForceBestPath(s);
    EXPECT_EQ(r.score, best.score);
    EXPECT_EQ(testing::PathScore(s, r.path.source_index()), best.score);
  }
}

TEST(MasTest, TieBreakPrefersDiagonal) {
  // All scores equal, so every predecessor comparison ties. Backtracking
  // takes the diagonal predecessor each time, so the advances land on the
  // last frames.
  const auto r = MonotonicAlignmentSearch(Matrix(3, 5, -1.0));
  const std::vector<std::size_t> expected = {0, 0, 0, 1, 2};
  EXPECT_EQ(std::vector<std::size_t>(r.path.source_index().begin(), r.path.source_index().end()),
            expected);
}

TEST(MasTest, ShiftInvariance) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t t_src = 1 + trial % 5;
    const std::size_t t_trg = t_src + trial % 4;
    const Matrix s = RandomLogAlignment(rng, t_src, t_trg);
    Matrix shifted = s;
    const double c = 0.75;
    for (double& v : shifted.data()) v += c;
    const auto a = MonotonicAlignmentSearch(s);
    const auto b = MonotonicAlignmentSearch(shifted);
    EXPECT_NEAR(b.score, a.score + c * static_cast<double>(t_trg), 1e-12);
    if (BruteForceBestPath(s).ties == 1) EXPECT_EQ(a.path, b.path);
  }
}

TEST(MasTest, NegativeInfinityForbidsCells) {
  Matrix s(2, 3, 0.0);
  s(1, 1) = -std::numeric_limits<double>::infinity();
  const auto r = MonotonicAlignmentSearch(s);
  const std::vector<std::size_t> expected = {0, 0, 1};
  EXPECT_EQ(std::vector<std::size_t>(r.path.source_index().begin(), r.path.source_index().end()),
            expected);
}

TEST(MasTest, Errors) {
  EXPECT_EQ(CodeOf([] { MonotonicAlignmentSearch(Matrix(3, 2, 0.0)); }),
            ErrorCode::kNoFeasiblePath);
  Matrix s(2, 2, 0.0);
  s(1, 0) = std::nan("");
  EXPECT_EQ(CodeOf([&] { MonotonicAlignmentSearch(s); }), ErrorCode::kNonFiniteInput);
}

TEST(PathToDurationsTest, Examples) {
  EXPECT_EQ(PathToDurations(PathMatrix(3, {0, 1, 2})).values, (std::vector<std::int64_t>{1, 1, 1}));
  EXPECT_EQ(PathToDurations(PathMatrix(1, {0, 0, 0, 0})).values, (std::vector<std::int64_t>{4}));
  EXPECT_EQ(PathToDurations(PathMatrix(2, {0, 0, 1})).values, (std::vector<std::int64_t>{2, 1}));
}

TEST(PathToDurationsTest, RejectsInvalidPaths) {
  EXPECT_EQ(CodeOf([] { PathToDurations(PathMatrix(2, {1, 1, 1})); }), ErrorCode::kInvalidPath);
  EXPECT_EQ(CodeOf([] { PathToDurations(PathMatrix(3, {0, 1, 1})); }), ErrorCode::kInvalidPath);
  EXPECT_EQ(CodeOf([] { PathToDurations(PathMatrix(3, {0, 2, 2})); }), ErrorCode::kInvalidPath);
  EXPECT_EQ(CodeOf([] { PathToDurations(PathMatrix(2, {0, 1, 0, 1})); }), ErrorCode::kInvalidPath);
  EXPECT_EQ(CodeOf([] { PathToDurations(PathMatrix(2, {})); }), ErrorCode::kInvalidPath);
}

TEST(PathPropertiesTest, ValidityAndConservationOnRandomInputs) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t t_src = 1 + rng() % 12;
    const std::size_t t_trg = t_src + rng() % 20;
    const auto r = MonotonicAlignmentSearch(RandomLogAlignment(rng, t_src, t_trg));
    ASSERT_NO_THROW(r.path.Validate());
    const auto d = PathToDurations(r.path);
    EXPECT_EQ(d.Total(), static_cast<std::int64_t>(t_trg));
    for (auto v : d.values) EXPECT_GE(v, 1);
  }
}

TEST(AlignSequencesTest, RecoversKnownDurations) {
  std::mt19937_64 rng(31);
  const Matrix src = RandomMatrix(rng, 3, 8);
  Matrix trg(6, 8);
  const std::size_t owner[] = {0, 0, 1, 2, 2, 2};
  for (std::size_t j = 0; j < 6; ++j) {
    for (std::size_t d = 0; d < 8; ++d) trg(j, d) = src(owner[j], d);
  }
  const auto r = AlignSequences(src, trg);
  EXPECT_EQ(r.durations.values, (std::vector<std::int64_t>{2, 1, 3}));
  EXPECT_TRUE(r.diagnostics.log_alignment.prior_applied);
  EXPECT_EQ(r.diagnostics.path.t_trg(), 6u);
  EXPECT_GT(r.diagnostics.forward_sum, 0.0);
  EXPECT_GE(r.diagnostics.kl, 0.0);
  EXPECT_LE(r.diagnostics.forward_sum, -r.diagnostics.viterbi_score + 1e-12);
}

TEST(AlignSequencesTest, IdenticalSequencesGiveOnes) {
  std::mt19937_64 rng(37);
  const Matrix x = RandomMatrix(rng, 9, 5);
  EXPECT_EQ(AlignSequences(x, x).durations.values, std::vector<std::int64_t>(9, 1));
}

TEST(AlignSequencesTest, LinearViterbiModeStillYieldsValidDurations) {
  std::mt19937_64 rng(41);
  const auto c = testing::MakeRecoveryCase(rng, 12, 8, 4, 0.0);
  AASConfig config;
  config.viterbi_on_linear = true;
  const auto r = AlignSequences(c.src, c.trg, config);
  EXPECT_EQ(r.durations.Total(), static_cast<std::int64_t>(c.trg.rows()));
  EXPECT_EQ(r.durations, c.durations);
}

TEST(AlignSequencesTest, SyntheticRecoveryRate) {
  const auto noisy = testing::RunRecoveryTrials(200, 30, 8, 0.01, 101, AASConfig{});
  EXPECT_GE(noisy.rate(), 0.99);
  const auto clean = testing::RunRecoveryTrials(200, 30, 8, 0.0, 103, AASConfig{});
  EXPECT_EQ(clean.rate(), 1.0);
}

TEST(AlignSequencesTest, Errors) {
  EXPECT_EQ(CodeOf([] { AlignSequences(Matrix(3, 2, 0.0), Matrix(2, 2, 0.0)); }),
            ErrorCode::kNoFeasiblePath);
  EXPECT_EQ(CodeOf([] { AlignSequences(Matrix(10, 80, 0.0), Matrix(25, 81, 0.0)); }),
            ErrorCode::kDimensionMismatch);
}

}  // namespace
}  // namespace aas
