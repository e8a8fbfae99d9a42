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

#include "aas/regulate.hpp"

#include <gtest/gtest.h>

#include <random>

#include "aas/error.hpp"
#include "aas/testing/oracles.hpp"

namespace aas {
namespace {

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

DurationSeq Durations(std::vector<std::int64_t> v) { return DurationSeq{std::move(v)}; }

TEST(ExpandTest, AllOnesIsIdentity) {
  std::mt19937_64 rng(11);
  const Matrix seq = testing::RandomMatrix(rng, 9, 4);
  EXPECT_EQ(Expand(seq, Durations(std::vector<std::int64_t>(9, 1))), seq);
}

TEST(ExpandTest, ZeroDurationsAreDropped) {
  const Matrix seq = Matrix::FromRows({{1, 10}, {2, 20}, {3, 30}});
  EXPECT_EQ(Expand(seq, Durations({1, 0, 2})), Matrix::FromRows({{1, 10}, {3, 30}, {3, 30}}));
  EXPECT_EQ(Expand(Matrix::FromRows({{7}}), Durations({3})), Matrix::FromRows({{7}, {7}, {7}}));
}

TEST(ExpandTest, RowCountIsDurationSumAndRunsRecoverSource) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::int64_t> dur(0, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t t = 1 + rng() % 12;
    const Matrix seq = testing::RandomMatrix(rng, t, 3);
    std::vector<std::int64_t> d(t);
    for (auto& x : d) x = dur(rng);
    d[rng() % t] += 1;  // never all zero
    const Matrix out = Expand(seq, Durations(d));
    ASSERT_EQ(static_cast<std::int64_t>(out.rows()), Durations(d).Total());

    // First frame of each run, in order, is the subsequence with positive duration.
    std::size_t row = 0;
    for (std::size_t i = 0; i < t; ++i) {
      if (d[i] == 0) continue;
      for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(out(row, c), seq(i, c));
      row += static_cast<std::size_t>(d[i]);
    }
  }
}

TEST(ExpandTest, Errors) {
  const Matrix seq(2, 1, 0.0);
  EXPECT_EQ(CodeOf([&] { Expand(seq, Durations({1})); }), ErrorCode::kLengthMismatch);
  EXPECT_EQ(CodeOf([&] { Expand(seq, Durations({1, -1})); }), ErrorCode::kNegativeDuration);
  EXPECT_EQ(CodeOf([&] { Expand(seq, Durations({0, 0})); }), ErrorCode::kEmptyOutput);
}

TEST(ReduceStackTest, KOneIsIdentity) {
  std::mt19937_64 rng(13);
  const Matrix seq = testing::RandomMatrix(rng, 7, 3);
  EXPECT_EQ(ReduceStack(seq, {1}), seq);
}

TEST(ReduceStackTest, DivisibleLength) {
  const Matrix seq = Matrix::FromRows({{1, 2}, {3, 4}, {5, 6}, {7, 8}});
  EXPECT_EQ(ReduceStack(seq, {2}), Matrix::FromRows({{1, 2, 3, 4}, {5, 6, 7, 8}}));
}

TEST(ReduceStackTest, PadRepeatsLastFrame) {
  const Matrix seq = Matrix::FromRows({{1, 2}, {3, 4}, {5, 6}, {7, 8}, {9, 10}});
  const Matrix out = ReduceStack(seq, {2, PadPolicy::kPadRepeatLast});
  ASSERT_EQ(out.rows(), 3u);
  ASSERT_EQ(out.cols(), 4u);
  EXPECT_EQ(std::vector<double>(out.row(2).begin(), out.row(2).end()),
            (std::vector<double>{9, 10, 9, 10}));
  EXPECT_EQ(ReduceStack(seq, {2, PadPolicy::kTruncate}),
            Matrix::FromRows({{1, 2, 3, 4}, {5, 6, 7, 8}}));
}

TEST(ReduceStackTest, ShapesForAllSmallLengths) {
  for (std::size_t t = 1; t <= 100; ++t) {
    const Matrix seq(t, 3, 1.0);
    for (std::size_t k = 1; k <= 8; ++k) {
      const Matrix pad = ReduceStack(seq, {k, PadPolicy::kPadRepeatLast});
      EXPECT_EQ(pad.rows(), (t + k - 1) / k);
      EXPECT_EQ(pad.cols(), 3 * k);
      if (t >= k) {
        const Matrix cut = ReduceStack(seq, {k, PadPolicy::kTruncate});
        EXPECT_EQ(cut.rows(), t / k);
        EXPECT_EQ(cut.cols(), 3 * k);
      }
    }
  }
}

TEST(ReduceStackTest, TruncateThenUnstackRecoversPrefix) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + rng() % 6;
    const std::size_t t = k + rng() % 30;
    const Matrix seq = testing::RandomMatrix(rng, t, 4);
    const Matrix back = Unstack(ReduceStack(seq, {k, PadPolicy::kTruncate}), k);
    ASSERT_EQ(back.rows(), (t / k) * k);
    ASSERT_EQ(back.cols(), 4u);
    for (std::size_t i = 0; i < back.rows(); ++i) {
      for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(back(i, c), seq(i, c));
    }
  }
}

TEST(ReduceStackTest, Errors) {
  EXPECT_EQ(CodeOf([] { ReduceStack(Matrix(3, 2, 0.0), {0}); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([] { ReduceStack(Matrix(3, 2, 0.0), {4, PadPolicy::kTruncate}); }),
            ErrorCode::kEmptyOutput);
  EXPECT_EQ(CodeOf([] { ReduceStack(Matrix(0, 2), {2}); }), ErrorCode::kEmptyInput);
}

TEST(RegulateNamesTest, Names) {
  EXPECT_EQ(PadPolicyName(PadPolicy::kPadRepeatLast), "pad_repeat_last");
  EXPECT_EQ(PadPolicyName(PadPolicy::kTruncate), "truncate");
  EXPECT_EQ(PlacementName(ReductionPlacement::kPreEncoder), "pre_encoder");
  EXPECT_EQ(PlacementName(ReductionPlacement::kPostEncoder), "post_encoder");
}

}  // namespace
}  // namespace aas
