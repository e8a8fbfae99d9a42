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

#include <algorithm>
#include <cmath>
#include <random>

#include "aas/align.hpp"
#include "aas/losses.hpp"
#include "aas/testing/oracles.hpp"
#include "commands.hpp"

namespace aas::cli {
namespace {

constexpr double kMinRecoveryRate = 0.99;
constexpr double kMaxViterbiDeviation = 1e-12;
constexpr double kMaxForwardSumRelDeviation = 1e-9;
constexpr double kMaxGradientRelError = 1e-5;
constexpr double kMaxOccupancyError = 1e-9;
constexpr double kMaxPriorColumnError = 1e-9;
constexpr double kFiniteDifferenceStep = 1e-6;

constexpr std::size_t kViterbiInstances = 1000;
constexpr std::size_t kForwardSumInstances = 500;
constexpr std::size_t kGradientInstances = 100;
constexpr std::size_t kPriorMaxLength = 64;

std::pair<std::size_t, std::size_t> RandomShape(std::mt19937_64& rng, std::size_t max_src,
                                                std::size_t max_trg) {
  const std::size_t t_src = std::uniform_int_distribution<std::size_t>(1, max_src)(rng);
  const std::size_t t_trg = std::uniform_int_distribution<std::size_t>(t_src, max_trg)(rng);
  return {t_src, t_trg};
}

}  // namespace

CommandResult RunSelftest(const SelftestOptions& opts, const AASConfig& config) {
  std::mt19937_64 rng(opts.seed);
  // Sub-seeds keep each suite independent of the others' draw counts.
  const std::uint64_t recovery_seed = rng();
  const std::uint64_t noiseless_seed = rng();

  const auto recovery = testing::RunRecoveryTrials(opts.trials, opts.max_t_src, opts.dim,
                                                   opts.sigma, recovery_seed, config);
  const auto noiseless = testing::RunRecoveryTrials(opts.trials, opts.max_t_src, opts.dim, 0.0,
                                                    noiseless_seed, config);

  double viterbi_dev = 0.0;
  bool paths_valid = true;
  for (std::size_t n = 0; n < kViterbiInstances; ++n) {
    const auto [t_src, t_trg] = RandomShape(rng, 6, 9);
    const Matrix scores = testing::RandomLogAlignment(rng, t_src, t_trg);
    const MasResult mas = MonotonicAlignmentSearch(scores);
    const auto best = testing::BruteForceBestPath(scores);
    viterbi_dev = std::max(viterbi_dev, std::abs(mas.score - best.score));
    viterbi_dev =
        std::max(viterbi_dev, std::abs(testing::PathScore(scores, mas.path.source_index()) -
                                       best.score));
    try {
      mas.path.Validate();
    } catch (const Error&) {
      paths_valid = false;
    }
  }

  double fwd_dev = 0.0;
  for (std::size_t n = 0; n < kForwardSumInstances; ++n) {
    const auto [t_src, t_trg] = RandomShape(rng, 5, 8);
    const Matrix log_probs = testing::RandomLogAlignment(rng, t_src, t_trg);
    const double total = testing::BruteForcePathProbabilitySum(log_probs);
    const double value = ForwardSumLoss(log_probs, false).value;
    fwd_dev = std::max(fwd_dev, std::abs(std::exp(-value) - total) / total);
  }

  double fwd_grad_err = 0.0;
  double kl_grad_err = 0.0;
  double occupancy_err = 0.0;
  for (std::size_t n = 0; n < kGradientInstances; ++n) {
    const auto [t_src, t_trg] = RandomShape(rng, 5, 8);
    const Matrix log_probs = testing::RandomLogAlignment(rng, t_src, t_trg);
    const LossValue fwd = ForwardSumLoss(log_probs, true);
    const Matrix fd = testing::CentralDifferenceGradient(
        [](const Matrix& x) { return ForwardSumLoss(x, false).value; }, log_probs,
        kFiniteDifferenceStep);
    fwd_grad_err = std::max(fwd_grad_err, testing::RelativeErrorInf(*fwd.gradient, fd));
    for (std::size_t j = 0; j < t_trg; ++j) {
      double col = 0.0;
      for (std::size_t i = 0; i < t_src; ++i) col += (*fwd.gradient)(i, j);
      occupancy_err = std::max(occupancy_err, std::abs(col + 1.0));
    }

    const PathMatrix path = MonotonicAlignmentSearch(log_probs).path;
    const LossValue kl = KlHardSoftLoss(LogAlignment{log_probs, false}, path);
    const Matrix kl_fd = testing::CentralDifferenceGradient(
        [&path](const Matrix& x) { return KlHardSoftLoss(LogAlignment{x, false}, path).value; },
        log_probs, kFiniteDifferenceStep);
    kl_grad_err = std::max(kl_grad_err, testing::RelativeErrorInf(*kl.gradient, kl_fd));
  }

  double prior_err = 0.0;
  for (std::size_t t_src = 1; t_src <= kPriorMaxLength; ++t_src) {
    for (std::size_t t_trg = 1; t_trg <= kPriorMaxLength; ++t_trg) {
      const PriorMatrix prior = BetaBinomialPrior(t_src, t_trg, config.omega);
      for (std::size_t j = 0; j < t_trg; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < t_src; ++i) sum += prior.values(i, j);
        prior_err = std::max(prior_err, std::abs(sum - 1.0));
      }
    }
  }

  Json checks = Json::array();
  bool all_ok = true;
  auto check = [&](const char* name, double value, const char* op, double threshold, bool ok) {
    checks.push_back({{"name", name}, {"value", value}, {"op", op}, {"threshold", threshold},
                      {"passed", ok}});
    all_ok = all_ok && ok;
  };
  check("recovery_rate", recovery.rate(), ">=", kMinRecoveryRate,
        recovery.rate() >= kMinRecoveryRate);
  check("noiseless_recovery_rate", noiseless.rate(), "==", 1.0, noiseless.rate() == 1.0);
  check("viterbi_max_abs_deviation", viterbi_dev, "<=", kMaxViterbiDeviation,
        viterbi_dev <= kMaxViterbiDeviation && paths_valid);
  check("forward_sum_max_rel_deviation", fwd_dev, "<=", kMaxForwardSumRelDeviation,
        fwd_dev <= kMaxForwardSumRelDeviation);
  check("forward_sum_grad_rel_error", fwd_grad_err, "<=", kMaxGradientRelError,
        fwd_grad_err <= kMaxGradientRelError);
  check("kl_grad_rel_error", kl_grad_err, "<=", kMaxGradientRelError,
        kl_grad_err <= kMaxGradientRelError);
  check("occupancy_column_sum_error", occupancy_err, "<=", kMaxOccupancyError,
        occupancy_err <= kMaxOccupancyError);
  check("prior_column_sum_error", prior_err, "<=", kMaxPriorColumnError,
        prior_err <= kMaxPriorColumnError);

  Json doc;
  doc["version"] = 1;
  doc["seed"] = opts.seed;
  doc["recovery"] = {{"trials", recovery.trials},
                     {"exact", recovery.exact},
                     {"rate", recovery.rate()},
                     {"sigma", opts.sigma},
                     {"max_t_src", opts.max_t_src},
                     {"dim", opts.dim}};
  doc["noiseless_recovery"] = {{"trials", noiseless.trials},
                               {"exact", noiseless.exact},
                               {"rate", noiseless.rate()}};
  doc["viterbi_oracle"] = {{"instances", kViterbiInstances},
                           {"max_abs_deviation", viterbi_dev},
                           {"paths_valid", paths_valid}};
  doc["forward_sum_oracle"] = {{"instances", kForwardSumInstances},
                               {"max_rel_deviation", fwd_dev}};
  doc["gradients"] = {{"instances", kGradientInstances},
                      {"epsilon", kFiniteDifferenceStep},
                      {"forward_sum_max_rel_error", fwd_grad_err},
                      {"kl_max_rel_error", kl_grad_err},
                      {"max_column_sum_error", occupancy_err}};
  doc["prior"] = {{"max_length", kPriorMaxLength}, {"max_column_sum_error", prior_err}};
  doc["config"] = ConfigToJson(config);
  doc["checks"] = std::move(checks);
  doc["passed"] = all_ok;
  return {std::move(doc), all_ok ? kExitOk : kExitFailure};
}

}  // namespace aas::cli
