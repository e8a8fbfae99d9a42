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
#include <string>

#include "aas/align.hpp"
#include "aas/io.hpp"
#include "aas/losses.hpp"
#include "aas/regulate.hpp"
#include "commands.hpp"

namespace aas::cli {
namespace {

FeatureMatrix LoadFeatures(const std::string& path) {
  const io::NpyArray array = io::ReadNpy(path);
  if (array.rank() != 2) {
    throw Error(ErrorCode::kUnsupportedRank, path + ": expected a 2-D feature matrix");
  }
  return array.ToMatrix();
}

PathMatrix DurationsToPath(const DurationSeq& durations, std::size_t t_src, std::size_t t_trg) {
  if (durations.size() != t_src) {
    throw Error(ErrorCode::kLengthMismatch, "durations length differs from the source length");
  }
  if (durations.Total() != static_cast<std::int64_t>(t_trg)) {
    throw Error(ErrorCode::kLengthMismatch, "durations do not sum to the target length");
  }
  std::vector<std::size_t> index;
  index.reserve(t_trg);
  for (std::size_t i = 0; i < t_src; ++i) {
    if (durations.values[i] < 1) {
      throw Error(ErrorCode::kInvalidPath, "a hard path needs every duration >= 1");
    }
    index.insert(index.end(), static_cast<std::size_t>(durations.values[i]), i);
  }
  PathMatrix path(t_src, std::move(index));
  path.Validate();
  return path;
}

double Normalized(double raw, std::size_t t_trg, LossNormalization norm) {
  return norm == LossNormalization::kPerFrame ? raw / static_cast<double>(t_trg) : raw;
}

}  // namespace

CommandResult RunAlign(const AlignOptions& opts, const AASConfig& config) {
  FeatureMatrix src = LoadFeatures(opts.src_path);
  const FeatureMatrix trg = LoadFeatures(opts.trg_path);
  if (opts.reduce) {
    src = ReduceStack(src, {*opts.reduce, config.pad_policy, ReductionPlacement::kPostEncoder});
  }

  const AlignmentResult result = AlignSequences(src, trg, config);
  io::WriteDurations(opts.out_path, result.durations);
  if (!opts.heatmap_path.empty()) {
    io::WriteHeatmap(opts.heatmap_path, result.diagnostics.log_alignment.values,
                     io::HeatmapNormalization::kLog);
  }

  const auto& diag = result.diagnostics;
  const std::size_t t_trg = trg.rows();
  Json doc;
  doc["version"] = 1;
  doc["t_src"] = src.rows();
  doc["t_trg"] = t_trg;
  doc["durations"] = result.durations.values;
  doc["viterbi_score"] = diag.viterbi_score;
  doc["forward_sum"] = {{"raw", diag.forward_sum},
                        {"per_frame", diag.forward_sum / static_cast<double>(t_trg)}};
  doc["kl_loss"] = diag.kl;
  doc["alignment_objective"] =
      config.alpha * (Normalized(diag.forward_sum, t_trg, config.loss_normalization) + diag.kl);
  doc["durations_path"] = opts.out_path;
  doc["config"] = ConfigToJson(config);
  return {std::move(doc), kExitOk};
}

CommandResult RunExpand(const ExpandOptions& opts) {
  const FeatureMatrix seq = LoadFeatures(opts.seq_path);
  const DurationSeq durations = io::ReadNpy(opts.durations_path).ToDurations();
  const FeatureMatrix out = Expand(seq, durations);
  io::WriteMatrix(opts.out_path, out);

  Json doc;
  doc["version"] = 1;
  doc["rows_in"] = seq.rows();
  doc["rows"] = out.rows();
  doc["cols"] = out.cols();
  doc["output"] = opts.out_path;
  return {std::move(doc), kExitOk};
}

CommandResult RunReduce(const ReduceOptions& opts) {
  const FeatureMatrix seq = LoadFeatures(opts.seq_path);
  const FeatureMatrix out = ReduceStack(seq, opts.reduction);
  io::WriteMatrix(opts.out_path, out);

  Json doc;
  doc["version"] = 1;
  doc["rows_in"] = seq.rows();
  doc["cols_in"] = seq.cols();
  doc["rows"] = out.rows();
  doc["cols"] = out.cols();
  doc["k"] = opts.reduction.k;
  doc["pad_policy"] = PadPolicyName(opts.reduction.pad_policy);
  doc["placement"] = PlacementName(opts.reduction.placement);
  doc["output"] = opts.out_path;
  return {std::move(doc), kExitOk};
}

CommandResult RunLoss(const LossOptions& opts, const AASConfig& config) {
  const bool have_alignment = !opts.log_probs_path.empty();
  const bool have_l1 = !opts.pred_path.empty() || !opts.target_path.empty();
  const bool have_dp = !opts.pred_log_dur_path.empty() || !opts.gt_dur_path.empty();
  if (!have_alignment && !have_l1 && !have_dp) {
    throw Error(ErrorCode::kInvalidParameter,
                "nothing to evaluate: pass --log-probs, --pred/--target or "
                "--pred-log-dur/--gt-dur");
  }

  Json doc;
  doc["version"] = 1;
  std::optional<double> lfwd, lkl, l1, ldp;

  if (have_alignment) {
    const LogAlignment log_probs{LoadFeatures(opts.log_probs_path), false};
    const std::size_t t_trg = log_probs.t_trg();
    const LossValue fwd = ForwardSumLoss(log_probs, !opts.grad_out_path.empty());
    const PathMatrix path =
        opts.durations_path.empty()
            ? MonotonicAlignmentSearch(log_probs).path
            : DurationsToPath(io::ReadNpy(opts.durations_path).ToDurations(), log_probs.t_src(),
                              t_trg);
    const LossValue kl = KlHardSoftLoss(log_probs, path);
    if (!opts.grad_out_path.empty()) io::WriteMatrix(opts.grad_out_path, *fwd.gradient);

    lfwd = Normalized(fwd.value, t_trg, config.loss_normalization);
    lkl = kl.value;
    doc["t_src"] = log_probs.t_src();
    doc["t_trg"] = t_trg;
    doc["forward_sum"] = {{"raw", fwd.value},
                          {"per_frame", fwd.value / static_cast<double>(t_trg)}};
    doc["kl_loss"] = kl.value;
    doc["hard_path"] = opts.durations_path.empty() ? "mas" : "durations";
  }
  if (have_l1) {
    if (opts.pred_path.empty() || opts.target_path.empty()) {
      throw Error(ErrorCode::kInvalidParameter, "--pred and --target must be given together");
    }
    l1 = L1Loss(LoadFeatures(opts.pred_path), LoadFeatures(opts.target_path)).value;
    doc["l1"] = *l1;
  }
  if (have_dp) {
    if (opts.pred_log_dur_path.empty() || opts.gt_dur_path.empty()) {
      throw Error(ErrorCode::kInvalidParameter, "--pred-log-dur and --gt-dur must be given together");
    }
    const std::vector<double> pred = io::ReadNpy(opts.pred_log_dur_path).ToReal();
    const DurationSeq gt = io::ReadNpy(opts.gt_dur_path).ToDurations();
    ldp = DurationLoss(pred, gt,
                       opts.linear_durations ? DurationDomain::kLinear : DurationDomain::kLog1p)
              .value;
    doc["duration_loss"] = *ldp;
    doc["duration_domain"] = opts.linear_durations ? "linear" : "log1p";
  }
  if (lfwd && l1 && ldp) {
    doc["total"] = TotalObjective(*l1, *ldp, *lfwd, *lkl, {config.alpha});
  }
  doc["alpha"] = config.alpha;
  doc["loss_normalization"] =
      config.loss_normalization == LossNormalization::kPerFrame ? "per_frame" : "raw";
  return {std::move(doc), kExitOk};
}

CommandResult RunPrior(const PriorOptions& opts, const AASConfig& config) {
  const PriorMatrix prior = BetaBinomialPrior(opts.t_src, opts.t_trg, config.omega);
  if (!opts.out_path.empty()) io::WriteMatrix(opts.out_path, prior.values);
  if (!opts.heatmap_path.empty()) io::WriteHeatmap(opts.heatmap_path, prior.values);

  double worst = 0.0;
  for (std::size_t j = 0; j < prior.t_trg(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < prior.t_src(); ++i) sum += prior.values(i, j);
    worst = std::max(worst, std::abs(sum - 1.0));
  }

  Json doc;
  doc["version"] = 1;
  doc["t_src"] = opts.t_src;
  doc["t_trg"] = opts.t_trg;
  doc["omega"] = config.omega;
  doc["max_column_sum_error"] = worst;
  if (!opts.out_path.empty()) doc["output"] = opts.out_path;
  return {std::move(doc), kExitOk};
}

}  // namespace aas::cli
