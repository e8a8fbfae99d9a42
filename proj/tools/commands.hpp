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

#ifndef AAS_TOOLS_COMMANDS_HPP_
#define AAS_TOOLS_COMMANDS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "aas/config.hpp"
#include "aas/regulate.hpp"
#include "cli.hpp"
#include "json.hpp"

namespace aas::cli {

using Json = nlohmann::ordered_json;

// Result of a subcommand: a JSON document for stdout and an exit code.
struct CommandResult {
  Json output;
  int exit_code = kExitOk;
};

struct AlignOptions {
  std::string src_path;
  std::string trg_path;
  std::string out_path;
  std::string heatmap_path;
  std::optional<std::size_t> reduce;
};
CommandResult RunAlign(const AlignOptions& opts, const AASConfig& config);

struct ExpandOptions {
  std::string seq_path;
  std::string durations_path;
  std::string out_path;
};
CommandResult RunExpand(const ExpandOptions& opts);

struct ReduceOptions {
  std::string seq_path;
  std::string out_path;
  ReductionConfig reduction;
};
CommandResult RunReduce(const ReduceOptions& opts);

struct LossOptions {
  std::string log_probs_path;
  std::string durations_path;  // hard path given as durations; MAS path when empty
  std::string grad_out_path;
  std::string pred_path;
  std::string target_path;
  std::string pred_log_dur_path;
  std::string gt_dur_path;
  bool linear_durations = false;
};
CommandResult RunLoss(const LossOptions& opts, const AASConfig& config);

struct PriorOptions {
  std::size_t t_src = 0;
  std::size_t t_trg = 0;
  std::string out_path;
  std::string heatmap_path;
};
CommandResult RunPrior(const PriorOptions& opts, const AASConfig& config);

enum class F0Pairing { kAuto, kIndex, kDtw };

struct MetricsOptions {
  std::string manifest_path;
  double frame_shift_s = 256.0 / 16000.0;
  bool include_c0 = false;
  F0Pairing f0_pairing = F0Pairing::kAuto;
  unsigned threads = 1;
};
CommandResult RunMetrics(const MetricsOptions& opts);

struct SelftestOptions {
  std::size_t trials = 200;
  std::size_t max_t_src = 30;
  std::size_t dim = 8;
  double sigma = 0.01;
  std::uint64_t seed = 1234;
};
CommandResult RunSelftest(const SelftestOptions& opts, const AASConfig& config);

Json ConfigToJson(const AASConfig& config);

}  // namespace aas::cli

#endif  // AAS_TOOLS_COMMANDS_HPP_
