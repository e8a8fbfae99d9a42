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

#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace aas::cli {
namespace {

void WriteError(std::ostream& err, std::string_view code, const std::string& message) {
  Json doc;
  doc["error"] = {{"code", code}, {"message", message}};
  err << doc.dump() << '\n';
}

template <typename Enum>
Enum ParseEnum(const Json& value, const std::map<std::string, Enum>& names, const char* key) {
  if (!value.is_string()) {
    throw Error(ErrorCode::kInvalidParameter, std::string("config key '") + key + "' must be a string");
  }
  const auto it = names.find(value.get<std::string>());
  if (it == names.end()) {
    throw Error(ErrorCode::kInvalidParameter,
                std::string("config key '") + key + "' has unknown value " + value.dump());
  }
  return it->second;
}

const std::map<std::string, PadPolicy> kPadNames = {
    {"pad_repeat_last", PadPolicy::kPadRepeatLast},
    {"repeat_last", PadPolicy::kPadRepeatLast},
    {"truncate", PadPolicy::kTruncate},
};
const std::map<std::string, LossNormalization> kNormNames = {
    {"raw", LossNormalization::kRaw},
    {"per_frame", LossNormalization::kPerFrame},
};
const std::map<std::string, ReductionPlacement> kPlacementNames = {
    {"pre_encoder", ReductionPlacement::kPreEncoder},
    {"post_encoder", ReductionPlacement::kPostEncoder},
};
const std::map<std::string, F0Pairing> kPairingNames = {
    {"auto", F0Pairing::kAuto},
    {"index", F0Pairing::kIndex},
    {"dtw", F0Pairing::kDtw},
};

}  // namespace

int ExitCodeFor(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kNoFeasiblePath: return kExitInfeasible;
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kLengthMismatch: return kExitShape;
    default: return kExitIoFormat;
  }
}

AASConfig ParseConfig(const std::string& json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kMalformedHeader, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kInvalidParameter, "config must be a JSON object");

  AASConfig config;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "omega") {
        config.omega = value.get<double>();
      } else if (key == "use_prior") {
        config.use_prior = value.get<bool>();
      } else if (key == "viterbi_on_linear") {
        config.viterbi_on_linear = value.get<bool>();
      } else if (key == "alpha") {
        config.alpha = value.get<double>();
      } else if (key == "k") {
        config.k = value.get<std::size_t>();
      } else if (key == "pad_policy") {
        config.pad_policy = ParseEnum(value, kPadNames, "pad_policy");
      } else if (key == "loss_normalization") {
        config.loss_normalization = ParseEnum(value, kNormNames, "loss_normalization");
      } else {
        throw Error(ErrorCode::kInvalidParameter, "unknown config key '" + key + "'");
      }
    }
  } catch (const Json::type_error& e) {
    throw Error(ErrorCode::kInvalidParameter, std::string("config value has wrong type: ") + e.what());
  }
  if (!(config.omega > 0.0)) throw Error(ErrorCode::kInvalidParameter, "omega must be > 0");
  if (!(config.alpha >= 0.0)) throw Error(ErrorCode::kInvalidParameter, "alpha must be >= 0");
  if (config.k == 0) throw Error(ErrorCode::kInvalidParameter, "k must be >= 1");
  return config;
}

AASConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open config " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return ParseConfig(text);
}

Json ConfigToJson(const AASConfig& config) {
  Json j;
  j["omega"] = config.omega;
  j["use_prior"] = config.use_prior;
  j["viterbi_on_linear"] = config.viterbi_on_linear;
  j["alpha"] = config.alpha;
  j["k"] = config.k;
  j["pad_policy"] = PadPolicyName(config.pad_policy);
  j["loss_normalization"] =
      config.loss_normalization == LossNormalization::kPerFrame ? "per_frame" : "raw";
  return j;
}

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monotonic alignment search, alignment losses, length regulation and "
               "evaluation metrics for sequence-to-sequence voice conversion.",
               "aas"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--config", global.config_path, "JSON file with AASConfig fields");
  app.add_option("--seed", global.seed, "Seed for all randomness");
  app.add_flag("--quiet", global.quiet, "Suppress progress logs on stderr");

  // Per-run overrides of config fields.
  std::optional<double> omega;
  std::optional<double> alpha;
  bool no_prior = false;
  bool viterbi_on_linear = false;
  std::optional<LossNormalization> loss_norm;

  auto* align = app.add_subcommand("align", "Extract durations by monotonic alignment search");
  AlignOptions align_opts;
  align->add_option("src", align_opts.src_path, "Source features (.npy, T_src x d)")->required();
  align->add_option("trg", align_opts.trg_path, "Target features (.npy, T_trg x d)")->required();
  align->add_option("-o,--out", align_opts.out_path, "Output durations (.npy, i64)")->required();
  align->add_option("--heatmap", align_opts.heatmap_path, "Write the log alignment as PGM");
  align->add_option("--reduce", align_opts.reduce, "Stack k adjacent source frames first")
      ->check(CLI::PositiveNumber);
  align->add_option("--omega", omega, "Prior scaling");
  align->add_flag("--no-prior", no_prior, "Disable the beta-binomial prior");
  align->add_flag("--viterbi-on-linear", viterbi_on_linear,
                  "Run MAS on probabilities instead of log-probabilities");
  align->add_option("--loss-normalization", loss_norm, "raw or per_frame")
      ->transform(CLI::CheckedTransformer(kNormNames));

  auto* expand = app.add_subcommand("expand", "Repeat frames by durations (length regulation)");
  ExpandOptions expand_opts;
  expand->add_option("seq", expand_opts.seq_path, "Frames (.npy)")->required();
  expand->add_option("durations", expand_opts.durations_path, "Durations (.npy, 1-D)")->required();
  expand->add_option("-o,--out", expand_opts.out_path, "Output frames (.npy)")->required();

  auto* reduce = app.add_subcommand("reduce", "Stack k adjacent frames");
  ReduceOptions reduce_opts;
  std::optional<std::size_t> reduce_k;
  std::optional<PadPolicy> reduce_pad;
  reduce->add_option("seq", reduce_opts.seq_path, "Frames (.npy)")->required();
  reduce->add_option("-o,--out", reduce_opts.out_path, "Output frames (.npy)")->required();
  reduce->add_option("-k", reduce_k, "Reduction factor (default from config)")
      ->check(CLI::PositiveNumber);
  reduce->add_option("--pad", reduce_pad, "pad_repeat_last or truncate")
      ->transform(CLI::CheckedTransformer(kPadNames));
  reduce->add_option("--placement", reduce_opts.reduction.placement, "pre_encoder or post_encoder")
      ->transform(CLI::CheckedTransformer(kPlacementNames));

  auto* loss = app.add_subcommand("loss", "Evaluate training losses on saved arrays");
  LossOptions loss_opts;
  loss->add_option("--log-probs", loss_opts.log_probs_path, "Log alignment (.npy, T_src x T_trg)");
  loss->add_option("--durations", loss_opts.durations_path,
                   "Hard path as durations (default: MAS path)");
  loss->add_option("--grad-out", loss_opts.grad_out_path, "Write the forward-sum gradient");
  loss->add_option("--pred", loss_opts.pred_path, "Predicted features for the L1 loss");
  loss->add_option("--target", loss_opts.target_path, "Target features for the L1 loss");
  loss->add_option("--pred-log-dur", loss_opts.pred_log_dur_path, "Predicted log1p durations");
  loss->add_option("--gt-dur", loss_opts.gt_dur_path, "Ground-truth durations");
  loss->add_flag("--linear-durations", loss_opts.linear_durations,
                 "Compare durations in the linear domain");
  loss->add_option("--alpha", alpha, "Weight of forward-sum + KL");
  loss->add_option("--loss-normalization", loss_norm, "raw or per_frame")
      ->transform(CLI::CheckedTransformer(kNormNames));

  auto* prior = app.add_subcommand("prior", "Write a beta-binomial alignment prior");
  PriorOptions prior_opts;
  prior->add_option("--t-src", prior_opts.t_src, "Source length")->required()->check(CLI::PositiveNumber);
  prior->add_option("--t-trg", prior_opts.t_trg, "Target length")->required()->check(CLI::PositiveNumber);
  prior->add_option("--omega", omega, "Prior scaling");
  prior->add_option("-o,--out", prior_opts.out_path, "Output prior (.npy)");
  prior->add_option("--heatmap", prior_opts.heatmap_path, "Write the prior as PGM");

  auto* metrics = app.add_subcommand("metrics", "Objective metrics over a JSON-lines manifest");
  MetricsOptions metrics_opts;
  metrics->add_option("manifest", metrics_opts.manifest_path, "JSON-lines manifest")->required();
  metrics->add_option("--frame-shift", metrics_opts.frame_shift_s, "Frame shift in seconds")
      ->check(CLI::PositiveNumber);
  metrics->add_flag("--include-c0", metrics_opts.include_c0, "Keep coefficient 0 in MCD");
  metrics->add_option("--f0-pairing", metrics_opts.f0_pairing, "auto, index or dtw")
      ->transform(CLI::CheckedTransformer(kPairingNames));
  metrics->add_option("--threads", metrics_opts.threads, "Pairs evaluated in parallel")
      ->check(CLI::PositiveNumber);

  auto* selftest = app.add_subcommand("selftest", "Synthetic recovery and oracle checks");
  SelftestOptions selftest_opts;
  selftest->add_option("--trials", selftest_opts.trials, "Recovery trials")->check(CLI::PositiveNumber);
  selftest->add_option("--max-t-src", selftest_opts.max_t_src, "Largest source length")
      ->check(CLI::PositiveNumber);
  selftest->add_option("--dim", selftest_opts.dim, "Feature dimension")->check(CLI::PositiveNumber);
  selftest->add_option("--sigma", selftest_opts.sigma, "Target noise standard deviation")
      ->check(CLI::NonNegativeNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    err << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    WriteError(err, "usage", e.what());
    return kExitIoFormat;
  }

  try {
    AASConfig config = global.config_path.empty() ? AASConfig{} : LoadConfig(global.config_path);
    if (omega) config.omega = *omega;
    if (alpha) config.alpha = *alpha;
    if (no_prior) config.use_prior = false;
    if (viterbi_on_linear) config.viterbi_on_linear = true;
    if (loss_norm) config.loss_normalization = *loss_norm;
    if (!(config.omega > 0.0)) throw Error(ErrorCode::kInvalidParameter, "omega must be > 0");
    if (!(config.alpha >= 0.0)) throw Error(ErrorCode::kInvalidParameter, "alpha must be >= 0");

    CommandResult result;
    if (*align) {
      result = RunAlign(align_opts, config);
    } else if (*expand) {
      result = RunExpand(expand_opts);
    } else if (*reduce) {
      reduce_opts.reduction.k = reduce_k.value_or(config.k);
      reduce_opts.reduction.pad_policy = reduce_pad.value_or(config.pad_policy);
      result = RunReduce(reduce_opts);
    } else if (*loss) {
      result = RunLoss(loss_opts, config);
    } else if (*prior) {
      result = RunPrior(prior_opts, config);
    } else if (*metrics) {
      result = RunMetrics(metrics_opts);
    } else {
      selftest_opts.seed = global.seed;
      if (!global.quiet) {
        err << "selftest: " << selftest_opts.trials << " recovery trials, seed " << global.seed
            << '\n';
      }
      result = RunSelftest(selftest_opts, config);
    }
    out << result.output.dump(2) << '\n';
    return result.exit_code;
  } catch (const Error& e) {
    WriteError(err, ErrorCodeName(e.code()), e.what());
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    WriteError(err, "internal", e.what());
    return kExitFailure;
  }
}

}  // namespace aas::cli
