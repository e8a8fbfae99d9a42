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

#include <atomic>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "aas/io.hpp"
#include "aas/metrics.hpp"
#include "commands.hpp"

namespace aas::cli {
namespace {

struct ManifestEntry {
  std::size_t line = 0;
  std::string raw;
};

struct PairOutcome {
  std::optional<Json> result;
  std::optional<Json> error;
  std::optional<double> mcd, f0corr, ddur;
  std::vector<double> pred_dur;
};

std::string RequiredKey(const Json& entry, const char* key) {
  if (!entry.contains(key) || !entry[key].is_string()) {
    throw Error(ErrorCode::kMalformedHeader, std::string("manifest entry lacks string key '") +
                                                 key + "'");
  }
  return entry[key].get<std::string>();
}

std::optional<std::string> OptionalKey(const Json& entry, const char* key) {
  if (!entry.contains(key) || entry[key].is_null()) return std::nullopt;
  if (!entry[key].is_string()) {
    throw Error(ErrorCode::kMalformedHeader, std::string("manifest key '") + key +
                                                 "' must be a string");
  }
  return entry[key].get<std::string>();
}

PairOutcome EvaluatePair(std::size_t index, const ManifestEntry& line,
                         const std::filesystem::path& base, const MetricsOptions& opts) {
  PairOutcome outcome;
  try {
    Json entry;
    try {
      entry = Json::parse(line.raw);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::kMalformedHeader, std::string("manifest line is not JSON: ") + e.what());
    }
    if (!entry.is_object()) throw Error(ErrorCode::kMalformedHeader, "manifest line is not an object");

    auto resolve = [&](const std::string& p) {
      const std::filesystem::path path(p);
      return path.is_absolute() ? path : base / path;
    };

    const std::string mcc_x_name = RequiredKey(entry, "mcc_x");
    const Matrix mcc_x = io::ReadNpy(resolve(mcc_x_name)).ToMatrix();
    const Matrix mcc_y = io::ReadNpy(resolve(RequiredKey(entry, "mcc_y"))).ToMatrix();
    const auto f0_x_name = OptionalKey(entry, "f0_x");
    const auto f0_y_name = OptionalKey(entry, "f0_y");
    const auto pred_name = OptionalKey(entry, "pred_dur");
    if (f0_x_name.has_value() != f0_y_name.has_value()) {
      throw Error(ErrorCode::kMalformedHeader, "f0_x and f0_y must be given together");
    }

    Json result;
    result["index"] = index;
    result["mcc_x"] = mcc_x_name;
    result["frames_x"] = mcc_x.rows();
    result["frames_y"] = mcc_y.rows();

    WarpPath warp;
    outcome.mcd = MelCepstralDistortion(mcc_x, mcc_y, !opts.include_c0, &warp);
    result["mcd_db"] = *outcome.mcd;

    if (f0_x_name) {
      const std::vector<double> f0_x = io::ReadNpy(resolve(*f0_x_name)).ToReal();
      const std::vector<double> f0_y = io::ReadNpy(resolve(*f0_y_name)).ToReal();
      const bool by_index = opts.f0_pairing == F0Pairing::kIndex ||
                            (opts.f0_pairing == F0Pairing::kAuto && f0_x.size() == f0_y.size());
      if (!by_index && (f0_x.size() != mcc_x.rows() || f0_y.size() != mcc_y.rows())) {
        throw Error(ErrorCode::kLengthMismatch,
                    "DTW pairing needs F0 contours with one value per mel-cepstral frame");
      }
      outcome.f0corr = by_index ? F0Correlation(f0_x, f0_y) : F0Correlation(f0_x, f0_y, warp);
      result["f0corr"] = *outcome.f0corr;
      result["f0_pairing"] = by_index ? "index" : "dtw";
    }

    outcome.ddur = DurationDifference(mcc_x.rows(), mcc_y.rows(), opts.frame_shift_s);
    result["ddur_s"] = *outcome.ddur;

    if (pred_name) {
      outcome.pred_dur = io::ReadNpy(resolve(*pred_name)).ToReal();
      result["dvar"] = DurationVariance(outcome.pred_dur);
    }
    outcome.result = std::move(result);
  } catch (const Error& e) {
    outcome = {};
    outcome.error = Json{{"index", index},
                         {"line", line.line},
                         {"code", ErrorCodeName(e.code())},
                         {"message", e.what()}};
  }
  return outcome;
}

std::optional<double> Mean(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

CommandResult RunMetrics(const MetricsOptions& opts) {
  std::ifstream in(opts.manifest_path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open manifest " + opts.manifest_path);
  const std::filesystem::path base = std::filesystem::path(opts.manifest_path).parent_path();

  std::vector<ManifestEntry> entries;
  std::string text;
  for (std::size_t line_no = 1; std::getline(in, text); ++line_no) {
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    entries.push_back({line_no, text});
  }

  // Workers pull indices from a shared counter; results land in manifest order.
  std::vector<PairOutcome> outcomes(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      outcomes[i] = EvaluatePair(i, entries[i], base, opts);
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, entries.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  Json results = Json::array();
  Json errors = Json::array();
  std::vector<double> mcds, f0corrs, ddurs;
  std::vector<std::vector<double>> pred_durs;
  for (auto& o : outcomes) {
    if (o.error) {
      errors.push_back(std::move(*o.error));
      continue;
    }
    results.push_back(std::move(*o.result));
    if (o.mcd) mcds.push_back(*o.mcd);
    if (o.f0corr) f0corrs.push_back(*o.f0corr);
    if (o.ddur) ddurs.push_back(*o.ddur);
    if (!o.pred_dur.empty()) pred_durs.push_back(std::move(o.pred_dur));
  }

  Json aggregate;
  aggregate["pairs_ok"] = results.size();
  aggregate["pairs_failed"] = errors.size();
  aggregate["frame_shift_s"] = opts.frame_shift_s;
  auto put = [&](const char* key, std::optional<double> v) {
    aggregate[key] = v ? Json(*v) : Json(nullptr);
  };
  put("mcd_db", Mean(mcds));
  put("f0corr", Mean(f0corrs));
  put("ddur_s", Mean(ddurs));
  put("dvar", pred_durs.empty() ? std::nullopt
                                : std::optional<double>(DurationVariance(pred_durs)));

  Json doc;
  doc["version"] = 1;
  doc["results"] = std::move(results);
  doc["aggregate"] = std::move(aggregate);
  doc["errors"] = std::move(errors);
  const int code = doc["results"].empty() ? kExitFailure : kExitOk;
  return {std::move(doc), code};
}

}  // namespace aas::cli
