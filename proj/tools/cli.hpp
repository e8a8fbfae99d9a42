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

#ifndef AAS_TOOLS_CLI_HPP_
#define AAS_TOOLS_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "aas/config.hpp"
#include "aas/error.hpp"

namespace aas::cli {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,     // selftest threshold violated, or a whole batch failed
  kExitIoFormat = 2,    // I/O, file format, bad arguments or bad values
  kExitInfeasible = 3,  // no monotone alignment exists
  kExitShape = 4,       // dimension or length mismatch
};

int ExitCodeFor(ErrorCode code) noexcept;

// Global options shared by every subcommand.
struct GlobalOptions {
  std::string config_path;
  std::uint64_t seed = 1234;
  bool quiet = false;
};

// Reads an AASConfig from a JSON object file; unknown keys are rejected.
AASConfig LoadConfig(const std::filesystem::path& path);
AASConfig ParseConfig(const std::string& json_text);

// Runs the tool. `args` excludes the program name. JSON goes to `out`,
// logs and error objects to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aas::cli

#endif  // AAS_TOOLS_CLI_HPP_
