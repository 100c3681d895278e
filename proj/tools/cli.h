// Copyright 2026 The quadmilp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QUADMILP_TOOLS_CLI_H_
#define QUADMILP_TOOLS_CLI_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace quadmilp::cli {

enum class OutputFormat { kHuman, kJson };

struct CliConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  double time_limit_s = 1e4;
  double gap_tol = 1e-6;
  std::optional<std::int64_t> node_limit;
  std::uint64_t seed = 1;
  std::string output;
  OutputFormat format = OutputFormat::kHuman;
  std::string export_mps;
  bool bounds_only = false;

  // gen
  std::string family;
  int k = 1;
  int n = 10;
  double density = 0.5;
  std::string name;
};

inline constexpr int kExitOptimal = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitLimit = 2;

// Parses argv and dispatches. Normal output goes to `out`, diagnostics to
// `err`. Returns the process exit code.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

int CmdSolve(const CliConfig& config, std::ostream& out, std::ostream& err);
int CmdBounds(const CliConfig& config, std::ostream& out, std::ostream& err);
int CmdVerify(const CliConfig& config, std::ostream& out, std::ostream& err);
int CmdGen(const CliConfig& config, std::ostream& out, std::ostream& err);
int CmdExport(const CliConfig& config, std::ostream& out, std::ostream& err);
int CmdBench(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace quadmilp::cli

#endif  // QUADMILP_TOOLS_CLI_H_
