// Copyright 2026 The gapforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAPFORGE_TOOLS_CLI_HPP
#define GAPFORGE_TOOLS_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gapforge/primes.hpp"

namespace gapforge::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

enum class Command { params, construct, verify, estimate };
enum class Format { json, text };

struct RunConfig {
  Command command = Command::params;
  u64 x = 0;
  u64 M = 1;
  u64 a = 1;
  double epsilon = 0.1;
  double C_U = 1.0;
  double kappa = 1.0;
  std::optional<u64> y, z, U, V;
  std::vector<u64> m_list;
  bool with_bounds = false;
  bool force = false;
  u64 presieve_depth = 1'000'000;
  std::string output_path;  // empty: standard output
  std::string input_path;   // verify
  Format format = Format::text;
  unsigned thread_count = 1;
};

int cmd_params(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_construct(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_estimate(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses args (without the program name) and dispatches. Thread count falls
// back to the GAPFORGE_THREADS environment variable.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gapforge::cli

#endif  // GAPFORGE_TOOLS_CLI_HPP
