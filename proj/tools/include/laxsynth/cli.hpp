/*
 Copyright 2026 The laxsynth Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#pragma once

#include "laxsynth/config.hpp"
#include "laxsynth/lax.hpp"
#include "laxsynth/net.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace laxsynth::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2 };

/// Settings of one command invocation. Values from a config file's `run`
/// section are applied first; command-line flags override them.
struct RunConfig {
  std::string preset = "gear";
  std::optional<std::string> config_path;
  std::optional<double> dt;
  std::optional<double> delta;
  std::string mode = "hard";
  double epsilon = 1e-3;
  std::vector<double> epsilons{1.0, 0.1, 0.01, 0.001};
  std::string method = "nearest";
  std::string out = ".";
  std::uint64_t seed = 1;
  std::optional<std::string> lax_file;
  std::optional<std::string> net_file;
  std::optional<int> net_points;
  bool closed_loop = false;

  // conjugate-eval
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> b;
  std::vector<double> p;

  // compare
  std::vector<double> dts{0.05, 0.02, 0.01};
};

nlohmann::json to_json(const RunConfig& cfg);

/// Problem selected by the config (preset or file), regridded to cfg.dt
/// when set.
Problem resolve_problem(const RunConfig& cfg);
LaxMode resolve_mode(const RunConfig& cfg);

/// Net from --net-file, else a uniform grid with net_points per interval,
/// else a greedy build. Presets without --delta use the 2 x 50 grid at
/// delta = 0.02.
DeltaNet resolve_net(const RunConfig& cfg, const Problem& p);

int cmd_solve(const RunConfig& cfg, std::ostream& log);
int cmd_synthesize(const RunConfig& cfg, std::ostream& log);
int cmd_compare(const RunConfig& cfg, std::ostream& log);
int cmd_check(const RunConfig& cfg, std::ostream& log);
int cmd_conjugate_eval(const RunConfig& cfg, std::ostream& log);
int cmd_net_build(const RunConfig& cfg, std::ostream& log);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace laxsynth::cli
