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

/**
 * @file
 * @brief YAML problem and run configuration.
 *
 * A file either names the builtin preset
 *
 *   builtin: gear
 *
 * or spells the problem out:
 *
 *   n: 2
 *   m: 1
 *   A: [[0, 1], [0, 0]]
 *   h:                      # one of: affine, polynomial, builtin
 *     affine: {B: [[0], [1]], c: [0, 0]}
 *   S: {constant: 0, linear: [0, 0], quadratic: [1, 1]}
 *   R:                      # sum of coef * prod_j a_j^powers[j]
 *     polynomial: [{coef: 0.5, powers: [2]}]
 *   g: {linear: [1, 0]}
 *   controls: {type: box, lo: [-1], hi: [1]}
 *   constraint: {type: box, lo: [null, -0.5], hi: [null, 0.5]}
 *   grid: {t0: 0, T: 1, dt: 0.05}
 *   x0: [0, 0]
 *
 * Polynomial h terms carry an n-vector `coef`. Control sets are `finite`
 * (points), `box` (lo, hi) or `product` (factors). Constraints are `none`,
 * `box` (null bounds are free) or `halfspace` (normals, offsets). An
 * optional `run` section holds experiment settings.
 */

#include "laxsynth/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace laxsynth {

struct RunSettings {
  std::optional<double> dt;
  std::optional<double> delta;
  std::optional<std::string> mode;
  std::optional<double> epsilon;
  std::optional<std::vector<double>> epsilons;  ///< penalty sweep, must decrease
  std::optional<std::string> method;
  std::optional<std::string> out;
  std::optional<std::string> net_file;
  std::optional<int> net_points;                ///< uniform samples per interval
  std::optional<std::uint64_t> seed;
};

struct LoadedConfig {
  Problem problem;
  std::string source;  ///< "gear" for the preset, otherwise "custom"
  RunSettings run;
};

/// Throws ConfigError on malformed input.
LoadedConfig parse_config(const std::string& yaml_text);
LoadedConfig load_config(const std::string& path);

/// Same problem on a uniform grid of step dt over the original horizon.
Problem with_step(Problem p, double dt);

}  // namespace laxsynth
