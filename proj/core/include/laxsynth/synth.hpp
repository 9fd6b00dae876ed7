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

#include "laxsynth/lax.hpp"
#include "laxsynth/net.hpp"
#include "laxsynth/sim.hpp"

#include <string>

namespace laxsynth {

/// For each step, the net point whose velocity -f(t_k, x, a) is closest to
/// beta[k]. Ties go to the lower net index. With `closed_loop` the state is
/// the one simulated under the controls chosen so far instead of the relaxed
/// x[k].
ControlTrajectory nearest_vertex(const Problem& p, const LaxSolution& sol, const DeltaNet& net,
                                 bool closed_loop = false);

/// Maps each u[k] to the center of the first net ball containing it.
/// Throws UncoveredPoint when no ball does.
ControlTrajectory simple_function(const Problem& p, const ControlTrajectory& u,
                                  const DeltaNet& net);

/// Chattering realization of the relaxed weights: every step is split into
/// sub-intervals proportional to the active gamma[k][i], in vertex order,
/// each carrying the generator control of that vertex snapped to the net.
ControlTrajectory baseline_interpolation(const Problem& p, const LaxSolution& sol,
                                         const DeltaNet& net);

enum class SynthesisMethod { Nearest, Simple, Baseline };

const char* to_string(SynthesisMethod m);
/// Accepts "nearest", "simple" and "baseline"; throws ConfigError otherwise.
SynthesisMethod parse_method(const std::string& name);

struct SynthesisResult {
  ControlTrajectory control;
  VecList x_sim;
  double total_cost = 0.0;
  MetricSet metrics;
};

/// Runs one synthesis method, simulates the result from x0 and evaluates the
/// metrics against the relaxed trajectory. `Simple` applies simple_function
/// to the nearest-vertex control.
SynthesisResult synthesize(const Problem& p, const LaxSolution& sol, const DeltaNet& net,
                           SynthesisMethod method, const IntegrateOptions& integration = {});

/// Simulates and scores an arbitrary control.
SynthesisResult evaluate_control(const Problem& p, ControlTrajectory control,
                                 const std::optional<Reference>& ref = std::nullopt,
                                 const IntegrateOptions& integration = {});

}  // namespace laxsynth
