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

#include "laxsynth/model.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

namespace laxsynth {

/// Piecewise-constant control: u[k] is applied on [t_k, t_{k+1}).
struct ControlTrajectory {
  TimeGrid grid;
  VecList u;

  std::size_t steps() const { return u.size(); }
};

enum class Scheme {
  RungeKutta4,   ///< classical RK4 with substeps per knot interval
  ForwardEuler,  ///< one explicit Euler step per knot interval
};

struct IntegrateOptions {
  int substeps = 4;
  Scheme scheme = Scheme::RungeKutta4;
};

/// States at every knot of u.grid, starting from p.x0.
VecList integrate(const Problem& p, const ControlTrajectory& u, const IntegrateOptions& opts = {});

/// Same, for a control signal evaluated at every RK4 stage time.
VecList integrate(const Problem& p, const std::function<Vec(double)>& u, const TimeGrid& grid,
                  int substeps = 4);

/// Left-endpoint rule: sum_k L(t_k, x[k], u[k]) dt_k + g(x[K]).
double evaluate_cost(const Problem& p, const ControlTrajectory& u, const VecList& x);

struct MetricSet {
  double total_cost = 0.0;
  double control_tv = 0.0;                ///< sum_k |u[k+1] - u[k]|_1
  double max_constraint_violation = 0.0;
  double tracking_error = 0.0;            ///< max over shared knots of |x - x_ref|_2
};

struct Reference {
  TimeGrid grid;
  VecList states;
};

MetricSet metrics(const Problem& p, const ControlTrajectory& u, const VecList& x,
                  const std::optional<Reference>& ref = std::nullopt);

double total_variation(const ControlTrajectory& u);

/// Columns t, u1..um.
void write_control_csv(const ControlTrajectory& u, std::ostream& os);
void write_control_csv(const ControlTrajectory& u, const std::string& path);
/// The file stores knot start times only; `end_time` closes the grid.
ControlTrajectory read_control_csv(const std::string& path, double end_time);

/// Columns t, x1..xn, u1..um; u blank on the last knot.
void write_trajectory_csv(const ControlTrajectory& u, const VecList& x, std::ostream& os);
void write_trajectory_csv(const ControlTrajectory& u, const VecList& x, const std::string& path);

}  // namespace laxsynth
