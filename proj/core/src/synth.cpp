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
#include "laxsynth/synth.hpp"

#include <limits>

namespace laxsynth {

namespace {

int nearest_index(const DeltaNet& net, const Vec& a) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < net.points.size(); ++i) {
    const double d = (net.points[i] - a).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

const Vec& closest_velocity_point(const Problem& p, double t, const Vec& x, const Vec& beta,
                                  const DeltaNet& net) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < net.points.size(); ++i) {
    const double d = (beta + p.dynamics.f(t, x, net.points[i])).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return net.points[best];
}

}  // namespace

ControlTrajectory nearest_vertex(const Problem& p, const LaxSolution& sol, const DeltaNet& net,
                                 bool closed_loop) {
  if (net.points.empty()) throw std::invalid_argument("nearest_vertex: empty net");
  ControlTrajectory out;
  out.grid = sol.grid;
  out.u.reserve(sol.steps());
  Vec x = closed_loop ? p.x0 : Vec();
  for (std::size_t k = 0; k < sol.steps(); ++k) {
    const double t = sol.grid.time(k);
    const Vec& state = closed_loop ? x : sol.x_traj[k];
    out.u.push_back(closest_velocity_point(p, t, state, sol.beta_traj[k], net));
    if (closed_loop) {
      ControlTrajectory one;
      one.grid = TimeGrid({t, sol.grid.time(k + 1)});
      one.u = {out.u.back()};
      Problem local = p;
      local.x0 = x;
      x = integrate(local, one).back();
    }
  }
  return out;
}

ControlTrajectory simple_function(const Problem& p, const ControlTrajectory& u,
                                  const DeltaNet& net) {
  (void)p;
  ControlTrajectory out;
  out.grid = u.grid;
  out.u.reserve(u.u.size());
  for (std::size_t k = 0; k < u.u.size(); ++k) {
    const int i = first_covering_ball(net, u.u[k]);
    if (i < 0) {
      throw UncoveredPoint("control at step " + std::to_string(k) +
                           " lies outside every net ball");
    }
    out.u.push_back(net.points[static_cast<std::size_t>(i)]);
  }
  return out;
}

ControlTrajectory baseline_interpolation(const Problem& p, const LaxSolution& sol,
                                         const DeltaNet& net) {
  (void)p;
  if (net.points.empty()) throw std::invalid_argument("baseline_interpolation: empty net");
  constexpr double kActive = 1e-9;
  std::vector<double> knots{sol.grid.t0()};
  ControlTrajectory out;
  for (std::size_t k = 0; k < sol.steps(); ++k) {
    const auto& gamma = sol.gamma_traj[k];
    const auto& hull = sol.hulls[k];
    double active_mass = 0.0;
    for (double g : gamma)
      if (g > kActive) active_mass += g;
    const double t0 = sol.grid.time(k);
    const double t1 = sol.grid.time(k + 1);
    if (active_mass <= 0.0) {
      // Degenerate weights: hold the first vertex over the whole step.
      out.u.push_back(net.points[nearest_index(net, hull.generator_controls.front())]);
      knots.push_back(t1);
      continue;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < gamma.size(); ++i) {
      if (gamma[i] <= kActive) continue;
      acc += gamma[i];
      const double end = acc >= active_mass ? t1 : t0 + (t1 - t0) * (acc / active_mass);
      if (end <= knots.back()) continue;
      out.u.push_back(net.points[nearest_index(net, hull.generator_controls[i])]);
      knots.push_back(end);
    }
    knots.back() = t1;
  }
  out.grid = TimeGrid(std::move(knots));
  return out;
}

const char* to_string(SynthesisMethod m) {
  switch (m) {
    case SynthesisMethod::Nearest: return "nearest";
    case SynthesisMethod::Simple: return "simple";
    case SynthesisMethod::Baseline: return "baseline";
  }
  return "?";
}

SynthesisMethod parse_method(const std::string& name) {
  if (name == "nearest") return SynthesisMethod::Nearest;
  if (name == "simple") return SynthesisMethod::Simple;
  if (name == "baseline") return SynthesisMethod::Baseline;
  throw ConfigError("unknown synthesis method '" + name + "'");
}

SynthesisResult evaluate_control(const Problem& p, ControlTrajectory control,
                                 const std::optional<Reference>& ref,
                                 const IntegrateOptions& integration) {
  SynthesisResult r;
  r.control = std::move(control);
  r.x_sim = integrate(p, r.control, integration);
  r.metrics = metrics(p, r.control, r.x_sim, ref);
  r.total_cost = r.metrics.total_cost;
  return r;
}

SynthesisResult synthesize(const Problem& p, const LaxSolution& sol, const DeltaNet& net,
                           SynthesisMethod method, const IntegrateOptions& integration) {
  ControlTrajectory u;
  switch (method) {
    case SynthesisMethod::Nearest: u = nearest_vertex(p, sol, net); break;
    case SynthesisMethod::Simple: u = simple_function(p, nearest_vertex(p, sol, net), net); break;
    case SynthesisMethod::Baseline: u = baseline_interpolation(p, sol, net); break;
  }
  return evaluate_control(p, std::move(u), Reference{sol.grid, sol.x_traj}, integration);
}

}  // namespace laxsynth
