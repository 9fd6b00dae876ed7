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
#include "laxsynth/sim.hpp"

#include "laxsynth/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

namespace laxsynth {

namespace {

Vec rk4_step(const Problem& p, double t, const Vec& x, double h,
             const std::function<Vec(double)>& u) {
  const auto& dyn = p.dynamics;
  const Vec k1 = dyn.f(t, x, u(t));
  const Vec k2 = dyn.f(t + 0.5 * h, x + 0.5 * h * k1, u(t + 0.5 * h));
  const Vec k3 = dyn.f(t + 0.5 * h, x + 0.5 * h * k2, u(t + 0.5 * h));
  const Vec k4 = dyn.f(t + h, x + h * k3, u(t + h));
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

VecList integrate(const Problem& p, const ControlTrajectory& u, const IntegrateOptions& opts) {
  VecList x{p.x0};
  const std::size_t K = u.steps();
  x.reserve(K + 1);
  for (std::size_t k = 0; k < K; ++k) {
    const double t0 = u.grid.time(k);
    const double dt = u.grid.step(k);
    const Vec& a = u.u[k];
    Vec state = x.back();
    if (opts.scheme == Scheme::ForwardEuler) {
      state += dt * p.dynamics.f(t0, state, a);
    } else {
      const int sub = std::max(1, opts.substeps);
      const double h = dt / sub;
      const std::function<Vec(double)> hold = [&a](double) { return a; };
      for (int s = 0; s < sub; ++s) state = rk4_step(p, t0 + s * h, state, h, hold);
    }
    x.push_back(std::move(state));
  }
  return x;
}

VecList integrate(const Problem& p, const std::function<Vec(double)>& u, const TimeGrid& grid,
                  int substeps) {
  VecList x{p.x0};
  const int sub = std::max(1, substeps);
  for (std::size_t k = 0; k < grid.steps(); ++k) {
    const double h = grid.step(k) / sub;
    Vec state = x.back();
    for (int s = 0; s < sub; ++s) state = rk4_step(p, grid.time(k) + s * h, state, h, u);
    x.push_back(std::move(state));
  }
  return x;
}

double evaluate_cost(const Problem& p, const ControlTrajectory& u, const VecList& x) {
  double cost = 0.0;
  for (std::size_t k = 0; k < u.steps(); ++k) {
    cost += p.running_cost(u.grid.time(k), x[k], u.u[k]) * u.grid.step(k);
  }
  return cost + p.cost.g(x.back());
}

double total_variation(const ControlTrajectory& u) {
  double tv = 0.0;
  for (std::size_t k = 0; k + 1 < u.u.size(); ++k) tv += (u.u[k + 1] - u.u[k]).lpNorm<1>();
  return tv;
}

MetricSet metrics(const Problem& p, const ControlTrajectory& u, const VecList& x,
                  const std::optional<Reference>& ref) {
  MetricSet m;
  m.total_cost = evaluate_cost(p, u, x);
  m.control_tv = total_variation(u);
  for (const auto& s : x) m.max_constraint_violation = std::max(m.max_constraint_violation, p.constraint.violation(s));
  if (ref) {
    // Knots are matched by time; both grids are increasing.
    std::size_t j = 0;
    const auto& knots = u.grid.knots();
    for (std::size_t k = 0; k < ref->states.size(); ++k) {
      const double t = ref->grid.time(k);
      while (j < knots.size() && knots[j] < t - 1e-12) ++j;
      if (j == knots.size()) break;
      if (std::abs(knots[j] - t) <= 1e-12) {
        m.tracking_error = std::max(m.tracking_error, (x[j] - ref->states[k]).norm());
      }
    }
  }
  return m;
}

void write_control_csv(const ControlTrajectory& u, std::ostream& os) {
  const int m = u.u.empty() ? 0 : static_cast<int>(u.u.front().size());
  std::vector<std::string> header{"t"};
  for (int j = 0; j < m; ++j) header.push_back("u" + std::to_string(j + 1));
  csv::write_row(os, header);
  for (std::size_t k = 0; k < u.steps(); ++k) {
    std::vector<std::string> row{csv::format_double(u.grid.time(k))};
    for (int j = 0; j < m; ++j) row.push_back(csv::format_double(u.u[k][j]));
    csv::write_row(os, row);
  }
}

void write_control_csv(const ControlTrajectory& u, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_control_csv(u, os);
}

ControlTrajectory read_control_csv(const std::string& path, double end_time) {
  const csv::Table table = csv::read_file(path);
  if (table.column("t") != 0) throw std::runtime_error("control csv: first column must be t");
  ControlTrajectory u;
  std::vector<double> knots;
  for (const auto& row : table.rows) {
    knots.push_back(csv::parse_double(row[0]));
    Vec a(static_cast<Eigen::Index>(row.size()) - 1);
    for (std::size_t j = 1; j < row.size(); ++j) a[j - 1] = csv::parse_double(row[j]);
    u.u.push_back(std::move(a));
  }
  knots.push_back(end_time);
  u.grid = TimeGrid(std::move(knots));
  return u;
}

void write_trajectory_csv(const ControlTrajectory& u, const VecList& x, std::ostream& os) {
  const int n = x.empty() ? 0 : static_cast<int>(x.front().size());
  const int m = u.u.empty() ? 0 : static_cast<int>(u.u.front().size());
  std::vector<std::string> header{"t"};
  for (int i = 0; i < n; ++i) header.push_back("x" + std::to_string(i + 1));
  for (int j = 0; j < m; ++j) header.push_back("u" + std::to_string(j + 1));
  csv::write_row(os, header);
  for (std::size_t k = 0; k < x.size(); ++k) {
    std::vector<std::string> row{csv::format_double(u.grid.time(k))};
    for (int i = 0; i < n; ++i) row.push_back(csv::format_double(x[k][i]));
    for (int j = 0; j < m; ++j) row.push_back(k < u.steps() ? csv::format_double(u.u[k][j]) : "");
    csv::write_row(os, row);
  }
}

void write_trajectory_csv(const ControlTrajectory& u, const VecList& x, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_trajectory_csv(u, x, os);
}

}  // namespace laxsynth
