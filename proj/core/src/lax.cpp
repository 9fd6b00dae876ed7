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
#include "laxsynth/lax.hpp"

#include "laxsynth/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>

namespace laxsynth {

namespace {

using Triplet = Eigen::Triplet<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();

class RowBuilder {
 public:
  int add(double lo, double hi) {
    l_.push_back(lo);
    u_.push_back(hi);
    return rows_++;
  }
  void coef(int row, int col, double v) {
    if (v != 0.0) trip_.emplace_back(row, col, v);
  }
  convex::SpMat matrix(int ncols) const {
    convex::SpMat A(rows_, ncols);
    A.setFromTriplets(trip_.begin(), trip_.end());
    return A;
  }
  Vec lower() const { return Eigen::Map<const Vec>(l_.data(), rows_); }
  Vec upper() const { return Eigen::Map<const Vec>(u_.data(), rows_); }

 private:
  int rows_ = 0;
  std::vector<Triplet> trip_;
  std::vector<double> l_, u_;
};

void add_quadratic(const DiagQuadratic& form, double weight, int offset, int n,
                   std::vector<Triplet>& P, Vec& q, double& constant) {
  constant += weight * form.constant;
  if (form.linear.size() > 0) {
    if (form.linear.size() != n) throw UnsupportedCost("linear cost term has the wrong length");
    q.segment(offset, n) += weight * form.linear;
  }
  if (form.quadratic.size() > 0) {
    if (form.quadratic.size() != n) throw UnsupportedCost("quadratic cost term has the wrong length");
    for (int i = 0; i < n; ++i)
      if (form.quadratic[i] != 0.0) P.emplace_back(offset + i, offset + i, weight * form.quadratic[i]);
  }
}

// Control hulls for every step; consecutive steps with identical sampled
// vertex data share the pruned hull.
std::vector<HullModel> step_hulls(const Problem& p, const HullSampling& sampling) {
  const std::size_t K = p.grid.steps();
  std::vector<HullModel> hulls;
  hulls.reserve(K);
  const VecList controls = p.controls.sample(sampling.interval_samples);
  VecList prev_vertices;
  std::vector<double> prev_costs;
  for (std::size_t k = 0; k < K; ++k) {
    const double t = p.grid.time(k);
    VecList vertices;
    std::vector<double> costs;
    for (const auto& a : controls) {
      vertices.push_back(-p.dynamics.h(t, a));
      costs.push_back(p.cost.R(t, a));
    }
    bool same = k > 0 && costs == prev_costs;
    for (std::size_t i = 0; same && i < vertices.size(); ++i) same = vertices[i] == prev_vertices[i];
    if (same) {
      hulls.push_back(hulls.back());
    } else {
      hulls.push_back(prune_hull(Vec::Zero(p.dynamics.n()), vertices, costs, controls));
    }
    prev_vertices = std::move(vertices);
    prev_costs = std::move(costs);
  }
  return hulls;
}

}  // namespace

const char* to_string(LaxMode::Kind k) {
  switch (k) {
    case LaxMode::Kind::Hard: return "hard";
    case LaxMode::Kind::Penalty: return "penalty";
    case LaxMode::Kind::Unconstrained: return "unconstrained";
  }
  return "unknown";
}

AssembledProgram assemble(const Problem& p, LaxMode mode, const HullSampling& sampling) {
  if (!p.cost.state_form || !p.cost.terminal_form) {
    throw UnsupportedCost("S and g need a diagonal-quadratic encoding");
  }
  if (!p.cost.state_form->is_convex() || !p.cost.terminal_form->is_convex()) {
    throw UnsupportedCost("S and g encodings must be convex");
  }
  if (mode.kind == LaxMode::Kind::Penalty && !(mode.epsilon > 0.0)) {
    throw ConfigError("penalty epsilon must be positive");
  }

  const int n = p.dynamics.n();
  const int K = static_cast<int>(p.grid.steps());
  const Mat& A = p.dynamics.A();

  AssembledProgram out;
  out.mode = mode;
  out.hulls = step_hulls(p, sampling);

  VariableIndex& idx = out.index;
  idx.n = n;
  idx.steps = K;
  int next = (K + 1) * n;
  for (int k = 0; k < K; ++k) {
    idx.gamma_offset.push_back(next);
    idx.gamma_count.push_back(static_cast<int>(out.hulls[k].size()));
    next += idx.gamma_count.back();
  }

  const bool penalize = mode.kind == LaxMode::Kind::Penalty && !p.constraint.is_none();
  const bool hard = mode.kind == LaxMode::Kind::Hard && !p.constraint.is_none();

  // Slack layout for the penalty: per stage, one per finite bound side or
  // per halfspace.
  struct SlackTerm {
    int coord;     // state coordinate for box bounds, -1 for halfspaces
    int row;       // halfspace row
    bool upper;
    double bound;
  };
  std::vector<SlackTerm> slack_terms;
  if (penalize) {
    if (const auto* box = std::get_if<BoxConstraint>(&p.constraint.variant())) {
      for (int j = 0; j < n; ++j) {
        if (std::isfinite(box->hi[j])) slack_terms.push_back({j, -1, true, box->hi[j]});
        if (std::isfinite(box->lo[j])) slack_terms.push_back({j, -1, false, box->lo[j]});
      }
    } else if (const auto* hs = std::get_if<HalfspaceConstraint>(&p.constraint.variant())) {
      for (int r = 0; r < hs->offsets.size(); ++r) slack_terms.push_back({-1, r, true, hs->offsets[r]});
    }
  }
  idx.slack_offset = next;
  idx.slack_count = penalize ? K * static_cast<int>(slack_terms.size()) : 0;
  next += idx.slack_count;
  idx.total = next;

  RowBuilder rows;
  // x[0] = x0
  for (int i = 0; i < n; ++i) rows.coef(rows.add(p.x0[i], p.x0[i]), idx.x(0, i), 1.0);

  // x[k+1] - (I + dt A) x[k] + dt sum_j gamma_j v_j = 0
  for (int k = 0; k < K; ++k) {
    const double dt = p.grid.step(k);
    const HullModel& hull = out.hulls[k];
    for (int i = 0; i < n; ++i) {
      const int r = rows.add(0.0, 0.0);
      rows.coef(r, idx.x(k + 1, i), 1.0);
      rows.coef(r, idx.x(k, i), -1.0);
      for (int j = 0; j < n; ++j) rows.coef(r, idx.x(k, j), -dt * A(i, j));
      for (int v = 0; v < idx.gamma_count[k]; ++v) rows.coef(r, idx.gamma(k, v), dt * hull.vertices[v][i]);
    }
  }
  // Simplex rows.
  for (int k = 0; k < K; ++k) {
    const int r = rows.add(1.0, 1.0);
    for (int v = 0; v < idx.gamma_count[k]; ++v) rows.coef(r, idx.gamma(k, v), 1.0);
  }
  for (int k = 0; k < K; ++k)
    for (int v = 0; v < idx.gamma_count[k]; ++v) rows.coef(rows.add(0.0, kInf), idx.gamma(k, v), 1.0);

  if (hard) {
    for (int k = 0; k <= K; ++k) {
      if (const auto* box = std::get_if<BoxConstraint>(&p.constraint.variant())) {
        for (int j = 0; j < n; ++j) {
          if (!std::isfinite(box->lo[j]) && !std::isfinite(box->hi[j])) continue;
          rows.coef(rows.add(box->lo[j], box->hi[j]), idx.x(k, j), 1.0);
        }
      } else if (const auto* hs = std::get_if<HalfspaceConstraint>(&p.constraint.variant())) {
        for (int r = 0; r < hs->offsets.size(); ++r) {
          const int row = rows.add(-kInf, hs->offsets[r]);
          for (int j = 0; j < n; ++j) rows.coef(row, idx.x(k, j), hs->normals(r, j));
        }
      }
    }
  }

  Vec q = Vec::Zero(idx.total);
  std::vector<Triplet> P;
  double constant = 0.0;

  if (penalize) {
    const auto* hs = std::get_if<HalfspaceConstraint>(&p.constraint.variant());
    int s = idx.slack_offset;
    for (int k = 0; k < K; ++k) {
      for (const auto& term : slack_terms) {
        // upper: a'x - s <= bound ; lower: x_j + s >= bound ; s >= 0
        if (term.coord >= 0) {
          const int r = term.upper ? rows.add(-kInf, term.bound) : rows.add(term.bound, kInf);
          rows.coef(r, idx.x(k, term.coord), 1.0);
          rows.coef(r, s, term.upper ? -1.0 : 1.0);
        } else {
          const int r = rows.add(-kInf, term.bound);
          for (int j = 0; j < n; ++j) rows.coef(r, idx.x(k, j), hs->normals(term.row, j));
          rows.coef(r, s, -1.0);
        }
        rows.coef(rows.add(0.0, kInf), s, 1.0);
        q[s] += p.grid.step(k) / mode.epsilon;
        ++s;
      }
    }
  }

  for (int k = 0; k < K; ++k) {
    const double dt = p.grid.step(k);
    add_quadratic(*p.cost.state_form, dt, idx.x(k, 0), n, P, q, constant);
    for (int v = 0; v < idx.gamma_count[k]; ++v) q[idx.gamma(k, v)] += dt * out.hulls[k].vertex_costs[v];
  }
  add_quadratic(*p.cost.terminal_form, 1.0, idx.x(K, 0), n, P, q, constant);

  convex::SparseConvexProgram& prog = out.program;
  prog.nvar = idx.total;
  prog.P = convex::SpMat(idx.total, idx.total);
  prog.P.setFromTriplets(P.begin(), P.end());
  prog.q = q;
  prog.A = rows.matrix(idx.total);
  prog.l = rows.lower();
  prog.u = rows.upper();
  prog.objective_constant = constant;
  return out;
}

double LaxSolution::stage_cost(const Problem& p, std::size_t k) const {
  double c = p.cost.S(grid.time(k), x_traj[k]);
  for (std::size_t v = 0; v < gamma_traj[k].size(); ++v) c += gamma_traj[k][v] * hulls[k].vertex_costs[v];
  return c;
}

LaxSolution extract_solution(const Problem& p, const AssembledProgram& assembled,
                             const convex::SolveReport& report) {
  const VariableIndex& idx = assembled.index;
  const int n = idx.n;
  const int K = idx.steps;
  LaxSolution sol;
  sol.grid = p.grid;
  sol.hulls = assembled.hulls;
  sol.report = report;
  sol.objective = report.objective;
  for (int k = 0; k <= K; ++k) sol.x_traj.push_back(report.z.segment(idx.x(k, 0), n));
  for (int k = 0; k < K; ++k) {
    std::vector<double> gamma(idx.gamma_count[k]);
    Vec mix = Vec::Zero(n);
    for (int v = 0; v < idx.gamma_count[k]; ++v) {
      gamma[v] = report.z[idx.gamma(k, v)];
      mix += gamma[v] * assembled.hulls[k].vertices[v];
    }
    sol.beta_traj.push_back(-(p.dynamics.A() * sol.x_traj[k]) + mix);
    sol.gamma_traj.push_back(std::move(gamma));
  }
  return sol;
}

LaxSolution solve_lax(const Problem& p, LaxMode mode, const LaxOptions& opts) {
  const AssembledProgram assembled = assemble(p, mode, opts.sampling);
  const convex::SolveReport report = convex::solve(assembled.program, opts.solver);
  return extract_solution(p, assembled, report);
}

SolutionCheck check_solution(const Problem& p, const LaxSolution& sol, LaxMode mode,
                             int hstar_samples, std::uint64_t seed, const HullSampling& sampling) {
  SolutionCheck c;
  const std::size_t K = sol.steps();
  for (std::size_t k = 0; k < K; ++k) {
    const double dt = sol.grid.step(k);
    c.dynamics_gap = std::max(
        c.dynamics_gap, (sol.x_traj[k + 1] - sol.x_traj[k] + sol.beta_traj[k] * dt).cwiseAbs().maxCoeff());
    double sum = 0.0;
    Vec mix = Vec::Zero(p.dynamics.n());
    for (std::size_t v = 0; v < sol.gamma_traj[k].size(); ++v) {
      const double g = sol.gamma_traj[k][v];
      c.gamma_negativity = std::max(c.gamma_negativity, -g);
      sum += g;
      mix += g * p.dynamics.h(sol.grid.time(k), sol.hulls[k].generator_controls[v]);
    }
    c.gamma_sum_gap = std::max(c.gamma_sum_gap, std::abs(sum - 1.0));
    c.beta_gap = std::max(
        c.beta_gap, (sol.beta_traj[k] + p.dynamics.A() * sol.x_traj[k] + mix).cwiseAbs().maxCoeff());
  }
  if (mode.kind == LaxMode::Kind::Hard) {
    for (const auto& x : sol.x_traj) c.constraint_violation = std::max(c.constraint_violation, p.constraint.violation(x));
  }
  if (K > 0 && hstar_samples > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, K - 1);
    for (int s = 0; s < hstar_samples; ++s) {
      const std::size_t k = pick(rng);
      const double t = sol.grid.time(k);
      const HullModel full = sample_hull(p, t, sol.x_traj[k], sampling);
      const auto h = hstar(full, sol.beta_traj[k]);
      const double stage = sol.stage_cost(p, k);
      c.hstar_gap = std::max(c.hstar_gap, h.value.is_finite() ? std::abs(stage - h.value.value()) : kInf);
    }
  }
  return c;
}

std::vector<PenaltyPoint> penalty_sweep(const Problem& p, const std::vector<double>& epsilons,
                                        const LaxOptions& opts) {
  std::vector<PenaltyPoint> out;
  for (double eps : epsilons) {
    const LaxSolution sol = solve_lax(p, LaxMode::penalty(eps), opts);
    out.push_back({eps, sol.objective, sol.report.status});
  }
  return out;
}

void write_lax_csv(const LaxSolution& sol, std::ostream& os) {
  const int n = sol.x_traj.empty() ? 0 : static_cast<int>(sol.x_traj.front().size());
  std::size_t N = 0;
  for (const auto& g : sol.gamma_traj) N = std::max(N, g.size());
  std::vector<std::string> header{"t"};
  for (int i = 0; i < n; ++i) header.push_back("x" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) header.push_back("beta" + std::to_string(i + 1));
  for (std::size_t i = 0; i < N; ++i) header.push_back("gamma" + std::to_string(i + 1));
  csv::write_row(os, header);
  for (std::size_t k = 0; k < sol.x_traj.size(); ++k) {
    std::vector<std::string> row{csv::format_double(sol.grid.time(k))};
    for (int i = 0; i < n; ++i) row.push_back(csv::format_double(sol.x_traj[k][i]));
    const bool stage = k < sol.beta_traj.size();
    for (int i = 0; i < n; ++i) row.push_back(stage ? csv::format_double(sol.beta_traj[k][i]) : "");
    for (std::size_t v = 0; v < N; ++v) {
      row.push_back(stage && v < sol.gamma_traj[k].size() ? csv::format_double(sol.gamma_traj[k][v]) : "");
    }
    csv::write_row(os, row);
  }
}

void write_lax_csv(const LaxSolution& sol, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_lax_csv(sol, os);
}

LaxSolution read_lax_csv(const std::string& path, const Problem& p, const HullSampling& sampling) {
  const csv::Table table = csv::read_file(path);
  const int n = p.dynamics.n();
  if (table.column("t") != 0 || table.column("x" + std::to_string(n)) < 0 ||
      table.column("beta" + std::to_string(n)) < 0) {
    throw std::runtime_error("lax csv: unexpected header in " + path);
  }
  LaxSolution sol;
  std::vector<double> knots;
  const int beta0 = 1 + n;
  const int gamma0 = 1 + 2 * n;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    knots.push_back(csv::parse_double(row[0]));
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = csv::parse_double(row[1 + i]);
    sol.x_traj.push_back(x);
    if (r + 1 == table.rows.size()) break;
    Vec beta(n);
    for (int i = 0; i < n; ++i) beta[i] = csv::parse_double(row[beta0 + i]);
    sol.beta_traj.push_back(beta);
    std::vector<double> gamma;
    for (std::size_t c = gamma0; c < row.size() && !row[c].empty(); ++c) gamma.push_back(csv::parse_double(row[c]));
    sol.gamma_traj.push_back(std::move(gamma));
  }
  sol.grid = TimeGrid(std::move(knots));
  Problem regridded = p;
  regridded.grid = sol.grid;
  sol.hulls = step_hulls(regridded, sampling);
  for (std::size_t k = 0; k < sol.gamma_traj.size(); ++k) {
    if (sol.gamma_traj[k].size() != sol.hulls[k].size()) {
      throw std::runtime_error("lax csv: gamma width does not match the problem's hull");
    }
  }
  double obj = p.cost.g(sol.x_traj.back());
  for (std::size_t k = 0; k < sol.steps(); ++k) obj += sol.stage_cost(regridded, k) * sol.grid.step(k);
  sol.objective = obj;
  sol.report.status = convex::SolveStatus::Optimal;
  sol.report.objective = obj;
  return sol;
}

}  // namespace laxsynth
