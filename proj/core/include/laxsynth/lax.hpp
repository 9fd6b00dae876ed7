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
 * @brief Discretized Lagrangian (generalized Lax) program.
 *
 * On a grid t_0 < ... < t_K the value V(x0, t0) is approximated by
 *
 *   min  sum_k H*(t_k, x[k], beta[k]) dt_k + g(x[K])
 *   s.t. x[k+1] = x[k] - beta[k] dt_k,  beta[k] in Conv(B(x[k], t_k)),
 *        x[k] in closure(Omega),        x[0] = x0.
 *
 * For state-affine dynamics, beta[k] = -A x[k] + sum_i gamma[k][i] v_i with
 * v_i the vertices of the x-independent hull of {-h(t_k, a)}, so the
 * program is an LP/QP in (x, gamma). beta is eliminated.
 */

#include "laxsynth/conjugate.hpp"
#include "laxsynth/convexsolver.hpp"
#include "laxsynth/model.hpp"

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace laxsynth {

struct LaxMode {
  enum class Kind { Hard, Penalty, Unconstrained };

  Kind kind = Kind::Hard;
  double epsilon = std::numeric_limits<double>::infinity();

  static LaxMode hard() { return {Kind::Hard, std::numeric_limits<double>::infinity()}; }
  /// epsilon = +infinity switches the penalty off.
  static LaxMode penalty(double eps) {
    if (eps == std::numeric_limits<double>::infinity()) return unconstrained();
    return {Kind::Penalty, eps};
  }
  static LaxMode unconstrained() {
    return {Kind::Unconstrained, std::numeric_limits<double>::infinity()};
  }
};

const char* to_string(LaxMode::Kind k);

/// Positions of the decision variables inside the assembled program.
struct VariableIndex {
  int n = 0;
  int steps = 0;
  std::vector<int> gamma_offset;  ///< per step
  std::vector<int> gamma_count;   ///< per step
  int slack_offset = 0;
  int slack_count = 0;
  int total = 0;

  int x(int k, int i) const { return k * n + i; }
  int gamma(int k, int j) const { return gamma_offset[k] + j; }
};

struct AssembledProgram {
  convex::SparseConvexProgram program;
  VariableIndex index;
  std::vector<HullModel> hulls;  ///< x-independent hull per step
  LaxMode mode;
};

struct LaxOptions {
  HullSampling sampling;
  convex::SolveOptions solver;
};

/// Throws UnsupportedCost when S or g has no convex diagonal-quadratic
/// encoding.
AssembledProgram assemble(const Problem& p, LaxMode mode, const HullSampling& sampling = {});

struct LaxSolution {
  TimeGrid grid;
  VecList x_traj;                              ///< K + 1 states
  VecList beta_traj;                           ///< K velocities (negated)
  std::vector<std::vector<double>> gamma_traj; ///< K rows of hull weights
  std::vector<HullModel> hulls;                ///< K x-independent hulls
  double objective = 0.0;
  convex::SolveReport report;

  bool ok() const { return report.status == convex::SolveStatus::Optimal; }
  std::size_t steps() const { return beta_traj.size(); }
  /// sum_i gamma[k][i] R(t_k, a_i) + S(t_k, x[k]).
  double stage_cost(const Problem& p, std::size_t k) const;
};

LaxSolution solve_lax(const Problem& p, LaxMode mode, const LaxOptions& opts = {});

/// Rebuilds x, beta and gamma from a solved program.
LaxSolution extract_solution(const Problem& p, const AssembledProgram& assembled,
                             const convex::SolveReport& report);

struct SolutionCheck {
  double dynamics_gap = 0.0;       ///< max |x[k+1] - x[k] + beta[k] dt_k|
  double gamma_negativity = 0.0;   ///< max(0, -min gamma)
  double gamma_sum_gap = 0.0;      ///< max |sum gamma - 1|
  double beta_gap = 0.0;           ///< max |beta + A x + sum gamma h|
  double constraint_violation = 0.0;
  double hstar_gap = 0.0;          ///< max |stage cost - H*(t_k, x[k], beta[k])| on sampled steps

  bool ok(double tol = 1e-6, double hstar_tol = 1e-5) const {
    return dynamics_gap <= tol && gamma_negativity <= tol && gamma_sum_gap <= tol &&
           beta_gap <= tol && constraint_violation <= tol && hstar_gap <= hstar_tol;
  }
};

/// Checks the LaxSolution invariants; H* is recomputed on the full hull at
/// `hstar_samples` randomly chosen steps.
SolutionCheck check_solution(const Problem& p, const LaxSolution& sol, LaxMode mode,
                             int hstar_samples = 10, std::uint64_t seed = 3,
                             const HullSampling& sampling = {});

struct PenaltyPoint {
  double epsilon = 0.0;
  double objective = 0.0;
  convex::SolveStatus status = convex::SolveStatus::MaxIters;
};

std::vector<PenaltyPoint> penalty_sweep(const Problem& p, const std::vector<double>& epsilons,
                                        const LaxOptions& opts = {});

/// Columns t, x1..xn, beta1..betan, gamma1..gammaN; beta and gamma blank on
/// the last knot.
void write_lax_csv(const LaxSolution& sol, std::ostream& os);
void write_lax_csv(const LaxSolution& sol, const std::string& path);

/// Reads a solution written by write_lax_csv. Hulls are rebuilt from `p`
/// and the objective is re-evaluated from the trajectories.
LaxSolution read_lax_csv(const std::string& path, const Problem& p,
                         const HullSampling& sampling = {});

}  // namespace laxsynth
