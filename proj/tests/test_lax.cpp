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
#include "laxsynth/sim.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <limits>
#include <random>

namespace laxsynth {
namespace {

Vec v(std::initializer_list<double> xs) {
  Vec out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

// Solved once per process; several tests inspect the same solution.
const LaxSolution& gear_coarse() {
  static const LaxSolution sol = solve_lax(gear_preset(0.05), LaxMode::hard());
  return sol;
}

// xdot = u with u in [0, 1], running cost u, terminal cost -2 x and
// x <= 10. The optimum u = 1 never approaches the bound.
Problem interior_problem() {
  Problem p;
  p.dynamics = StructuredDynamics(Mat::Zero(1, 1), [](double, const Vec& a) { return a; }, 1);
  p.cost = CostSpec::encoded(DiagQuadratic{}, [](double, const Vec& a) { return a[0]; },
                             DiagQuadratic{0.0, v({-2.0}), {}});
  p.controls = ControlSet::interval(0.0, 1.0);
  p.constraint = BoxConstraint{v({-10.0}), v({10.0})};
  p.grid = TimeGrid::uniform(0.0, 1.0, 10);
  p.x0 = v({0.0});
  return p;
}

TEST(Assemble, GearVariableCount) {
  const AssembledProgram a = assemble(gear_preset(0.01), LaxMode::hard());
  EXPECT_EQ(a.program.nvar, 4 * 101 + 3 * 100);
  EXPECT_EQ(a.index.slack_count, 0);
  std::string why;
  EXPECT_TRUE(a.program.is_valid(&why)) << why;
  for (const auto& h : a.hulls) EXPECT_EQ(h.size(), 3u);
}

TEST(Assemble, PenaltyAddsSlacks) {
  const AssembledProgram a = assemble(gear_preset(0.05), LaxMode::penalty(0.1));
  EXPECT_GT(a.index.slack_count, 0);
  EXPECT_EQ(a.program.nvar, 4 * 21 + 3 * 20 + a.index.slack_count);
}

TEST(Assemble, RejectsUnencodedCosts) {
  Problem p = gear_preset(0.05);
  p.cost.terminal_form.reset();
  EXPECT_THROW(assemble(p, LaxMode::hard()), UnsupportedCost);
  Problem q = gear_preset(0.05);
  q.cost.state_form = DiagQuadratic{0.0, {}, v({-1, 0, 0, 0})};
  EXPECT_THROW(assemble(q, LaxMode::hard()), UnsupportedCost);
}

TEST(Assemble, RejectsNonpositiveEpsilon) {
  EXPECT_THROW(assemble(gear_preset(0.05), LaxMode{LaxMode::Kind::Penalty, 0.0}), ConfigError);
}

TEST(SolveLax, SingleStepMatchesEnumeration) {
  Problem p = gear_preset();
  p.grid = TimeGrid::uniform(0.0, 1.0, 1);
  p.constraint = NoConstraint{};
  const Vec w = v({1.0, -2.0, 3.0, 0.5});
  p.cost = CostSpec::encoded(DiagQuadratic{}, p.cost.R, DiagQuadratic{0.0, w, {}});
  const LaxSolution sol = solve_lax(p, LaxMode::hard());
  ASSERT_TRUE(sol.ok());
  double best = std::numeric_limits<double>::infinity();
  for (const Vec& a : p.controls.sample(65)) {
    const Vec x1 = p.x0 + p.dynamics.f(0.0, p.x0, a);
    best = std::min(best, p.cost.R(0.0, a) + w.dot(x1));
  }
  EXPECT_NEAR(sol.objective, best, 1e-7);
}

TEST(SolveLax, ZeroHorizonIsTerminalCost) {
  Problem p = gear_preset();
  p.grid = TimeGrid::uniform(0.0, 0.0, 0);
  p.x0 = v({0.0, 0.0, 0.01, 0.0});
  const LaxSolution sol = solve_lax(p, LaxMode::hard());
  ASSERT_TRUE(sol.ok());
  EXPECT_NEAR(sol.objective, 10.0, 1e-9);
  EXPECT_EQ(sol.x_traj.size(), 1u);
  EXPECT_EQ(sol.steps(), 0u);
}

TEST(SolveLax, PenaltyInactiveInTheInterior) {
  const Problem p = interior_problem();
  const LaxSolution hard = solve_lax(p, LaxMode::hard());
  ASSERT_TRUE(hard.ok());
  EXPECT_NEAR(hard.objective, -1.0, 1e-6);
  for (double eps : {1.0, 0.1, 0.01, 0.001}) {
    const LaxSolution pen = solve_lax(p, LaxMode::penalty(eps));
    ASSERT_TRUE(pen.ok());
    EXPECT_NEAR(pen.objective, hard.objective, 1e-6) << eps;
  }
  const auto sweep = penalty_sweep(p, {1.0, 0.1, 0.01});
  for (const auto& pt : sweep) EXPECT_NEAR(pt.objective, hard.objective, 1e-6);
}

TEST(SolveLax, InfiniteEpsilonIsUnconstrained) {
  const LaxMode off = LaxMode::penalty(std::numeric_limits<double>::infinity());
  EXPECT_EQ(off.kind, LaxMode::Kind::Unconstrained);
  const Problem p = gear_preset(0.05);
  const LaxSolution a = solve_lax(p, off);
  const LaxSolution b = solve_lax(p, LaxMode::unconstrained());
  ASSERT_TRUE(a.ok());
  EXPECT_NEAR(a.objective, b.objective, 1e-9);
  EXPECT_LT(a.objective, gear_coarse().objective);
}

TEST(SolveLax, GearSolutionInvariants) {
  const Problem p = gear_preset(0.05);
  const LaxSolution& sol = gear_coarse();
  ASSERT_TRUE(sol.ok());
  EXPECT_EQ(sol.x_traj.size(), 21u);
  EXPECT_EQ(sol.gamma_traj.size(), 20u);
  const SolutionCheck c = check_solution(p, sol, LaxMode::hard(), 10);
  EXPECT_TRUE(c.ok()) << c.dynamics_gap << ' ' << c.gamma_sum_gap << ' ' << c.beta_gap << ' ' << c.hstar_gap;
  for (const Vec& x : sol.x_traj) EXPECT_LE(std::abs(x[1]), 0.1 + 1e-6);
  double total = p.cost.g(sol.x_traj.back());
  for (std::size_t k = 0; k < sol.steps(); ++k) total += sol.stage_cost(p, k) * sol.grid.step(k);
  EXPECT_NEAR(total, sol.objective, 1e-7);
}

TEST(SolveLax, FineGridRespectsTheStateBound) {
  const LaxSolution sol = solve_lax(gear_preset(0.01), LaxMode::hard());
  ASSERT_TRUE(sol.ok());
  for (const Vec& x : sol.x_traj) EXPECT_LE(std::abs(x[1]), 0.1 + 1e-6);
}

// Any admissible control, simulated with the same Euler step, is a feasible
// point of the discretized program.
TEST(SolveLax, LowerBoundsAdmissibleControls) {
  const Problem p = gear_preset(0.05);
  const double bound = gear_coarse().objective;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  IntegrateOptions euler;
  euler.scheme = Scheme::ForwardEuler;
  for (int trial = 0; trial < 20; ++trial) {
    ControlTrajectory u;
    u.grid = p.grid;
    const double cap = 0.1 * unit(rng);
    for (std::size_t k = 0; k < p.grid.steps(); ++k)
      u.u.push_back(v({unit(rng) < 0.5 ? 1.0 : 2.0, cap * unit(rng)}));
    const VecList x = integrate(p, u, euler);
    double worst = 0.0;
    for (const Vec& s : x) worst = std::max(worst, p.constraint.violation(s));
    ASSERT_EQ(worst, 0.0);
    EXPECT_GE(evaluate_cost(p, u, x), bound - 1e-4);
  }
}

TEST(SolveLax, PenaltySweepIsMonotone) {
  const Problem p = gear_preset(0.05);
  const auto sweep = penalty_sweep(p, {1.0, 0.1, 0.01, 0.001});
  ASSERT_EQ(sweep.size(), 4u);
  for (std::size_t i = 1; i < sweep.size(); ++i) EXPECT_GE(sweep[i].objective, sweep[i - 1].objective - 1e-6);
  for (const auto& pt : sweep) EXPECT_LE(pt.objective, gear_coarse().objective + 1e-6);
}

TEST(LaxCsv, RoundTrip) {
  const Problem p = gear_preset(0.05);
  const LaxSolution& sol = gear_coarse();
  const auto path = std::filesystem::temp_directory_path() / "laxsynth_test_lax.csv";
  write_lax_csv(sol, path.string());
  const LaxSolution back = read_lax_csv(path.string(), p);
  std::filesystem::remove(path);
  ASSERT_EQ(back.x_traj.size(), sol.x_traj.size());
  for (std::size_t k = 0; k < sol.x_traj.size(); ++k) EXPECT_EQ(back.x_traj[k], sol.x_traj[k]);
  for (std::size_t k = 0; k < sol.steps(); ++k) {
    EXPECT_EQ(back.beta_traj[k], sol.beta_traj[k]);
    EXPECT_EQ(back.gamma_traj[k], sol.gamma_traj[k]);
  }
  EXPECT_NEAR(back.objective, sol.objective, 1e-9);
}

}  // namespace
}  // namespace laxsynth
