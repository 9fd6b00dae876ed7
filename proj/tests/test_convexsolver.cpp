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
#include "laxsynth/convexsolver.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <sstream>

namespace laxsynth::convex {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SpMat sparse(const Mat& M) { return M.sparseView(); }

SparseConvexProgram program(const Mat& P, const Vec& q, const Mat& A, const Vec& l, const Vec& u) {
  SparseConvexProgram prog;
  prog.nvar = static_cast<int>(q.size());
  if (P.size() > 0) prog.P = sparse(P);
  prog.q = q;
  prog.A = sparse(A);
  prog.l = l;
  prog.u = u;
  return prog;
}

Vec scalar(double x) { return Vec::Constant(1, x); }

TEST(Solve, LpCorner) {
  const auto prog = program(Mat(), scalar(1.0), Mat::Identity(1, 1), scalar(0.0), scalar(1.0));
  const SolveReport r = solve(prog);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_NEAR(r.objective, 0.0, 1e-8);
  EXPECT_NEAR(r.z[0], 0.0, 1e-8);
}

TEST(Solve, UnconstrainedQuadratic) {
  SparseConvexProgram prog = program(Mat::Identity(1, 1), scalar(-1.0), Mat(0, 1), Vec(0), Vec(0));
  const SolveReport r = solve(prog);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_NEAR(r.z[0], 1.0, 1e-6);
  EXPECT_NEAR(r.objective, -0.5, 1e-8);
}

TEST(Solve, RedundantUpperBounds) {
  Mat A(2, 1);
  A << 1, 1;
  const auto prog = program(Mat(), scalar(-1.0), A, Vec::Constant(2, -kInf), Vec{{1.0, 0.5}});
  const SolveReport r = solve(prog);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_NEAR(r.z[0], 0.5, 1e-8);
  EXPECT_NEAR(r.objective, -0.5, 1e-8);
}

TEST(Solve, OptimalMeetsTolerances) {
  Mat A(2, 2);
  A << 1, 1, 1, -1;
  const auto prog = program(Mat::Identity(2, 2), Vec{{-1.0, -2.0}}, A, Vec{{-kInf, -1.0}}, Vec{{1.0, 1.0}});
  const SolveReport r = solve(prog);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  const Vec Az = prog.A * r.z;
  EXPECT_TRUE(((Az - prog.u).array() <= 1e-6).all());
  EXPECT_TRUE(((prog.l - Az).array() <= 1e-6).all());
  // min 1/2|z|^2 - z1 - 2 z2 on z1 + z2 <= 1: projection gives (0, 1).
  EXPECT_NEAR(r.z[0], 0.0, 1e-6);
  EXPECT_NEAR(r.z[1], 1.0, 1e-6);
}

TEST(Solve, ObjectiveConstantIsReported) {
  auto prog = program(Mat(), scalar(1.0), Mat::Identity(1, 1), scalar(2.0), scalar(3.0));
  prog.objective_constant = 10.0;
  EXPECT_NEAR(solve(prog).objective, 12.0, 1e-8);
}

TEST(Feasibility, Examples) {
  Mat A(2, 1);
  A << 1, 1;
  auto eq = [&](double target) {
    return program(Mat(), scalar(0.0), A, Vec{{target, 0.0}}, Vec{{target, 1.0}});
  };
  EXPECT_TRUE(std::holds_alternative<Feasible>(feasibility(eq(0.5))));
  EXPECT_TRUE(std::holds_alternative<Infeasible>(feasibility(eq(2.0))));
}

TEST(Feasibility, GearHullMembership) {
  // Weights over the triangle (0,0), (-1/4, 1/4), (-1/13, 2/13).
  Mat A(6, 3);
  A << 0, -0.25, -1.0 / 13, 0, 0.25, 2.0 / 13, 1, 1, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1;
  Vec l(6), u(6);
  l << -0.1, 0.11, 1, 0, 0, 0;
  u << -0.1, 0.11, 1, kInf, kInf, kInf;
  const auto res = feasibility(program(Mat(), Vec::Zero(3), A, l, u));
  ASSERT_TRUE(std::holds_alternative<Feasible>(res));
  const Vec& z = std::get<Feasible>(res).z;
  EXPECT_NEAR(z[1], 0.36, 1e-6);
  EXPECT_NEAR(z[2], 0.13, 1e-6);
}

struct RandomLp {
  Mat G;  // rows of G z <= h, box rows included
  Vec h;
  Vec c;
  SparseConvexProgram prog;
};

RandomLp random_lp(std::mt19937_64& rng, int n, int extra) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> pos(0.2, 1.0);
  RandomLp lp;
  lp.c.resize(n);
  for (int j = 0; j < n; ++j) lp.c[j] = normal(rng);
  Mat R(extra, n);
  Vec rb(extra);
  for (int i = 0; i < extra; ++i) {
    for (int j = 0; j < n; ++j) R(i, j) = normal(rng);
    rb[i] = pos(rng);
  }
  lp.G.resize(2 * n + extra, n);
  lp.G << Mat::Identity(n, n), -Mat::Identity(n, n), R;
  lp.h.resize(2 * n + extra);
  lp.h << Vec::Ones(2 * n), rb;

  Mat A(n + extra, n);
  A << Mat::Identity(n, n), R;
  Vec l(n + extra), u(n + extra);
  l << -Vec::Ones(n), Vec::Constant(extra, -kInf);
  u << Vec::Ones(n), rb;
  lp.prog = program(Mat(), lp.c, A, l, u);
  return lp;
}

TEST(SolveProperty, RandomLpsMatchVertexEnumeration) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 7;
    const RandomLp lp = random_lp(rng, n, 3);
    const auto ref = oracle::vertex_enumeration_lp(lp.G, lp.h, lp.c);
    ASSERT_TRUE(ref.has_value());
    const SolveReport r = solve(lp.prog);
    ASSERT_EQ(r.status, SolveStatus::Optimal) << "trial " << trial;
    EXPECT_LE(std::abs(r.objective - *ref), 1e-6 * std::max(1.0, std::abs(*ref))) << "trial " << trial;
  }
}

// Scaling q alone keeps the argmin; scaling (l, u) by c > 0 scales the
// feasible set and with it the argmin.
TEST(SolveProperty, ScalingBehaviour) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    const RandomLp lp = random_lp(rng, 3, 3);
    const SolveReport base = solve(lp.prog);
    ASSERT_EQ(base.status, SolveStatus::Optimal);
    const double c = 0.5 + trial;

    SparseConvexProgram q_scaled = lp.prog;
    q_scaled.q *= c;
    const SolveReport rq = solve(q_scaled);
    ASSERT_EQ(rq.status, SolveStatus::Optimal);
    EXPECT_LE((rq.z - base.z).norm(), 1e-6);

    SparseConvexProgram all = q_scaled;
    all.l *= c;
    all.u *= c;
    const SolveReport ra = solve(all);
    ASSERT_EQ(ra.status, SolveStatus::Optimal);
    EXPECT_LE((ra.z - c * base.z).norm(), 1e-6 * c);
  }
}

TEST(SolveProperty, ConstructedInfeasibleSystems) {
  std::mt19937_64 rng(107);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    RandomLp lp = random_lp(rng, n, 2);
    Vec a(n);
    for (int j = 0; j < n; ++j) a[j] = normal(rng);
    // a'z <= -1 together with a'z >= 1.
    const int m = lp.prog.ncon();
    Mat A = Mat(lp.prog.A);
    A.conservativeResize(m + 2, n);
    A.row(m) = a.transpose();
    A.row(m + 1) = a.transpose();
    Vec l = lp.prog.l, u = lp.prog.u;
    l.conservativeResize(m + 2);
    u.conservativeResize(m + 2);
    l[m] = -kInf;
    u[m] = -1.0;
    l[m + 1] = 1.0;
    u[m + 1] = kInf;
    const SolveReport r = solve(program(Mat(), lp.c, A, l, u));
    EXPECT_EQ(r.status, SolveStatus::PrimalInfeasible) << "trial " << trial;
  }
}

TEST(Program, Validation) {
  std::string why;
  auto ok = program(Mat::Identity(1, 1), scalar(0.0), Mat::Identity(1, 1), scalar(0.0), scalar(1.0));
  EXPECT_TRUE(ok.is_valid(&why));

  auto crossed = ok;
  crossed.l[0] = 2.0;
  EXPECT_FALSE(crossed.is_valid(&why));
  EXPECT_NE(why.find("l > u"), std::string::npos);

  auto indefinite = ok;
  indefinite.P = sparse(-Mat::Identity(1, 1));
  EXPECT_FALSE(indefinite.is_valid(&why));

  Mat asym(2, 2);
  asym << 1, 1, 0, 1;
  auto nonsym = program(asym, Vec::Zero(2), Mat::Identity(2, 2), Vec::Zero(2), Vec::Ones(2));
  EXPECT_FALSE(nonsym.is_valid(&why));

  auto short_q = ok;
  short_q.q = Vec(0);
  EXPECT_FALSE(short_q.is_valid());
}

TEST(Program, TextDumpHasAllSections) {
  const auto prog = program(Mat::Identity(2, 2), Vec{{1.0, 2.0}}, Mat::Identity(2, 2), Vec::Zero(2), Vec::Ones(2));
  std::ostringstream os;
  write_program(prog, os);
  const std::string text = os.str();
  for (const char* section : {"%% P", "%% q", "%% A", "%% l", "%% u"})
    EXPECT_NE(text.find(section), std::string::npos) << section;
  EXPECT_NE(text.find("2 2 2\n1 1 1\n2 2 1\n"), std::string::npos);
}

}  // namespace
}  // namespace laxsynth::convex
