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
// Acceptance gate. Each criterion prints one PASS or FAIL line followed by
// indented detail lines; the exit status is nonzero when any criterion fails.

#include "laxsynth/conjugate.hpp"
#include "laxsynth/convexsolver.hpp"
#include "laxsynth/lax.hpp"
#include "laxsynth/net.hpp"
#include "laxsynth/sim.hpp"
#include "laxsynth/synth.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace laxsynth;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = false;
  std::vector<std::string> detail;
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

Vec v(std::initializer_list<double> xs) {
  Vec out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

DeltaNet preset_net(const Problem& p) { return uniform_net(p.controls, 0.02, 50); }

const LaxSolution& gear_solution_fine() {
  static const LaxSolution sol = solve_lax(gear_preset(0.01), LaxMode::hard());
  return sol;
}

Outcome gear_objectives() {
  Outcome o{true, {}};
  const std::vector<std::pair<double, double>> targets{{0.05, -88.5358}, {0.02, -90.7164}, {0.01, -90.7164}};
  for (const auto& [dt, target] : targets) {
    const auto start = std::chrono::steady_clock::now();
    const LaxSolution sol = solve_lax(gear_preset(dt), LaxMode::hard());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = sol.ok() && std::abs(sol.objective - target) <= 0.05 && secs < 10.0;
    o.pass = o.pass && ok;
    o.detail.push_back(fmt("dt=%.2f objective=%.6f target=%.4f |diff|=%.4f status=%s time=%.2fs %s", dt,
                           sol.objective, target, std::abs(sol.objective - target),
                           convex::to_string(sol.report.status), secs, ok ? "ok" : "outside"));
  }
  return o;
}

Outcome hstar_linearity() {
  const HullModel h = sample_control_hull(gear_preset(), 0.0);
  std::mt19937_64 rng(2024);
  std::exponential_distribution<double> e(1.0);
  double worst = 0.0;
  for (int s = 0; s < 1000; ++s) {
    Vec b = Vec::Zero(4);
    double tot = 0.0;
    std::vector<double> w(h.size());
    for (auto& x : w) tot += (x = e(rng));
    for (std::size_t i = 0; i < h.size(); ++i) b += (w[i] / tot) * h.vertices[i];
    const ConjugateValue c = hstar(h, b);
    const double err = c.value.is_finite() ? std::abs(c.value.value() - (5 * b[1] + 9 * b[3])) : kInf;
    worst = std::max(worst, err);
  }
  return {worst <= 1e-6, {fmt("hull vertices=%zu max |H* - (5 b2 + 9 b4)|=%.3e over 1000 points", h.size(), worst)}};
}

bool member(const HullModel& h, const Vec& b) {
  const int d = h.dim();
  const int N = static_cast<int>(h.size());
  Mat A = Mat::Zero(d + 1 + N, N);
  for (int i = 0; i < N; ++i) {
    A.block(0, i, d, 1) = h.vertices[static_cast<std::size_t>(i)];
    A(d, i) = 1.0;
    A(d + 1 + i, i) = 1.0;
  }
  Vec l(d + 1 + N), u(d + 1 + N);
  l << b, 1.0, Vec::Zero(N);
  u << b, 1.0, Vec::Constant(N, kInf);
  convex::SparseConvexProgram prog;
  prog.nvar = N;
  prog.q = Vec::Zero(N);
  prog.A = A.sparseView();
  prog.l = l;
  prog.u = u;
  return std::holds_alternative<convex::Feasible>(convex::feasibility(prog));
}

// Half of the queries are convex combinations of the vertices pushed off by
// a small random offset, so that both sides of the boundary are well
// represented; the rest are uniform over a box around the hull.
Outcome hstar_dichotomy() {
  const HullModel h = sample_hull(gear_preset(), 0.3, v({0.01, 0.04, -0.02, -0.05}));
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> box(-0.35, 0.35), unit(0.0, 1.0), nudge(-0.02, 0.02);
  int agree = 0, finite = 0;
  for (int s = 0; s < 1000; ++s) {
    Vec b = h.base;
    if (s % 2 == 0) {
      double tot = 0.0;
      std::vector<double> w(h.size());
      for (auto& x : w) tot += (x = unit(rng));
      for (std::size_t i = 0; i < h.size(); ++i) b = b + (w[i] / tot) * (h.vertices[i] - h.base);
      b[1] += nudge(rng);
      b[3] += nudge(rng);
    } else {
      b[1] += box(rng);
      b[3] += box(rng);
    }
    if (s % 8 == 0) {
      b[0] += nudge(rng);
      b[2] += nudge(rng);
    }
    const bool f = hstar(h, b).value.is_finite();
    finite += f;
    agree += (f == member(h, b));
  }
  return {agree == 1000, {fmt("agreement %d/1000, finite %d", agree, finite)}};
}

Outcome biconjugacy() {
  const HullModel h = sample_control_hull(gear_preset(), 0.0);
  const ConjugateTable table = tabulate_hstar(h, SearchBox::bounding(h), 101);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> c(-10.0, 10.0);
  double worst_ratio = 0.0, worst_gap = 0.0;
  bool pass = true;
  for (int s = 0; s < 100; ++s) {
    Vec p(4);
    for (int i = 0; i < 4; ++i) p[i] = c(rng);
    const double gap = std::abs(biconjugate(table, p) - hamiltonian(h, p));
    const double bound = 2 * table.resolution * p.norm() + 1e-6;
    pass = pass && gap <= bound;
    worst_gap = std::max(worst_gap, gap);
    worst_ratio = std::max(worst_ratio, gap / bound);
  }
  return {pass, {fmt("grid resolution %.4g, max gap %.3e, max gap/bound %.3f", table.resolution, worst_gap, worst_ratio)}};
}

Outcome state_feasibility() {
  const Problem p = gear_preset(0.01);
  const LaxSolution& sol = gear_solution_fine();
  Outcome o{sol.ok(), {}};
  for (auto m : {SynthesisMethod::Nearest, SynthesisMethod::Simple}) {
    const SynthesisResult r = synthesize(p, sol, preset_net(p), m);
    double worst = 0.0;
    for (const Vec& x : r.x_sim) worst = std::max(worst, std::abs(x[1]));
    o.pass = o.pass && worst <= 0.1 + 1e-3;
    o.detail.push_back(fmt("%s: max |x2| = %.6f", to_string(m), worst));
  }
  return o;
}

Outcome chattering() {
  const Problem p = gear_preset(0.01);
  const LaxSolution& sol = gear_solution_fine();
  const DeltaNet net = preset_net(p);
  const double tv_n = synthesize(p, sol, net, SynthesisMethod::Nearest).metrics.control_tv;
  const double tv_b = synthesize(p, sol, net, SynthesisMethod::Baseline).metrics.control_tv;
  return {sol.ok() && tv_n <= 0.25 * tv_b,
          {fmt("TV nearest %.4f, TV baseline %.4f, ratio %.4f (bar 0.25)", tv_n, tv_b, tv_b > 0 ? tv_n / tv_b : kInf)}};
}

Outcome synthesis_gap_trend() {
  const Problem p = gear_preset(0.01);
  const LaxSolution& sol = gear_solution_fine();
  const std::vector<double> deltas{0.2, 0.1, 0.05, 0.02};
  IntegrateOptions euler;
  euler.scheme = Scheme::ForwardEuler;
  std::vector<double> gaps;
  double num = 0.0, den = 0.0;
  for (double d : deltas) {
    const DeltaNet net = build_net(p.controls, d);
    const double gap = std::abs(synthesize(p, sol, net, SynthesisMethod::Nearest, euler).total_cost - sol.objective);
    gaps.push_back(gap);
    num += gap * d;
    den += d * d;
  }
  const double c = num / den;
  Outcome o{sol.ok() && c > 0.0, {fmt("least-squares slope c = %.4f", c)}};
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const bool ok = gaps[i] <= 1.5 * c * deltas[i];
    o.pass = o.pass && ok;
    o.detail.push_back(fmt("delta=%.2f gap=%.6f envelope 1.5*c*delta=%.6f %s", deltas[i], gaps[i],
                           1.5 * c * deltas[i], ok ? "ok" : "exceeds"));
  }
  return o;
}

Outcome penalty_convergence() {
  const Problem p = gear_preset(0.01);
  const double hard = gear_solution_fine().objective;
  const auto sweep = penalty_sweep(p, {1.0, 0.1, 0.01, 0.001});
  Outcome o{gear_solution_fine().ok(), {fmt("hard objective %.6f", hard)}};
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    const bool mono = i == 0 || sweep[i].objective >= sweep[i - 1].objective - 1e-6;
    o.pass = o.pass && mono && sweep[i].status == convex::SolveStatus::Optimal;
    o.detail.push_back(fmt("eps=%g objective=%.6f %s", sweep[i].epsilon, sweep[i].objective,
                           mono ? "monotone" : "NOT monotone"));
  }
  const double last = std::abs(sweep.back().objective - hard);
  o.pass = o.pass && last <= 0.5;
  o.detail.push_back(fmt("|objective(eps=1e-3) - hard| = %.4f (bar 0.5)", last));
  return o;
}

Outcome solver_oracle() {
  std::mt19937_64 rng(4242);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> pos(0.2, 1.0);
  int matched = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 6;
    const int extra = 4;
    Vec c(n);
    for (int j = 0; j < n; ++j) c[j] = normal(rng);
    Mat R(extra, n);
    Vec rb(extra);
    for (int i = 0; i < extra; ++i) {
      for (int j = 0; j < n; ++j) R(i, j) = normal(rng);
      rb[i] = pos(rng);
    }
    Mat G(2 * n + extra, n);
    G << Mat::Identity(n, n), -Mat::Identity(n, n), R;
    Vec h(2 * n + extra);
    h << Vec::Ones(2 * n), rb;
    Mat A(n + extra, n);
    A << Mat::Identity(n, n), R;
    Vec l(n + extra), u(n + extra);
    l << -Vec::Ones(n), Vec::Constant(extra, -kInf);
    u << Vec::Ones(n), rb;
    convex::SparseConvexProgram prog;
    prog.nvar = n;
    prog.q = c;
    prog.A = A.sparseView();
    prog.l = l;
    prog.u = u;
    const auto ref = oracle::vertex_enumeration_lp(G, h, c);
    const convex::SolveReport r = convex::solve(prog);
    if (!ref || r.status != convex::SolveStatus::Optimal) continue;
    const double rel = std::abs(r.objective - *ref) / std::max(1.0, std::abs(*ref));
    worst = std::max(worst, rel);
    matched += rel <= 1e-6;
  }
  return {matched == 50, {fmt("matched %d/50, max relative error %.3e", matched, worst)}};
}

Outcome net_definition() {
  const ControlSet U = ControlSet::product({ControlSet::finite({v({1.0}), v({2.0})}), ControlSet::interval(0.0, 1.0)});
  Outcome o{true, {}};
  for (double d : {0.5, 0.1, 0.02}) {
    const DeltaNet net = build_net(U, d);
    const NetCheck c = check_net(U, net);
    o.pass = o.pass && c.ok();
    o.detail.push_back(fmt("delta=%.2f points=%zu min separation=%.4f covering radius=%.4f %s", d, net.size(),
                           c.min_separation, c.covering_radius, c.ok() ? "verified" : "rejected"));
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"gear relaxed objective at dt 0.05, 0.02, 0.01 within 0.05", gear_objectives},
      {"gear H* linear on the hull (1000 points, 1e-6)", hstar_linearity},
      {"H* finite exactly on the hull (1000 points)", hstar_dichotomy},
      {"biconjugate recovers the Hamiltonian (100 costates)", biconjugacy},
      {"synthesized gear trajectory keeps |x2| <= 0.1 + 1e-3", state_feasibility},
      {"nearest-vertex TV <= 0.25 x baseline TV at dt 0.01", chattering},
      {"synthesis cost gap under a linear-in-delta envelope", synthesis_gap_trend},
      {"penalty sweep monotone and eps=1e-3 within 0.5 of hard", penalty_convergence},
      {"ADMM matches vertex enumeration on 50 random LPs", solver_oracle},
      {"delta-net build then verify for delta 0.5, 0.1, 0.02", net_definition},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, {std::string("exception: ") + e.what()}};
    }
    failures += !o.pass;
    std::printf("%s  %s\n", o.pass ? "PASS" : "FAIL", name);
    for (const auto& line : o.detail) std::printf("      %s\n", line.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
