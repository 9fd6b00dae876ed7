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
#include "laxsynth/cli.hpp"

#include "laxsynth/conjugate.hpp"
#include "laxsynth/convexsolver.hpp"
#include "laxsynth/sim.hpp"
#include "laxsynth/synth.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace laxsynth::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kPresetDelta = 0.02;
constexpr int kPresetNetPoints = 50;

/// A finite-or-null JSON number.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v[i]));
  return a;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << j.dump(2) << '\n';
}

fs::path out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out);
  fs::create_directories(dir);
  return dir;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

Vec to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

LaxSolution obtain_solution(const RunConfig& cfg, const Problem& p) {
  if (cfg.lax_file) return read_lax_csv(*cfg.lax_file, p);
  return solve_lax(p, resolve_mode(cfg));
}

json metrics_json(const MetricSet& m) {
  return {{"total_cost", number(m.total_cost)},
          {"control_tv", number(m.control_tv)},
          {"max_constraint_violation", number(m.max_constraint_violation)},
          {"tracking_error", number(m.tracking_error)}};
}

// --- invariant suites used by `check` -------------------------------------

struct SuiteResult {
  std::string name;
  bool pass = false;
  json detail;
};

convex::SparseConvexProgram membership_program(const HullModel& hull, const Vec& b) {
  const int n = hull.dim();
  const int N = static_cast<int>(hull.size());
  convex::SparseConvexProgram prog;
  prog.nvar = N;
  prog.P = convex::SpMat(N, N);
  prog.q = Vec::Zero(N);
  std::vector<Eigen::Triplet<double>> trip;
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < n; ++i)
      if (hull.vertices[j][i] != 0.0) trip.emplace_back(i, j, hull.vertices[j][i]);
    trip.emplace_back(n, j, 1.0);
    trip.emplace_back(n + 1 + j, j, 1.0);
  }
  prog.A = convex::SpMat(n + 1 + N, N);
  prog.A.setFromTriplets(trip.begin(), trip.end());
  prog.l = Vec(n + 1 + N);
  prog.u = Vec(n + 1 + N);
  prog.l.head(n) = b;
  prog.u.head(n) = b;
  prog.l[n] = prog.u[n] = 1.0;
  prog.l.tail(N).setZero();
  prog.u.tail(N).setConstant(std::numeric_limits<double>::infinity());
  return prog;
}

/// Random query points for a hull: half are random convex combinations of
/// the vertices, half are drawn from a padded bounding box of the hull's
/// affine span, with a few pushed off the span.
VecList hull_queries(const HullModel& hull, int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const SearchBox box = SearchBox::bounding(hull);
  const Vec pad = 0.25 * (box.hi - box.lo) + Vec::Constant(box.lo.size(), 1e-3);
  VecList out;
  for (int s = 0; s < count; ++s) {
    if (s % 2 == 0) {
      Vec w(static_cast<Eigen::Index>(hull.size()));
      for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = -std::log(1.0 - unit(rng));
      w /= w.sum();
      Vec b = Vec::Zero(hull.dim());
      for (std::size_t i = 0; i < hull.size(); ++i) b += w[static_cast<Eigen::Index>(i)] * hull.vertices[i];
      out.push_back(b);
    } else {
      Vec b(hull.dim());
      for (int i = 0; i < hull.dim(); ++i) {
        const bool flat = box.hi[i] - box.lo[i] <= 0.0;
        if (flat && s % 10 != 1) b[i] = box.lo[i];
        else b[i] = box.lo[i] - pad[i] + unit(rng) * (box.hi[i] - box.lo[i] + 2.0 * pad[i]);
      }
      out.push_back(b);
    }
  }
  return out;
}

SuiteResult suite_dichotomy(const Problem& p, std::uint64_t seed) {
  const HullModel hull = sample_control_hull(p, p.grid.t0());
  std::mt19937_64 rng(seed);
  int disagreements = 0, finite = 0;
  const VecList queries = hull_queries(hull, 1000, rng);
  for (const Vec& b : queries) {
    const bool is_finite = hstar(hull, b).value.is_finite();
    const bool member =
        std::holds_alternative<convex::Feasible>(convex::feasibility(membership_program(hull, b)));
    finite += is_finite;
    if (is_finite != member) ++disagreements;
  }
  return {"hstar dichotomy", disagreements == 0,
          {{"samples", queries.size()}, {"finite", finite}, {"disagreements", disagreements}}};
}

SuiteResult suite_biconjugacy(const Problem& p, std::uint64_t seed) {
  const HullModel hull = sample_control_hull(p, p.grid.t0());
  const ConjugateTable table = tabulate_hstar(hull, SearchBox::bounding(hull), 101);
  std::mt19937_64 rng(seed + 1);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  double worst = 0.0;
  bool pass = true;
  for (int s = 0; s < 100; ++s) {
    Vec q(hull.dim());
    for (int i = 0; i < q.size(); ++i) q[i] = coord(rng);
    const double gap = std::abs(biconjugate(table, q) - hamiltonian(hull, q));
    const double bound = 2.0 * table.resolution * q.norm() + 1e-6;
    worst = std::max(worst, gap / bound);
    if (gap > bound) pass = false;
  }
  return {"biconjugacy", pass, {{"worst_gap_over_bound", worst}, {"resolution", table.resolution}}};
}

std::vector<SuiteResult> suite_net(const Problem& p, const DeltaNet& net) {
  const NetCheck c = check_net(p.controls, net);
  json detail{{"delta", net.delta},
              {"points", net.size()},
              {"min_separation", number(c.min_separation)},
              {"covering_radius", number(c.covering_radius)},
              {"members", c.members}};
  return {{"delta-net packing", c.packing && c.members, detail},
          {"delta-net covering", c.covering, detail}};
}

SuiteResult suite_penalty(const Problem& p, const std::vector<double>& epsilons) {
  const auto sweep = penalty_sweep(p, epsilons);
  bool pass = true;
  json rows = json::array();
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    if (sweep[i].status != convex::SolveStatus::Optimal) pass = false;
    if (i > 0 && sweep[i].objective < sweep[i - 1].objective - 1e-6) pass = false;
    rows.push_back({{"epsilon", sweep[i].epsilon},
                    {"objective", number(sweep[i].objective)},
                    {"status", convex::to_string(sweep[i].status)}});
  }
  return {"penalty monotonicity", pass, {{"sweep", rows}}};
}

/// Synthesis gap: simulated (forward Euler, matching the relaxed
/// discretization) cost of the nearest-vertex control minus the relaxed
/// objective, for each delta. Returns the least-squares slope through the
/// origin alongside the gaps.
struct TrendFit {
  std::vector<double> deltas;
  std::vector<double> gaps;
  double slope = 0.0;
  bool pass = false;
};

TrendFit synthesis_gap_trend(const Problem& p, const LaxSolution& sol, const std::vector<double>& deltas) {
  TrendFit fit;
  fit.deltas = deltas;
  IntegrateOptions euler;
  euler.scheme = Scheme::ForwardEuler;
  double num = 0.0, den = 0.0;
  for (double d : deltas) {
    const DeltaNet net = build_net(p.controls, d);
    const SynthesisResult r = synthesize(p, sol, net, SynthesisMethod::Nearest, euler);
    const double gap = std::abs(r.total_cost - sol.objective);
    fit.gaps.push_back(gap);
    num += gap * d;
    den += d * d;
  }
  fit.slope = den > 0.0 ? num / den : 0.0;
  fit.pass = fit.slope > 0.0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (fit.gaps[i] > 1.5 * fit.slope * deltas[i]) fit.pass = false;
  }
  return fit;
}

}  // namespace

json to_json(const RunConfig& cfg) {
  json j{{"source", cfg.config_path ? *cfg.config_path : cfg.preset},
         {"mode", cfg.mode},
         {"method", cfg.method},
         {"out", cfg.out},
         {"seed", cfg.seed},
         {"closed_loop", cfg.closed_loop}};
  j["dt"] = cfg.dt ? json(*cfg.dt) : json(nullptr);
  j["delta"] = cfg.delta ? json(*cfg.delta) : json(nullptr);
  j["epsilon"] = cfg.mode == "penalty" ? json(cfg.epsilon) : json(nullptr);
  j["epsilons"] = cfg.epsilons;
  j["lax_file"] = cfg.lax_file ? json(*cfg.lax_file) : json(nullptr);
  j["net_file"] = cfg.net_file ? json(*cfg.net_file) : json(nullptr);
  j["net_points"] = cfg.net_points ? json(*cfg.net_points) : json(nullptr);
  return j;
}

Problem resolve_problem(const RunConfig& cfg) {
  Problem p;
  if (cfg.config_path) {
    p = load_config(*cfg.config_path).problem;
  } else if (cfg.preset == "gear") {
    p = gear_preset(cfg.dt.value_or(0.01));
  } else {
    throw ConfigError("unknown preset '" + cfg.preset + "'");
  }
  if (cfg.dt) p = with_step(std::move(p), *cfg.dt);
  const ValidationReport report = validate(p);
  if (!report.valid()) {
    std::string msg = "invalid problem:";
    for (const auto& issue : report.issues) msg += " " + issue.message + ";";
    throw ConfigError(msg);
  }
  return p;
}

LaxMode resolve_mode(const RunConfig& cfg) {
  if (cfg.mode == "hard") return LaxMode::hard();
  if (cfg.mode == "unconstrained") return LaxMode::unconstrained();
  if (cfg.mode == "penalty") {
    if (!(cfg.epsilon > 0.0)) throw ConfigError("--eps must be positive");
    return LaxMode::penalty(cfg.epsilon);
  }
  throw ConfigError("unknown mode '" + cfg.mode + "'");
}

DeltaNet resolve_net(const RunConfig& cfg, const Problem& p) {
  const bool preset_default = !cfg.config_path && !cfg.delta && !cfg.net_points;
  const double delta = cfg.delta.value_or(kPresetDelta);
  if (!(delta > 0.0)) throw ConfigError("--delta must be positive");
  if (cfg.net_file) return read_net_csv(*cfg.net_file, delta);
  if (cfg.net_points) return uniform_net(p.controls, delta, *cfg.net_points);
  if (preset_default) return uniform_net(p.controls, delta, kPresetNetPoints);
  return build_net(p.controls, delta);
}

int cmd_solve(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = out_dir(cfg);
  json summary{{"config", to_json(cfg)}};
  try {
    const Problem p = resolve_problem(cfg);
    const auto start = std::chrono::steady_clock::now();
    const LaxSolution sol = solve_lax(p, resolve_mode(cfg));
    const double ms = elapsed_ms(start);
    summary["objective"] = number(sol.objective);
    summary["status"] = convex::to_string(sol.report.status);
    summary["iterations"] = sol.report.iterations;
    summary["wall_ms"] = ms;
    summary["primal_residual"] = number(sol.report.primal_residual);
    summary["dual_residual"] = number(sol.report.dual_residual);
    summary["polished"] = sol.report.polished;
    summary["steps"] = sol.steps();
    write_lax_csv(sol, (dir / "lax_solution.csv").string());
    write_json(dir / "summary.json", summary);
    log << "objective " << std::setprecision(10) << sol.objective << " ("
        << convex::to_string(sol.report.status) << ", " << ms << " ms)\n";
    return sol.ok() ? kOk : kFailure;
  } catch (const ConfigError& e) {
    summary["objective"] = nullptr;
    summary["status"] = "config_error";
    summary["iterations"] = 0;
    summary["wall_ms"] = 0.0;
    summary["error"] = {{"kind", "config"}, {"message", e.what()}};
    write_json(dir / "summary.json", summary);
    throw;
  }
}

int cmd_synthesize(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = out_dir(cfg);
  const Problem p = resolve_problem(cfg);
  const SynthesisMethod method = parse_method(cfg.method);
  const DeltaNet net = resolve_net(cfg, p);
  if (!verify(p.controls, net)) {
    log << "error: control net fails delta-net verification\n";
    return kFailure;
  }
  const LaxSolution sol = obtain_solution(cfg, p);
  if (!cfg.lax_file && !sol.ok()) {
    log << "error: relaxed solve ended with status " << convex::to_string(sol.report.status) << '\n';
    return kFailure;
  }
  ControlTrajectory u;
  switch (method) {
    case SynthesisMethod::Nearest: u = nearest_vertex(p, sol, net, cfg.closed_loop); break;
    case SynthesisMethod::Simple:
      u = simple_function(p, nearest_vertex(p, sol, net, cfg.closed_loop), net);
      break;
    case SynthesisMethod::Baseline: u = baseline_interpolation(p, sol, net); break;
  }
  const SynthesisResult r = evaluate_control(p, std::move(u), Reference{sol.grid, sol.x_traj});
  write_control_csv(r.control, (dir / "control.csv").string());
  write_trajectory_csv(r.control, r.x_sim, (dir / "sim_trajectory.csv").string());
  json m = metrics_json(r.metrics);
  m["method"] = to_string(method);
  m["lax_objective"] = number(sol.objective);
  m["delta"] = net.delta;
  m["net_size"] = net.size();
  m["config"] = to_json(cfg);
  write_json(dir / "metrics.json", m);
  log << to_string(method) << ": cost " << std::setprecision(10) << r.total_cost << ", tv "
      << r.metrics.control_tv << ", max violation " << r.metrics.max_constraint_violation << '\n';
  return kOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = out_dir(cfg);
  std::vector<double> dts = cfg.dt ? std::vector<double>{*cfg.dt} : cfg.dts;

  struct Row {
    double dt = 0.0;
    double objective = 0.0, lax_ms = 0.0;
    std::string status;
    SynthesisResult nearest, baseline;
    double nearest_ms = 0.0, baseline_ms = 0.0;
  };
  auto run_one = [&cfg](double dt) {
    RunConfig local = cfg;
    local.dt = dt;
    const Problem p = resolve_problem(local);
    const DeltaNet net = resolve_net(local, p);
    Row row;
    row.dt = dt;
    auto start = std::chrono::steady_clock::now();
    const LaxSolution sol = solve_lax(p, resolve_mode(local));
    row.lax_ms = elapsed_ms(start);
    row.objective = sol.objective;
    row.status = convex::to_string(sol.report.status);
    const Reference ref{sol.grid, sol.x_traj};
    start = std::chrono::steady_clock::now();
    row.nearest = evaluate_control(p, nearest_vertex(p, sol, net), ref);
    row.nearest_ms = row.lax_ms + elapsed_ms(start);
    start = std::chrono::steady_clock::now();
    row.baseline = evaluate_control(p, baseline_interpolation(p, sol, net), ref);
    row.baseline_ms = row.lax_ms + elapsed_ms(start);
    return row;
  };
  std::vector<std::future<Row>> jobs;
  for (double dt : dts) jobs.push_back(std::async(std::launch::async, run_one, dt));
  std::vector<Row> rows;
  for (auto& j : jobs) rows.push_back(j.get());

  std::ofstream csv(dir / "compare.csv", std::ios::binary);
  csv << "dt,lagrangian_objective,status,nearest_cost,baseline_cost,nearest_tv,baseline_tv,"
         "lagrangian_ms,nearest_ms,baseline_ms\n";
  std::ofstream md(dir / "compare.md", std::ios::binary);
  md << "| dt | Lagrangian objective | nearest-vertex cost | baseline cost | nearest TV | baseline TV "
        "| solve + nearest (ms) | solve + baseline (ms) |\n"
     << "|---|---|---|---|---|---|---|---|\n";
  md << std::fixed;
  bool ok = true;
  for (const Row& r : rows) {
    ok = ok && r.status == "optimal";
    csv << r.dt << ',' << std::setprecision(10) << r.objective << ',' << r.status << ','
        << r.nearest.total_cost << ',' << r.baseline.total_cost << ',' << r.nearest.metrics.control_tv
        << ',' << r.baseline.metrics.control_tv << ',' << r.lax_ms << ',' << r.nearest_ms << ','
        << r.baseline_ms << '\n';
    md << "| " << std::setprecision(2) << r.dt << " | " << std::setprecision(4) << r.objective << " | "
       << r.nearest.total_cost << " | " << r.baseline.total_cost << " | " << std::setprecision(3)
       << r.nearest.metrics.control_tv << " | " << r.baseline.metrics.control_tv << " | "
       << std::setprecision(1) << r.nearest_ms << " | " << r.baseline_ms << " |\n";
  }
  md << "\nThe Lagrangian objective is the optimum of the discretized relaxed program. Costs of the\n"
        "synthesized controls are simulated (RK4, piecewise-constant controls, left-endpoint running\n"
        "cost). The baseline column is a stand-in, not the original prior method: it realizes each\n"
        "step's relaxed hull weights by splitting the step into sub-intervals proportional to the\n"
        "weights (chattering realization), so its costs are for a qualitative contrast only.\n";
  log << "wrote " << (dir / "compare.md").string() << '\n';
  return ok ? kOk : kFailure;
}

int cmd_check(const RunConfig& cfg, std::ostream& log) {
  for (std::size_t i = 1; i < cfg.epsilons.size(); ++i) {
    if (!(cfg.epsilons[i] < cfg.epsilons[i - 1])) {
      throw ConfigError("epsilon list must be strictly decreasing");
    }
  }
  for (double e : cfg.epsilons)
    if (!(e > 0.0)) throw ConfigError("epsilon list entries must be positive");
  const fs::path dir = out_dir(cfg);
  const Problem p = resolve_problem(cfg);
  const DeltaNet net = resolve_net(cfg, p);

  std::vector<SuiteResult> results;
  results.push_back(suite_dichotomy(p, cfg.seed));
  results.push_back(suite_biconjugacy(p, cfg.seed));
  for (auto& r : suite_net(p, net)) results.push_back(std::move(r));
  results.push_back(suite_penalty(p, cfg.epsilons));
  {
    const LaxSolution sol = solve_lax(p, LaxMode::hard());
    const TrendFit fit = synthesis_gap_trend(p, sol, {0.2, 0.1, 0.05, 0.02});
    results.push_back({"synthesis gap trend", fit.pass && sol.ok(),
                       {{"deltas", fit.deltas}, {"gaps", fit.gaps}, {"slope", fit.slope}}});
  }

  json report{{"config", to_json(cfg)}, {"suites", json::array()}};
  std::vector<std::string> failed;
  for (const auto& r : results) {
    report["suites"].push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    log << (r.pass ? "PASS " : "FAIL ") << r.name << '\n';
    if (!r.pass) failed.push_back(r.name);
  }
  report["failed"] = failed;
  report["pass"] = failed.empty();
  write_json(dir / "check_report.json", report);
  return failed.empty() ? kOk : kFailure;
}

int cmd_conjugate_eval(const RunConfig& cfg, std::ostream& log) {
  const Problem p = resolve_problem(cfg);
  const int n = p.dynamics.n();
  const Vec x = cfg.x.empty() ? Vec(p.x0) : to_vec(cfg.x);
  if (x.size() != n) throw ConfigError("--x must have n entries");
  const HullModel hull = sample_hull(p, cfg.t, x);
  json j{{"t", cfg.t}, {"x", to_json(x)}, {"vertices", hull.size()}};
  if (!cfg.b.empty()) {
    const Vec b = to_vec(cfg.b);
    if (b.size() != n) throw ConfigError("--b must have n entries");
    const ConjugateValue v = hstar(hull, b);
    j["b"] = to_json(b);
    j["finite"] = v.value.is_finite();
    j["hstar"] = v.value.is_finite() ? json(v.value.value()) : json(nullptr);
    if (v.combination) j["weights"] = v.combination->weights;
  }
  if (!cfg.p.empty()) {
    const Vec q = to_vec(cfg.p);
    if (q.size() != n) throw ConfigError("--p must have n entries");
    j["hamiltonian"] = hamiltonian(hull, q);
  }
  log << j.dump(2) << '\n';
  return kOk;
}

int cmd_net_build(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = out_dir(cfg);
  const Problem p = resolve_problem(cfg);
  const DeltaNet net = resolve_net(cfg, p);
  const NetCheck c = check_net(p.controls, net);
  write_net_csv(net, (dir / "net.csv").string());
  json j{{"delta", net.delta},
         {"points", net.size()},
         {"packing", c.packing},
         {"covering", c.covering},
         {"members", c.members},
         {"ok", c.ok()},
         {"min_separation", number(c.min_separation)},
         {"covering_radius", number(c.covering_radius)}};
  write_json(dir / "net_check.json", j);
  log << "net of " << net.size() << " points, " << (c.ok() ? "verified" : "NOT a delta-net") << '\n';
  return c.ok() ? kOk : kFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lagrangian solver and controller synthesis for state-constrained optimal control"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string config_path;
  double dt = 0.0, delta = 0.0;
  int net_points = 0;
  std::string lax_file, net_file;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--preset", cfg.preset, "builtin problem")->check(CLI::IsMember({"gear"}));
    sub->add_option("--config", config_path, "YAML problem/run config");
    sub->add_option("--dt", dt, "uniform time step (must divide the horizon)");
    sub->add_option("--delta", delta, "net radius");
    sub->add_option("--net-points", net_points, "uniform net samples per interval");
    sub->add_option("--net-file", net_file, "net CSV to use instead of building one");
    sub->add_option("--mode", cfg.mode, "state-constraint treatment")
        ->check(CLI::IsMember({"hard", "penalty", "unconstrained"}));
    sub->add_option("--eps", cfg.epsilon, "penalty weight parameter");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
  };
  auto* solve = app.add_subcommand("solve", "solve the discretized relaxed program");
  auto* synth = app.add_subcommand("synthesize", "synthesize an admissible control");
  auto* compare = app.add_subcommand("compare", "nearest-vertex vs baseline over several steps");
  auto* check = app.add_subcommand("check", "run the invariant suites");
  auto* conj = app.add_subcommand("conjugate-eval", "evaluate H* and H pointwise");
  auto* netb = app.add_subcommand("net-build", "build and verify a control net");
  for (auto* s : {solve, synth, compare, check, conj, netb}) common(s);
  synth->add_option("--method", cfg.method, "synthesis method")
      ->check(CLI::IsMember({"nearest", "simple", "baseline"}));
  synth->add_option("--lax", lax_file, "existing lax_solution.csv");
  synth->add_flag("--closed-loop", cfg.closed_loop, "use simulated states in the projection");
  compare->add_option("--dts", cfg.dts, "steps to compare");
  check->add_option("--epsilons", cfg.epsilons, "strictly decreasing penalty parameters");
  conj->add_option("--t", cfg.t, "time");
  conj->add_option("--x", cfg.x, "state")->expected(-1);
  conj->add_option("--b", cfg.b, "negated velocity")->expected(-1);
  conj->add_option("--p", cfg.p, "costate for the Hamiltonian")->expected(-1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (!config_path.empty()) {
      cfg.config_path = config_path;
      const RunSettings run = load_config(config_path).run;
      if (run.dt) cfg.dt = run.dt;
      if (run.delta) cfg.delta = run.delta;
      if (run.mode) cfg.mode = *run.mode;
      if (run.epsilon) cfg.epsilon = *run.epsilon;
      if (run.epsilons) cfg.epsilons = *run.epsilons;
      if (run.method) cfg.method = *run.method;
      if (run.out) cfg.out = *run.out;
      if (run.net_file) cfg.net_file = run.net_file;
      if (run.net_points) cfg.net_points = run.net_points;
      if (run.seed) cfg.seed = *run.seed;
      // Explicit flags win over the file.
      for (auto* s : {solve, synth, compare, check, conj, netb}) {
        if (!s->parsed()) continue;
        if (s->count("--mode")) s->get_option("--mode")->results(cfg.mode);
        if (s->count("--eps")) s->get_option("--eps")->results(cfg.epsilon);
        if (s->count("--out")) s->get_option("--out")->results(cfg.out);
        if (s->count("--seed")) s->get_option("--seed")->results(cfg.seed);
        if (s == synth && s->count("--method")) s->get_option("--method")->results(cfg.method);
        if (s == check && s->count("--epsilons")) s->get_option("--epsilons")->results(cfg.epsilons);
      }
    }
    auto sub = app.get_subcommands().front();
    if (sub->count("--dt")) cfg.dt = dt;
    if (sub->count("--delta")) cfg.delta = delta;
    if (sub->count("--net-points")) cfg.net_points = net_points;
    if (!lax_file.empty()) cfg.lax_file = lax_file;
    if (!net_file.empty()) cfg.net_file = net_file;

    if (solve->parsed()) return cmd_solve(cfg, out);
    if (synth->parsed()) return cmd_synthesize(cfg, out);
    if (compare->parsed()) return cmd_compare(cfg, out);
    if (check->parsed()) return cmd_check(cfg, out);
    if (conj->parsed()) return cmd_conjugate_eval(cfg, out);
    if (netb->parsed()) return cmd_net_build(cfg, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DegenerateDelta& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace laxsynth::cli
