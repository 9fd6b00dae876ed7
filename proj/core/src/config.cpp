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
#include "laxsynth/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace laxsynth {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ConfigError("config: " + what); }

const YAML::Node require(const YAML::Node& node, const char* key) {
  const YAML::Node v = node[key];
  if (!v) fail(std::string("missing key '") + key + "'");
  return v;
}

double as_double(const YAML::Node& node, const std::string& what) {
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    fail(what + " must be a number");
  }
}

/// Reads a sequence of numbers; null entries become `null_value`.
Vec as_vec(const YAML::Node& node, const std::string& what,
           double null_value = std::numeric_limits<double>::quiet_NaN()) {
  if (!node.IsSequence()) fail(what + " must be a list");
  Vec v(static_cast<Eigen::Index>(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (node[i].IsNull()) {
      if (std::isnan(null_value)) fail(what + " has a null entry");
      v[static_cast<Eigen::Index>(i)] = null_value;
    } else {
      v[static_cast<Eigen::Index>(i)] = as_double(node[i], what);
    }
  }
  return v;
}

Vec as_vec_sized(const YAML::Node& node, int size, const std::string& what) {
  Vec v = as_vec(node, what);
  if (v.size() != size) fail(what + " must have " + std::to_string(size) + " entries");
  return v;
}

Mat as_mat(const YAML::Node& node, int rows, int cols, const std::string& what) {
  if (!node.IsSequence() || static_cast<int>(node.size()) != rows) {
    fail(what + " must have " + std::to_string(rows) + " rows");
  }
  Mat M(rows, cols);
  for (int r = 0; r < rows; ++r) M.row(r) = as_vec_sized(node[r], cols, what).transpose();
  return M;
}

struct Monomial {
  Vec coef;  // length n for h, length 1 for R
  std::vector<int> powers;
};

std::vector<Monomial> as_polynomial(const YAML::Node& node, int coef_size, int m,
                                    const std::string& what) {
  if (!node.IsSequence()) fail(what + " must be a list of terms");
  std::vector<Monomial> terms;
  for (const auto& t : node) {
    Monomial mono;
    const YAML::Node c = require(t, "coef");
    mono.coef = c.IsSequence() ? as_vec_sized(c, coef_size, what + ".coef")
                               : Vec::Constant(1, as_double(c, what + ".coef"));
    if (mono.coef.size() != coef_size) fail(what + ".coef has the wrong size");
    const YAML::Node pw = t["powers"];
    mono.powers.assign(static_cast<std::size_t>(m), 0);
    if (pw) {
      if (!pw.IsSequence() || static_cast<int>(pw.size()) != m) {
        fail(what + ".powers must have " + std::to_string(m) + " entries");
      }
      for (int j = 0; j < m; ++j) {
        mono.powers[static_cast<std::size_t>(j)] = pw[j].as<int>();
        if (mono.powers[static_cast<std::size_t>(j)] < 0) fail(what + ".powers must be nonnegative");
      }
    }
    terms.push_back(std::move(mono));
  }
  return terms;
}

Vec eval_polynomial(const std::vector<Monomial>& terms, int size, const Vec& a) {
  Vec out = Vec::Zero(size);
  for (const auto& t : terms) {
    double w = 1.0;
    for (std::size_t j = 0; j < t.powers.size(); ++j) w *= std::pow(a[static_cast<Eigen::Index>(j)], t.powers[j]);
    out += w * t.coef;
  }
  return out;
}

DiagQuadratic as_quadratic(const YAML::Node& node, int n, const std::string& what) {
  DiagQuadratic q;
  if (!node || node.IsNull()) return q;
  if (!node.IsMap()) fail(what + " must be a map with constant/linear/quadratic");
  if (node["constant"]) q.constant = as_double(node["constant"], what + ".constant");
  if (node["linear"]) q.linear = as_vec_sized(node["linear"], n, what + ".linear");
  if (node["quadratic"]) q.quadratic = as_vec_sized(node["quadratic"], n, what + ".quadratic");
  return q;
}

ControlSet as_controls(const YAML::Node& node, const std::string& what) {
  const std::string type = require(node, "type").as<std::string>();
  if (type == "finite") {
    VecList pts;
    for (const auto& p : require(node, "points")) {
      pts.push_back(p.IsSequence() ? as_vec(p, what + ".points")
                                   : Vec::Constant(1, as_double(p, what + ".points")));
    }
    if (pts.empty()) fail(what + ": finite set without points");
    return ControlSet::finite(std::move(pts));
  }
  if (type == "box") {
    Vec lo = as_vec(require(node, "lo"), what + ".lo");
    Vec hi = as_vec(require(node, "hi"), what + ".hi");
    if (lo.size() != hi.size()) fail(what + ": lo and hi differ in size");
    return ControlSet::box(std::move(lo), std::move(hi));
  }
  if (type == "product") {
    std::vector<ControlSet> factors;
    for (const auto& f : require(node, "factors")) factors.push_back(as_controls(f, what + ".factors"));
    if (factors.empty()) fail(what + ": product without factors");
    return ControlSet::product(std::move(factors));
  }
  fail(what + ": unknown control set type '" + type + "'");
}

StateConstraint as_constraint(const YAML::Node& node, int n) {
  if (!node || node.IsNull()) return NoConstraint{};
  const std::string type = require(node, "type").as<std::string>();
  const double inf = std::numeric_limits<double>::infinity();
  if (type == "none") return NoConstraint{};
  if (type == "box") {
    Vec lo = node["lo"] ? as_vec(node["lo"], "constraint.lo", -inf) : Vec::Constant(n, -inf);
    Vec hi = node["hi"] ? as_vec(node["hi"], "constraint.hi", inf) : Vec::Constant(n, inf);
    if (lo.size() != n || hi.size() != n) fail("constraint bounds must have n entries");
    return BoxConstraint{std::move(lo), std::move(hi)};
  }
  if (type == "halfspace") {
    const YAML::Node normals = require(node, "normals");
    const int rows = static_cast<int>(normals.size());
    Mat N = as_mat(normals, rows, n, "constraint.normals");
    Vec off = as_vec_sized(require(node, "offsets"), rows, "constraint.offsets");
    return HalfspaceConstraint{std::move(N), std::move(off)};
  }
  fail("unknown constraint type '" + type + "'");
}

RunSettings as_run(const YAML::Node& node) {
  RunSettings r;
  if (!node) return r;
  if (!node.IsMap()) fail("run must be a map");
  if (node["dt"]) r.dt = as_double(node["dt"], "run.dt");
  if (node["delta"]) r.delta = as_double(node["delta"], "run.delta");
  if (node["mode"]) r.mode = node["mode"].as<std::string>();
  if (node["eps"]) r.epsilon = as_double(node["eps"], "run.eps");
  if (node["epsilons"]) {
    const Vec e = as_vec(node["epsilons"], "run.epsilons");
    r.epsilons = std::vector<double>(e.data(), e.data() + e.size());
  }
  if (node["method"]) r.method = node["method"].as<std::string>();
  if (node["out"]) r.out = node["out"].as<std::string>();
  if (node["net_file"]) r.net_file = node["net_file"].as<std::string>();
  if (node["net_points"]) r.net_points = node["net_points"].as<int>();
  if (node["seed"]) r.seed = node["seed"].as<std::uint64_t>();
  return r;
}

Problem custom_problem(const YAML::Node& root) {
  const int n = require(root, "n").as<int>();
  const int m = require(root, "m").as<int>();
  if (n <= 0 || m <= 0) fail("n and m must be positive");

  Problem p;
  const Mat A = root["A"] ? as_mat(root["A"], n, n, "A") : Mat::Zero(n, n);

  const YAML::Node h = require(root, "h");
  if (h["builtin"]) {
    if (h["builtin"].as<std::string>() != "gear" || n != 4 || m != 2) fail("h.builtin: only 'gear' with n=4, m=2");
    p.dynamics = StructuredDynamics(A, [](double, const Vec& a) {
      const double gain = a[1] / (1.0 + 3.0 * a[0] * a[0]);
      Vec v(4);
      v << 0.0, gain, 0.0, -a[0] * gain;
      return v;
    }, m);
  } else if (h["affine"]) {
    const Mat B = as_mat(require(h["affine"], "B"), n, m, "h.affine.B");
    const Vec c = h["affine"]["c"] ? as_vec_sized(h["affine"]["c"], n, "h.affine.c") : Vec::Zero(n);
    p.dynamics = StructuredDynamics(A, [B, c](double, const Vec& a) -> Vec { return B * a + c; }, m);
  } else if (h["polynomial"]) {
    auto terms = as_polynomial(h["polynomial"], n, m, "h.polynomial");
    p.dynamics = StructuredDynamics(
        A, [terms, n](double, const Vec& a) { return eval_polynomial(terms, n, a); }, m);
  } else {
    fail("h needs one of affine, polynomial, builtin");
  }

  ControlFn R;
  const YAML::Node r = root["R"];
  if (!r || r.IsNull()) {
    R = [](double, const Vec&) { return 0.0; };
  } else if (r["builtin"]) {
    if (r["builtin"].as<std::string>() != "gear" || m != 2) fail("R.builtin: only 'gear' with m=2");
    R = [](double, const Vec& a) { return a[1]; };
  } else if (r["polynomial"]) {
    auto terms = as_polynomial(r["polynomial"], 1, m, "R.polynomial");
    R = [terms](double, const Vec& a) { return eval_polynomial(terms, 1, a)[0]; };
  } else {
    fail("R needs polynomial or builtin");
  }
  p.cost = CostSpec::encoded(as_quadratic(root["S"], n, "S"), std::move(R),
                             as_quadratic(root["g"], n, "g"));

  p.controls = as_controls(require(root, "controls"), "controls");
  if (p.controls.dim() != m) fail("controls dimension differs from m");
  p.constraint = as_constraint(root["constraint"], n);

  const YAML::Node grid = require(root, "grid");
  const double t0 = grid["t0"] ? as_double(grid["t0"], "grid.t0") : 0.0;
  const double T = as_double(require(grid, "T"), "grid.T");
  if (grid["dt"]) {
    p.grid = TimeGrid::from_step(t0, T, as_double(grid["dt"], "grid.dt"));
  } else {
    const int steps = require(grid, "steps").as<int>();
    if (steps < 0) fail("grid.steps must be nonnegative");
    p.grid = TimeGrid::uniform(t0, T, static_cast<std::size_t>(steps));
  }
  p.x0 = root["x0"] ? as_vec_sized(root["x0"], n, "x0") : Vec::Zero(n);
  return p;
}

}  // namespace

LoadedConfig parse_config(const std::string& yaml_text) {
  LoadedConfig out;
  try {
    const YAML::Node root = YAML::Load(yaml_text);
    if (!root.IsMap()) fail("top level must be a map");
    out.run = as_run(root["run"]);
    if (root["builtin"]) {
      const std::string name = root["builtin"].as<std::string>();
      if (name != "gear") fail("unknown builtin '" + name + "'");
      out.problem = gear_preset(out.run.dt.value_or(0.01));
      out.source = "gear";
    } else {
      out.problem = custom_problem(root);
      out.source = "custom";
      if (out.run.dt) out.problem = with_step(std::move(out.problem), *out.run.dt);
    }
  } catch (const YAML::Exception& e) {
    fail(e.what());
  }
  return out;
}

LoadedConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

Problem with_step(Problem p, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  const double t0 = p.grid.knots().empty() ? 0.0 : p.grid.t0();
  const double T = p.grid.knots().empty() ? t0 : p.grid.T();
  p.grid = TimeGrid::from_step(t0, T, dt);
  return p;
}

}  // namespace laxsynth
