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
#include "laxsynth/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace laxsynth {

// ---------------------------------------------------------------- TimeGrid

TimeGrid TimeGrid::uniform(double t0, double T, std::size_t steps) {
  std::vector<double> knots(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    knots[k] = steps == 0 ? t0 : t0 + (T - t0) * static_cast<double>(k) / steps;
  }
  if (steps > 0) knots.back() = T;
  return TimeGrid(std::move(knots));
}

TimeGrid TimeGrid::from_step(double t0, double T, double dt) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  const double ratio = (T - t0) / dt;
  const double steps = std::round(ratio);
  if (ratio < -1e-9 || std::abs(ratio - steps) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream os;
    os << "time step " << dt << " does not divide the horizon [" << t0 << ", " << T << "]";
    throw ConfigError(os.str());
  }
  return uniform(t0, T, static_cast<std::size_t>(steps));
}

bool TimeGrid::strictly_increasing() const {
  if (knots_.empty()) return false;
  for (std::size_t k = 0; k + 1 < knots_.size(); ++k) {
    if (!(knots_[k + 1] > knots_[k])) return false;
  }
  return true;
}

// -------------------------------------------------------------- ControlSet

ControlSet ControlSet::interval(double lo, double hi) {
  return box(Vec::Constant(1, lo), Vec::Constant(1, hi));
}

int ControlSet::dim() const {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FiniteSet>) {
          return s.points.empty() ? 0 : static_cast<int>(s.points.front().size());
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          return static_cast<int>(s.lo.size());
        } else {
          int d = 0;
          for (const auto& f : s.factors) d += f.dim();
          return d;
        }
      },
      set_);
}

bool ControlSet::empty() const {
  return std::visit(
      [](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FiniteSet>) {
          return s.points.empty();
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          if (s.lo.size() != s.hi.size()) return true;
          return (s.lo.array() > s.hi.array()).any();
        } else {
          if (s.factors.empty()) return true;
          return std::any_of(s.factors.begin(), s.factors.end(),
                             [](const ControlSet& f) { return f.empty(); });
        }
      },
      set_);
}

bool ControlSet::contains(const Vec& a, double tol) const {
  if (a.size() != dim()) return false;
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FiniteSet>) {
          return std::any_of(s.points.begin(), s.points.end(), [&](const Vec& p) {
            return (p - a).cwiseAbs().maxCoeff() <= tol;
          });
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          return ((a.array() >= s.lo.array() - tol) && (a.array() <= s.hi.array() + tol)).all();
        } else {
          Eigen::Index offset = 0;
          for (const auto& f : s.factors) {
            const int d = f.dim();
            if (!f.contains(a.segment(offset, d), tol)) return false;
            offset += d;
          }
          return true;
        }
      },
      set_);
}

namespace {

VecList cartesian(const std::vector<VecList>& parts) {
  VecList out{Vec(0)};
  for (const auto& part : parts) {
    VecList next;
    next.reserve(out.size() * part.size());
    for (const auto& prefix : out) {
      for (const auto& p : part) {
        Vec v(prefix.size() + p.size());
        v << prefix, p;
        next.push_back(std::move(v));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

VecList ControlSet::sample(int interval_samples) const {
  if (empty()) throw EmptyControlSet("control set is empty");
  return std::visit(
      [&](const auto& s) -> VecList {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FiniteSet>) {
          return s.points;
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          std::vector<VecList> axes;
          for (Eigen::Index j = 0; j < s.lo.size(); ++j) {
            VecList axis;
            const double lo = s.lo[j];
            const double hi = s.hi[j];
            const int count = (hi > lo) ? std::max(2, interval_samples) : 1;
            for (int i = 0; i < count; ++i) {
              const double v = count == 1 ? lo : lo + (hi - lo) * i / (count - 1.0);
              axis.push_back(Vec::Constant(1, i == count - 1 ? hi : v));
            }
            axes.push_back(std::move(axis));
          }
          return cartesian(axes);
        } else {
          std::vector<VecList> parts;
          for (const auto& f : s.factors) parts.push_back(f.sample(interval_samples));
          return cartesian(parts);
        }
      },
      set_);
}

double ControlSet::diameter() const {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FiniteSet>) {
          double d = 0.0;
          for (std::size_t i = 0; i < s.points.size(); ++i)
            for (std::size_t j = i + 1; j < s.points.size(); ++j)
              d = std::max(d, (s.points[i] - s.points[j]).norm());
          return d;
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          return (s.hi - s.lo).norm();
        } else {
          double sq = 0.0;
          for (const auto& f : s.factors) sq += f.diameter() * f.diameter();
          return std::sqrt(sq);
        }
      },
      set_);
}

// ------------------------------------------------------------ costs/dynamics

double DiagQuadratic::operator()(const Vec& x) const {
  double v = constant;
  if (linear.size() > 0) v += linear.dot(x);
  if (quadratic.size() > 0) v += 0.5 * (quadratic.array() * x.array().square()).sum();
  return v;
}

CostSpec CostSpec::encoded(DiagQuadratic S, ControlFn R, DiagQuadratic g) {
  CostSpec c;
  c.S = [S](double, const Vec& x) { return S(x); };
  c.R = std::move(R);
  c.g = [g](const Vec& x) { return g(x); };
  c.state_form = std::move(S);
  c.terminal_form = std::move(g);
  return c;
}

StructuredDynamics::StructuredDynamics(Mat A, InputMap h, int control_dim)
    : A_(std::move(A)), h_(std::move(h)), m_(control_dim) {}

StructuredDynamics StructuredDynamics::from_general(Mat A, VectorField f, int control_dim) {
  const auto n = A.rows();
  StructuredDynamics d;
  d.A_ = std::move(A);
  d.m_ = control_dim;
  d.general_ = f;
  d.h_ = [f, n](double t, const Vec& a) { return f(t, Vec::Zero(n), a); };
  return d;
}

Vec StructuredDynamics::f(double t, const Vec& x, const Vec& a) const {
  if (general_) return general_(t, x, a);
  return A_ * x + h_(t, a);
}

double StateConstraint::violation(const Vec& x) const {
  return std::visit(
      [&](const auto& c) -> double {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, NoConstraint>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, BoxConstraint>) {
          double v = 0.0;
          for (Eigen::Index j = 0; j < x.size(); ++j) {
            v = std::max({v, x[j] - c.hi[j], c.lo[j] - x[j]});
          }
          return v;
        } else {
          if (c.offsets.size() == 0) return 0.0;
          return std::max(0.0, (c.normals * x - c.offsets).maxCoeff());
        }
      },
      c_);
}

// -------------------------------------------------------------- validation

bool ValidationReport::has(const std::string& code) const {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const ValidationIssue& i) { return i.code == code; });
}

namespace {

// Uniform sample in U; `like`, when given, fixes every finite coordinate so
// that midpoints of the pair stay inside U.
Vec random_control(const ControlSet& U, std::mt19937_64& rng, const Vec* like,
                   Eigen::Index offset = 0) {
  return std::visit(
      [&](const auto& s) -> Vec {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FiniteSet>) {
          if (like) return like->segment(offset, s.points.front().size());
          std::uniform_int_distribution<std::size_t> pick(0, s.points.size() - 1);
          return s.points[pick(rng)];
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          Vec a(s.lo.size());
          std::uniform_real_distribution<double> unit(0.0, 1.0);
          for (Eigen::Index j = 0; j < a.size(); ++j) a[j] = s.lo[j] + (s.hi[j] - s.lo[j]) * unit(rng);
          return a;
        } else {
          Vec a(U.dim());
          Eigen::Index pos = 0;
          for (const auto& f : s.factors) {
            const int d = f.dim();
            a.segment(pos, d) = random_control(f, rng, like, offset + pos);
            pos += d;
          }
          return a;
        }
      },
      U.variant());
}

Vec random_state(const Problem& p, std::mt19937_64& rng) {
  const auto n = p.x0.size();
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Vec x(n);
  Vec lo = p.x0.array() - 1.0;
  Vec hi = p.x0.array() + 1.0;
  if (const auto* box = std::get_if<BoxConstraint>(&p.constraint.variant())) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::isfinite(box->lo[j])) lo[j] = box->lo[j];
      if (std::isfinite(box->hi[j])) hi[j] = box->hi[j];
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) x[j] = lo[j] + (hi[j] - lo[j]) * 0.5 * (unit(rng) + 1.0);
  return x;
}

}  // namespace

ValidationReport validate(const Problem& p, int convexity_samples, std::uint64_t seed) {
  ValidationReport report;
  auto flag = [&](std::string code, std::string msg) {
    report.issues.push_back({std::move(code), std::move(msg)});
  };

  const int n = p.dynamics.n();
  const int m = p.dynamics.m();

  if (p.dynamics.A().rows() != p.dynamics.A().cols()) flag("dimension", "A is not square");
  if (p.x0.size() != n) flag("dimension", "x0 does not match the state dimension");
  if (p.controls.dim() != m) flag("dimension", "control set dimension does not match m");
  if (const auto* box = std::get_if<BoxConstraint>(&p.constraint.variant())) {
    if (box->lo.size() != n || box->hi.size() != n) flag("dimension", "constraint box dimension");
    else if ((box->lo.array() > box->hi.array()).any()) flag("empty constraint", "empty constraint box");
  }
  if (const auto* hs = std::get_if<HalfspaceConstraint>(&p.constraint.variant())) {
    if (hs->normals.cols() != n || hs->normals.rows() != hs->offsets.size())
      flag("dimension", "halfspace constraint dimension");
  }
  if (p.grid.knots().empty()) {
    flag("grid", "time grid has no knots");
  } else if (p.grid.steps() > 0 && !p.grid.strictly_increasing()) {
    flag("grid", "time grid has a non-positive step");
  }
  if (p.controls.empty()) {
    const bool is_box = std::holds_alternative<BoxSet>(p.controls.variant());
    flag("empty control set", is_box ? "empty control box" : "empty control set");
  }
  if (!report.valid()) return report;

  if (!p.constraint.contains(p.x0, 1e-12)) flag("x0 infeasible", "initial state infeasible");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double t0 = p.grid.t0();
  const double span = p.grid.steps() > 0 ? p.grid.T() - t0 : 0.0;
  auto rand_time = [&] { return t0 + span * unit(rng); };

  bool affine_ok = true;
  bool nonneg_ok = true;
  bool S_convex = true;
  bool R_convex = true;
  bool g_convex = true;
  for (int s = 0; s < convexity_samples; ++s) {
    const double t = rand_time();
    const Vec x = random_state(p, rng);
    const Vec y = random_state(p, rng);
    const Vec a = random_control(p.controls, rng, nullptr);
    const Vec b = random_control(p.controls, rng, &a);
    const Vec mid_x = 0.5 * (x + y);
    const Vec mid_a = 0.5 * (a + b);

    const Vec d = y - x;
    const Vec lhs = p.dynamics.f(t, x + d, a) - p.dynamics.f(t, x, a);
    const Vec rhs = p.dynamics.A() * d;
    if ((lhs - rhs).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + rhs.cwiseAbs().maxCoeff())) affine_ok = false;

    const double Sx = p.cost.S(t, x);
    const double Sy = p.cost.S(t, y);
    const double Ra = p.cost.R(t, a);
    const double Rb = p.cost.R(t, b);
    if (Sx < -1e-12 || Sy < -1e-12 || Ra < -1e-12 || Rb < -1e-12) nonneg_ok = false;

    const double tol = 1e-9;
    if (p.cost.S(t, mid_x) > 0.5 * (Sx + Sy) + tol * (1.0 + std::abs(Sx) + std::abs(Sy))) S_convex = false;
    if (p.cost.R(t, mid_a) > 0.5 * (Ra + Rb) + tol * (1.0 + std::abs(Ra) + std::abs(Rb))) R_convex = false;
    const double gx = p.cost.g(x);
    const double gy = p.cost.g(y);
    if (p.cost.g(mid_x) > 0.5 * (gx + gy) + tol * (1.0 + std::abs(gx) + std::abs(gy))) g_convex = false;
  }
  if (!affine_ok) flag("nonaffine dynamics", "f(t, x, a) - A x depends on x");
  if (!nonneg_ok) flag("negative cost", "S or R takes negative values on sampled points");
  if (!S_convex) flag("nonconvex S", "S fails the midpoint convexity check");
  if (!R_convex) flag("nonconvex R", "R fails the midpoint convexity check");
  if (!g_convex) flag("nonconvex g", "g fails the midpoint convexity check");
  return report;
}

// ------------------------------------------------------------------ preset

Problem gear_preset(double dt) {
  Problem p;
  Mat A = Mat::Zero(4, 4);
  A(0, 1) = 1.0;
  A(2, 3) = 1.0;
  auto h = [](double, const Vec& a) {
    const double gain = a[1] / (1.0 + 3.0 * a[0] * a[0]);
    Vec v(4);
    v << 0.0, gain, 0.0, -a[0] * gain;
    return v;
  };
  p.dynamics = StructuredDynamics(A, h, 2);

  DiagQuadratic S;  // zero
  DiagQuadratic g;
  g.linear = Vec::Zero(4);
  g.linear[2] = 1000.0;
  p.cost = CostSpec::encoded(S, [](double, const Vec& a) { return a[1]; }, g);

  VecList gears{Vec::Constant(1, 1.0), Vec::Constant(1, 2.0)};
  p.controls = ControlSet::product({ControlSet::finite(gears), ControlSet::interval(0.0, 1.0)});

  const double inf = std::numeric_limits<double>::infinity();
  Vec lo = Vec::Constant(4, -inf);
  Vec hi = Vec::Constant(4, inf);
  lo[1] = -0.1;
  hi[1] = 0.1;
  p.constraint = BoxConstraint{lo, hi};
  p.grid = TimeGrid::from_step(0.0, 1.0, dt);
  p.x0 = Vec::Zero(4);
  return p;
}

}  // namespace laxsynth
