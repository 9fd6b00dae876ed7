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
 * @brief Finite-horizon optimal control problems with state-affine dynamics.
 *
 * The accepted class is
 *   min  int_{t0}^{T} S(t, x) + R(t, u) dt + g(x(T))
 *   s.t. xdot = A x + h(t, u),  u(t) in U,  x(t) in closure(Omega),  x(t0) = x0
 * with U compact, S and g convex, R >= 0 and Omega a closed convex set.
 */

#include "laxsynth/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace laxsynth {

/// Knots t0 < t1 < ... < tK. K = 0 is a zero-length horizon.
class TimeGrid {
 public:
  TimeGrid() = default;
  /// Stores the knots as given; validate() reports ordering problems.
  explicit TimeGrid(std::vector<double> knots) : knots_(std::move(knots)) {}

  static TimeGrid uniform(double t0, double T, std::size_t steps);
  /// Uniform grid of step `dt`; throws ConfigError unless dt divides T - t0.
  static TimeGrid from_step(double t0, double T, double dt);

  std::size_t steps() const { return knots_.empty() ? 0 : knots_.size() - 1; }
  double t0() const { return knots_.front(); }
  double T() const { return knots_.back(); }
  double time(std::size_t k) const { return knots_[k]; }
  double step(std::size_t k) const { return knots_[k + 1] - knots_[k]; }
  const std::vector<double>& knots() const { return knots_; }

  bool strictly_increasing() const;

 private:
  std::vector<double> knots_;
};

class ControlSet;

struct FiniteSet {
  VecList points;
};

struct BoxSet {
  Vec lo;
  Vec hi;
};

struct ProductSet {
  std::vector<ControlSet> factors;
};

/// Compact control set U. Product points are the flat concatenation of the
/// factor coordinates in declaration order.
class ControlSet {
 public:
  using Variant = std::variant<FiniteSet, BoxSet, ProductSet>;

  ControlSet() = default;
  ControlSet(FiniteSet s) : set_(std::move(s)) {}
  ControlSet(BoxSet s) : set_(std::move(s)) {}
  ControlSet(ProductSet s) : set_(std::move(s)) {}

  static ControlSet finite(VecList points) { return FiniteSet{std::move(points)}; }
  static ControlSet box(Vec lo, Vec hi) { return BoxSet{std::move(lo), std::move(hi)}; }
  static ControlSet interval(double lo, double hi);
  static ControlSet product(std::vector<ControlSet> factors) {
    return ProductSet{std::move(factors)};
  }

  const Variant& variant() const { return set_; }

  int dim() const;
  bool empty() const;
  bool contains(const Vec& a, double tol = 1e-12) const;

  /// Control points: finite factors verbatim, each box coordinate sampled at
  /// `interval_samples` uniform points including both endpoints (a
  /// degenerate coordinate contributes one point). Products are enumerated
  /// as a Cartesian product with the first factor varying slowest.
  VecList sample(int interval_samples) const;

  /// Euclidean diameter of the set (exact for boxes and finite sets).
  double diameter() const;

 private:
  Variant set_;
};

/// Scalar function c + lin' x + 1/2 x' diag(quad) x.
///
/// This is the cost class the discretized program can encode exactly.
/// An empty `lin` or `quad` is treated as zero.
struct DiagQuadratic {
  double constant = 0.0;
  Vec linear;
  Vec quadratic;

  double operator()(const Vec& x) const;
  bool is_convex() const { return quadratic.size() == 0 || quadratic.minCoeff() >= 0.0; }
  bool has_quadratic() const {
    return quadratic.size() > 0 && quadratic.cwiseAbs().maxCoeff() > 0.0;
  }
};

using StateFn = std::function<double(double, const Vec&)>;
using ControlFn = std::function<double(double, const Vec&)>;
using TerminalFn = std::function<double(const Vec&)>;
using InputMap = std::function<Vec(double, const Vec&)>;
using VectorField = std::function<Vec(double, const Vec&, const Vec&)>;

/// xdot = f(t, x, a) = A x + h(t, a).
///
/// When built from a general vector field the affine split is claimed, not
/// enforced: validate() samples f(t, x, a) - A x - h(t, a) and flags
/// dynamics that are not affine in x.
class StructuredDynamics {
 public:
  StructuredDynamics() = default;
  StructuredDynamics(Mat A, InputMap h, int control_dim);

  /// h is taken as f(t, 0, a).
  static StructuredDynamics from_general(Mat A, VectorField f, int control_dim);

  int n() const { return static_cast<int>(A_.rows()); }
  int m() const { return m_; }
  const Mat& A() const { return A_; }

  Vec h(double t, const Vec& a) const { return h_(t, a); }
  Vec f(double t, const Vec& x, const Vec& a) const;

 private:
  Mat A_;
  InputMap h_;
  VectorField general_;
  int m_ = 0;
};

/// Separable running cost S(t, x) + R(t, a) and terminal cost g(x).
///
/// `state_form` / `terminal_form`, when set, are time-invariant encodings of
/// S and g used to assemble the discretized program.
struct CostSpec {
  StateFn S;
  ControlFn R;
  TerminalFn g;
  std::optional<DiagQuadratic> state_form;
  std::optional<DiagQuadratic> terminal_form;

  static CostSpec encoded(DiagQuadratic S, ControlFn R, DiagQuadratic g);

  double running(double t, const Vec& x, const Vec& a) const { return S(t, x) + R(t, a); }
};

struct NoConstraint {};

/// lo <= x <= hi componentwise; use +-infinity for free coordinates.
struct BoxConstraint {
  Vec lo;
  Vec hi;
};

/// normals * x <= offsets.
struct HalfspaceConstraint {
  Mat normals;
  Vec offsets;
};

/// Time-invariant closed convex state constraint.
class StateConstraint {
 public:
  using Variant = std::variant<NoConstraint, BoxConstraint, HalfspaceConstraint>;

  StateConstraint() = default;
  StateConstraint(NoConstraint c) : c_(c) {}
  StateConstraint(BoxConstraint c) : c_(std::move(c)) {}
  StateConstraint(HalfspaceConstraint c) : c_(std::move(c)) {}

  const Variant& variant() const { return c_; }
  bool is_none() const { return std::holds_alternative<NoConstraint>(c_); }
  bool is_box() const { return std::holds_alternative<BoxConstraint>(c_); }

  /// Largest amount by which x violates any single bound or halfspace.
  double violation(const Vec& x) const;
  bool contains(const Vec& x, double tol = 0.0) const { return violation(x) <= tol; }

 private:
  Variant c_;
};

struct Problem {
  StructuredDynamics dynamics;
  CostSpec cost;
  ControlSet controls;
  StateConstraint constraint;
  TimeGrid grid;
  Vec x0;

  double running_cost(double t, const Vec& x, const Vec& a) const {
    return cost.running(t, x, a);
  }
};

struct ValidationIssue {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool valid() const { return issues.empty(); }
  bool has(const std::string& code) const;
};

/// Report-only checks: dimensions, feasibility of x0, grid ordering, empty
/// control sets, affinity of f in x, nonnegativity of S and R, and midpoint
/// convexity of S, R and g at `convexity_samples` random pairs.
ValidationReport validate(const Problem& p, int convexity_samples = 100,
                          std::uint64_t seed = 7);

/// Two-gear switched system on [0, 1] with |x2| <= 0.1:
///   f = (x2, u2 / (1 + 3 u1^2), x4, -u1 u2 / (1 + 3 u1^2)),
///   U = {1, 2} x [0, 1],  cost int u2 ds + 1000 x3(1),  x0 = 0.
Problem gear_preset(double dt = 0.01);

}  // namespace laxsynth
