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
 * @brief Hamiltonian, its convex conjugate and the biconjugate over the
 *        convex hull of the negative velocity set B(x, t) = {-f(t, x, a)}.
 *
 * For a polytopal hull with vertices b_i and vertex costs c_i,
 *   H(p)  = max_i  p . b_i - c_i
 *   H*(b) = min { sum_i g_i c_i : sum_i g_i b_i = b, g >= 0, sum_i g_i = 1 }
 * and H*(b) = +infinity exactly when b lies outside the hull.
 */

#include "laxsynth/model.hpp"
#include "laxsynth/types.hpp"

#include <optional>

namespace laxsynth {

struct DeltaNet;

/// Polytopal model of Conv(B(x, t)) together with vertex costs.
struct HullModel {
  Vec base;              ///< -A x, the state-dependent offset shared by all vertices
  VecList vertices;      ///< b_i = base - h(t, a_i)
  std::vector<double> vertex_costs;  ///< reduced Lagrangian at b_i
  VecList generator_controls;        ///< a_i with -f(t, x, a_i) = b_i

  std::size_t size() const { return vertices.size(); }
  int dim() const { return static_cast<int>(base.size()); }
};

/// Convex weights over the vertices of a HullModel.
struct ConvexCombination {
  std::vector<double> weights;

  bool is_valid(double tol = 1e-9) const;
  Vec combine(const VecList& points) const;
};

struct HullSampling {
  /// Samples per continuous control coordinate, endpoints included.
  int interval_samples = 65;

  static HullSampling endpoints_only() { return {2}; }
};

/// Vertices -f(t, x, a) over sampled control points, pruned to the points
/// that support the lower convex envelope of {(b_i, cost_i)}. Ties (equal
/// vertex, equal cost) keep the first control point in sampling order.
HullModel sample_hull(const Problem& p, double t, const Vec& x,
                      const HullSampling& density = {});

/// The x-independent hull of {-h(t, a)} with costs R(t, a). Valid for the
/// state-affine class, where B(x, t) = -A x + this hull.
HullModel sample_control_hull(const Problem& p, double t, const HullSampling& density = {});

/// Prunes candidate (vertex, cost, control) triples to the lower convex
/// envelope support. Exposed for testing.
HullModel prune_hull(Vec base, const VecList& vertices, const std::vector<double>& costs,
                     const VecList& controls);

/// min over net points a with |f(t, x, a) + b| <= match_tol of L(t, x, a),
/// or +infinity when no net point generates b.
ExtendedReal reduced_lagrangian(const Problem& p, double t, const Vec& x, const Vec& b,
                                const DeltaNet& net, double match_tol = 1e-8);

/// sup_i  p . b_i - cost_i.
double hamiltonian(const HullModel& hull, const Vec& p);

struct ConjugateValue {
  ExtendedReal value;
  std::optional<ConvexCombination> combination;  ///< set when finite
};

/// H*(b) through the vertex LP; +infinity when b is outside the hull.
ConjugateValue hstar(const HullModel& hull, const Vec& b);

/// S(t, x) + H_f*(t, b + A x) with H_f* from sample_control_hull.
ExtendedReal hstar_structured(const Problem& p, double t, const Vec& x, const Vec& b,
                              const HullSampling& density = {});
ExtendedReal hstar_structured(const Problem& p, const HullModel& control_hull, double t,
                              const Vec& x, const Vec& b);

/// Axis-aligned search box for the biconjugate. Axes with lo == hi carry a
/// single grid value.
struct SearchBox {
  Vec lo;
  Vec hi;

  static SearchBox bounding(const HullModel& hull);
};

/// H* tabulated on a regular grid over a SearchBox; points outside the hull
/// are dropped.
struct ConjugateTable {
  VecList points;
  std::vector<double> values;
  double resolution = 0.0;  ///< largest grid spacing over the non-degenerate axes
};

ConjugateTable tabulate_hstar(const HullModel& hull, const SearchBox& box, int grid_density);

/// sup over the table of p . b - H*(b).
double biconjugate(const ConjugateTable& table, const Vec& p);
double biconjugate(const HullModel& hull, const Vec& p, const SearchBox& box, int grid_density);

}  // namespace laxsynth
