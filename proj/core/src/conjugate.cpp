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
#include "laxsynth/conjugate.hpp"

#include "laxsynth/net.hpp"
#include "laxsynth/small_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace laxsynth {

bool ConvexCombination::is_valid(double tol) const {
  if (weights.empty()) return false;
  double sum = 0.0;
  for (double w : weights) {
    if (w < -tol) return false;
    sum += w;
  }
  return std::abs(sum - 1.0) <= tol;
}

Vec ConvexCombination::combine(const VecList& points) const {
  Vec out = Vec::Zero(points.front().size());
  for (std::size_t i = 0; i < weights.size(); ++i) out += weights[i] * points[i];
  return out;
}

namespace {

// LP data for min sum g_i c_i s.t. sum g_i b_i = b, sum g_i = 1, g >= 0.
small_lp::Result vertex_lp(const VecList& vertices, const std::vector<double>& costs,
                           const Vec& b) {
  const auto d = b.size();
  const auto N = static_cast<Eigen::Index>(vertices.size());
  Mat Aeq(d + 1, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    Aeq.col(i).head(d) = vertices[i];
    Aeq(d, i) = 1.0;
  }
  Vec beq(d + 1);
  beq << b, 1.0;
  Vec c = Eigen::Map<const Vec>(costs.data(), N);
  return small_lp::solve_standard_form(Aeq, beq, c);
}

}  // namespace

HullModel prune_hull(Vec base, const VecList& vertices, const std::vector<double>& costs,
                     const VecList& controls) {
  const std::size_t N = vertices.size();
  if (N == 0) throw EmptyControlSet("no control points to build a hull from");

  // Exact duplicates: keep the cheapest, first index on ties.
  std::vector<bool> alive(N, true);
  for (std::size_t i = 0; i < N; ++i) {
    if (!alive[i]) continue;
    for (std::size_t j = i + 1; j < N; ++j) {
      if (!alive[j]) continue;
      if ((vertices[i] - vertices[j]).cwiseAbs().maxCoeff() <= 1e-12) {
        if (costs[j] < costs[i] - 1e-12) {
          alive[i] = false;
          break;
        }
        alive[j] = false;
      }
    }
  }

  // A point is dropped when the remaining points reproduce it at no more cost.
  for (std::size_t i = 0; i < N; ++i) {
    if (!alive[i]) continue;
    VecList others;
    std::vector<double> other_costs;
    for (std::size_t j = 0; j < N; ++j) {
      if (j != i && alive[j]) {
        others.push_back(vertices[j]);
        other_costs.push_back(costs[j]);
      }
    }
    if (others.empty()) break;
    const auto r = vertex_lp(others, other_costs, vertices[i]);
    if (r.status == small_lp::Status::Optimal &&
        r.objective <= costs[i] + 1e-10 * (1.0 + std::abs(costs[i]))) {
      alive[i] = false;
    }
  }

  HullModel hull;
  hull.base = std::move(base);
  for (std::size_t i = 0; i < N; ++i) {
    if (!alive[i]) continue;
    hull.vertices.push_back(vertices[i]);
    hull.vertex_costs.push_back(costs[i]);
    hull.generator_controls.push_back(controls[i]);
  }
  return hull;
}

HullModel sample_hull(const Problem& p, double t, const Vec& x, const HullSampling& density) {
  const VecList controls = p.controls.sample(density.interval_samples);
  const double S = p.cost.S(t, x);
  VecList vertices;
  std::vector<double> costs;
  vertices.reserve(controls.size());
  for (const auto& a : controls) {
    vertices.push_back(-p.dynamics.f(t, x, a));
    costs.push_back(S + p.cost.R(t, a));
  }
  return prune_hull(-(p.dynamics.A() * x), vertices, costs, controls);
}

HullModel sample_control_hull(const Problem& p, double t, const HullSampling& density) {
  const VecList controls = p.controls.sample(density.interval_samples);
  VecList vertices;
  std::vector<double> costs;
  for (const auto& a : controls) {
    vertices.push_back(-p.dynamics.h(t, a));
    costs.push_back(p.cost.R(t, a));
  }
  return prune_hull(Vec::Zero(p.dynamics.n()), vertices, costs, controls);
}

ExtendedReal reduced_lagrangian(const Problem& p, double t, const Vec& x, const Vec& b,
                                const DeltaNet& net, double match_tol) {
  ExtendedReal best;
  for (const auto& a : net.points) {
    if ((p.dynamics.f(t, x, a) + b).norm() > match_tol) continue;
    const double L = p.running_cost(t, x, a);
    if (!best.is_finite() || L < best.value()) best = ExtendedReal(L);
  }
  return best;
}

double hamiltonian(const HullModel& hull, const Vec& p) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    best = std::max(best, p.dot(hull.vertices[i]) - hull.vertex_costs[i]);
  }
  return best;
}

ConjugateValue hstar(const HullModel& hull, const Vec& b) {
  const auto r = vertex_lp(hull.vertices, hull.vertex_costs, b);
  if (r.status != small_lp::Status::Optimal) return {};
  ConvexCombination gamma;
  gamma.weights.assign(r.z.data(), r.z.data() + r.z.size());
  return {ExtendedReal(r.objective), std::move(gamma)};
}

ExtendedReal hstar_structured(const Problem& p, const HullModel& control_hull, double t,
                              const Vec& x, const Vec& b) {
  const Vec shifted = b + p.dynamics.A() * x;
  return hstar(control_hull, shifted).value + p.cost.S(t, x);
}

ExtendedReal hstar_structured(const Problem& p, double t, const Vec& x, const Vec& b,
                              const HullSampling& density) {
  return hstar_structured(p, sample_control_hull(p, t, density), t, x, b);
}

SearchBox SearchBox::bounding(const HullModel& hull) {
  SearchBox box{hull.vertices.front(), hull.vertices.front()};
  for (const auto& v : hull.vertices) {
    box.lo = box.lo.cwiseMin(v);
    box.hi = box.hi.cwiseMax(v);
  }
  return box;
}

ConjugateTable tabulate_hstar(const HullModel& hull, const SearchBox& box, int grid_density) {
  const auto d = box.lo.size();
  std::vector<int> counts(d);
  ConjugateTable table;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double width = box.hi[j] - box.lo[j];
    counts[j] = width > 0.0 ? std::max(2, grid_density) : 1;
    if (counts[j] > 1) table.resolution = std::max(table.resolution, width / (counts[j] - 1));
  }

  std::vector<int> idx(d, 0);
  Vec b(d);
  while (true) {
    for (Eigen::Index j = 0; j < d; ++j) {
      b[j] = counts[j] == 1 ? box.lo[j]
                            : box.lo[j] + (box.hi[j] - box.lo[j]) * idx[j] / (counts[j] - 1.0);
    }
    const auto v = hstar(hull, b);
    if (v.value.is_finite()) {
      table.points.push_back(b);
      table.values.push_back(v.value.value());
    }
    Eigen::Index j = 0;
    for (; j < d; ++j) {
      if (++idx[j] < counts[j]) break;
      idx[j] = 0;
    }
    if (j == d) break;
  }
  return table;
}

double biconjugate(const ConjugateTable& table, const Vec& p) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < table.points.size(); ++i) {
    best = std::max(best, p.dot(table.points[i]) - table.values[i]);
  }
  return best;
}

double biconjugate(const HullModel& hull, const Vec& p, const SearchBox& box, int grid_density) {
  return biconjugate(tabulate_hstar(hull, box, grid_density), p);
}

}  // namespace laxsynth
