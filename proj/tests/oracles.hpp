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

// Reference computations used as test oracles. They share no code with the
// library: LPs are solved by vertex enumeration, conjugates by enumerating
// affinely independent vertex subsets, and gear trajectories in closed form.

#include "laxsynth/types.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace oracle {

using laxsynth::Mat;
using laxsynth::Vec;
using laxsynth::VecList;

/// Calls `fn` with every k-subset of {0, ..., n-1} in lexicographic order.
inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k > n || k < 0) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

/// min c'x s.t. G x <= h over a bounded polyhedron, by enumerating every
/// basic solution (n tight rows). nullopt when no vertex is feasible.
inline std::optional<double> vertex_enumeration_lp(const Mat& G, const Vec& h, const Vec& c,
                                                   double tol = 1e-9) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(G.rows());
  std::optional<double> best;
  for_each_subset(m, n, [&](const std::vector<int>& rows) {
    Mat Gs(n, n);
    Vec hs(n);
    for (int i = 0; i < n; ++i) {
      Gs.row(i) = G.row(rows[static_cast<std::size_t>(i)]);
      hs[i] = h[rows[static_cast<std::size_t>(i)]];
    }
    Eigen::FullPivLU<Mat> lu(Gs);
    if (lu.rank() < n) return;
    const Vec x = lu.solve(hs);
    if (((G * x - h).array() > tol * (1.0 + h.cwiseAbs().maxCoeff())).any()) return;
    const double v = c.dot(x);
    if (!best || v < *best) best = v;
  });
  return best;
}

/// min sum g_i c_i s.t. sum g_i v_i = b, g >= 0, sum g_i = 1, by trying
/// every vertex subset of size up to dim + 1. +infinity when b is outside
/// the hull.
inline double enumerated_hstar(const VecList& vertices, const std::vector<double>& costs,
                               const Vec& b, double tol = 1e-9) {
  const int N = static_cast<int>(vertices.size());
  const int d = static_cast<int>(b.size());
  double best = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= std::min(N, d + 1); ++k) {
    for_each_subset(N, k, [&](const std::vector<int>& s) {
      Mat M(d + 1, k);
      for (int j = 0; j < k; ++j) {
        M.block(0, j, d, 1) = vertices[static_cast<std::size_t>(s[static_cast<std::size_t>(j)])];
        M(d, j) = 1.0;
      }
      Vec rhs(d + 1);
      rhs << b, 1.0;
      Eigen::ColPivHouseholderQR<Mat> qr(M);
      if (qr.rank() < k) return;
      const Vec g = qr.solve(rhs);
      if ((M * g - rhs).cwiseAbs().maxCoeff() > tol) return;
      if (g.minCoeff() < -tol) return;
      double v = 0.0;
      for (int j = 0; j < k; ++j) v += g[j] * costs[static_cast<std::size_t>(s[static_cast<std::size_t>(j)])];
      best = std::min(best, v);
    });
  }
  return best;
}

/// The gear velocity gain u2 / (1 + 3 u1^2).
inline double gear_gain(const Vec& u) { return u[1] / (1.0 + 3.0 * u[0] * u[0]); }

/// Exact gear state at time t from the origin under a constant control.
inline Vec gear_constant_control(const Vec& u, double t) {
  const double g = gear_gain(u);
  Vec x(4);
  x << 0.5 * g * t * t, g * t, -0.5 * u[0] * g * t * t, -u[0] * g * t;
  return x;
}

/// Barycentric membership in the triangle (p0, p1, p2) of the plane.
inline bool in_triangle(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                        const Eigen::Vector2d& c, double tol = 0.0) {
  Eigen::Matrix2d T;
  T.col(0) = b - a;
  T.col(1) = c - a;
  const Eigen::Vector2d l = T.fullPivLu().solve(p - a);
  return l[0] >= -tol && l[1] >= -tol && l[0] + l[1] <= 1.0 + tol;
}

}  // namespace oracle
