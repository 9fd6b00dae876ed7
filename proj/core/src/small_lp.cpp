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
#include "laxsynth/small_lp.hpp"

#include <cmath>
#include <vector>

namespace laxsynth::small_lp {

namespace {

// Tableau with rows 0..m-1 for constraints and row m for the reduced costs;
// the last column is the right-hand side.
struct Tableau {
  Mat T;
  std::vector<Eigen::Index> basis;

  Eigen::Index rows() const { return T.rows() - 1; }
  Eigen::Index rhs_col() const { return T.cols() - 1; }

  void pivot(Eigen::Index r, Eigen::Index c) {
    T.row(r) /= T(r, c);
    for (Eigen::Index i = 0; i < T.rows(); ++i) {
      if (i != r && T(i, c) != 0.0) T.row(i) -= T(i, c) * T.row(r);
    }
    basis[r] = c;
  }

  // Bland's rule over columns [0, ncols). Returns false when unbounded.
  bool optimize(Eigen::Index ncols, double tol) {
    const Eigen::Index obj = rows();
    for (int iter = 0; iter < 100000; ++iter) {
      Eigen::Index enter = -1;
      for (Eigen::Index c = 0; c < ncols; ++c) {
        if (T(obj, c) < -tol) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      double best = 0.0;
      for (Eigen::Index r = 0; r < rows(); ++r) {
        if (T(r, enter) > tol) {
          const double ratio = T(r, rhs_col()) / T(r, enter);
          if (leave < 0 || ratio < best - 1e-15 ||
              (std::abs(ratio - best) <= 1e-15 && basis[r] < basis[leave])) {
            leave = r;
            best = ratio;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    return true;
  }
};

}  // namespace

Result solve_standard_form(const Mat& Aeq, const Vec& beq, const Vec& c, double tol) {
  const Eigen::Index m = Aeq.rows();
  const Eigen::Index n = Aeq.cols();
  Result result;

  // Phase one: artificials a >= 0 with A z + a = b (b >= 0 after row flips).
  Tableau tab;
  tab.T = Mat::Zero(m + 1, n + m + 1);
  tab.basis.resize(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    const double sign = beq[r] < 0.0 ? -1.0 : 1.0;
    tab.T.row(r).head(n) = sign * Aeq.row(r);
    tab.T(r, n + r) = 1.0;
    tab.T(r, n + m) = sign * beq[r];
    tab.basis[r] = n + r;
  }
  for (Eigen::Index r = 0; r < m; ++r) tab.T.row(m) -= tab.T.row(r);
  for (Eigen::Index r = 0; r < m; ++r) tab.T(m, n + r) = 0.0;

  tab.optimize(n + m, tol);
  const double scale = 1.0 + beq.cwiseAbs().maxCoeff();
  if (-tab.T(m, n + m) > tol * scale * 10.0) {
    result.status = Status::Infeasible;
    return result;
  }

  // Drive zero-level artificials out of the basis; drop rows that cannot be.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index r = 0; r < m; ++r) {
    if (tab.basis[r] >= n) {
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (std::abs(tab.T(r, j)) > 1e-9) {
          col = j;
          break;
        }
      }
      if (col < 0) continue;
      tab.pivot(r, col);
    }
    keep.push_back(r);
  }

  // Phase two on the original columns.
  Tableau two;
  const Eigen::Index mk = static_cast<Eigen::Index>(keep.size());
  two.T = Mat::Zero(mk + 1, n + 1);
  two.basis.resize(mk);
  for (Eigen::Index i = 0; i < mk; ++i) {
    two.T.row(i).head(n) = tab.T.row(keep[i]).head(n);
    two.T(i, n) = tab.T(keep[i], n + m);
    two.basis[i] = tab.basis[keep[i]];
  }
  two.T.row(mk).head(n) = c.transpose();
  for (Eigen::Index i = 0; i < mk; ++i) {
    const double cb = c[two.basis[i]];
    if (cb != 0.0) two.T.row(mk) -= cb * two.T.row(i);
  }
  if (!two.optimize(n, tol)) {
    result.status = Status::Unbounded;
    return result;
  }

  result.status = Status::Optimal;
  result.z = Vec::Zero(n);
  for (Eigen::Index i = 0; i < mk; ++i) result.z[two.basis[i]] = std::max(0.0, two.T(i, n));
  result.objective = c.dot(result.z);
  return result;
}

}  // namespace laxsynth::small_lp
