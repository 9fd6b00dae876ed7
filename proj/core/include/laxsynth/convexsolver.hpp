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
 * @brief Operator-splitting (ADMM) solver for sparse convex QPs
 *
 *   min  1/2 z' P z + q' z    s.t.  l <= A z <= u
 *
 * with P symmetric positive semidefinite. Equalities are rows with l == u,
 * and bounds may be infinite. The iteration follows the usual
 * x/z/y splitting with over-relaxation, Ruiz equilibration, residual
 * balancing of the penalty and an active-set polish for LPs.
 */

#include "laxsynth/types.hpp"

#include <Eigen/SparseCore>

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

namespace laxsynth::convex {

using SpMat = Eigen::SparseMatrix<double>;

struct SparseConvexProgram {
  int nvar = 0;
  SpMat P;  ///< nvar x nvar, full symmetric storage; may be empty
  Vec q;
  SpMat A;  ///< ncon x nvar
  Vec l;
  Vec u;
  double objective_constant = 0.0;

  int ncon() const { return static_cast<int>(A.rows()); }
  double objective(const Vec& z) const;

  /// Dimension checks, l <= u and a spot check of P >= 0 on random forms.
  bool is_valid(std::string* why = nullptr) const;
};

enum class SolveStatus { Optimal, PrimalInfeasible, MaxIters };

const char* to_string(SolveStatus s);

struct SolveOptions {
  double eps_abs = 1e-8;
  double eps_rel = 1e-8;
  int max_iters = 200000;
  double rho = 0.1;
  double sigma = 1e-6;
  double alpha = 1.6;
  bool polish = true;
  int scaling_passes = 10;
  int adaptive_rho_interval = 50;
  double eps_primal_infeasible = 1e-6;
  int check_interval = 10;
  std::optional<Vec> initial_point;
};

struct SolveReport {
  SolveStatus status = SolveStatus::MaxIters;
  double objective = 0.0;
  Vec z;
  Vec y;  ///< constraint multipliers, negative on active lower bounds
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  bool polished = false;
};

SolveReport solve(const SparseConvexProgram& prog, const SolveOptions& opts = {});

struct Feasible {
  Vec z;
};
struct Infeasible {};
using FeasibilityResult = std::variant<Feasible, Infeasible>;

/// Solves the program with its objective removed.
FeasibilityResult feasibility(const SparseConvexProgram& prog, const SolveOptions& opts = {});

/// Text dump of (P, q, A, l, u) as coordinate-format sections.
void write_program(const SparseConvexProgram& prog, std::ostream& os);
void write_program(const SparseConvexProgram& prog, const std::string& path);

}  // namespace laxsynth::convex
