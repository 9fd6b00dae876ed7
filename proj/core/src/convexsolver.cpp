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
#include "laxsynth/convexsolver.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <vector>

namespace laxsynth::convex {

namespace {

constexpr double kInfBound = 1e20;
constexpr double kTiny = 1e-30;

bool is_inf(double v) { return std::abs(v) >= kInfBound; }

double inf_norm(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

SpMat diag_scale(const SpMat& M, const Vec& left, const Vec& right) {
  SpMat out = M;
  for (int k = 0; k < out.outerSize(); ++k) {
    for (SpMat::InnerIterator it(out, k); it; ++it) {
      it.valueRef() *= left[it.row()] * right[it.col()];
    }
  }
  return out;
}

// Infinity norms of the columns of [P A'; A 0]: first n for variables, then
// m for constraints.
void kkt_col_norms(const SpMat& P, const SpMat& A, Vec& var_norm, Vec& con_norm) {
  var_norm.setZero(P.cols() > 0 ? P.cols() : A.cols());
  con_norm.setZero(A.rows());
  for (int k = 0; k < P.outerSize(); ++k)
    for (SpMat::InnerIterator it(P, k); it; ++it)
      var_norm[it.col()] = std::max(var_norm[it.col()], std::abs(it.value()));
  for (int k = 0; k < A.outerSize(); ++k)
    for (SpMat::InnerIterator it(A, k); it; ++it) {
      const double a = std::abs(it.value());
      var_norm[it.col()] = std::max(var_norm[it.col()], a);
      con_norm[it.row()] = std::max(con_norm[it.row()], a);
    }
}

Vec to_scale(const Vec& norms) {
  Vec s(norms.size());
  for (Eigen::Index i = 0; i < norms.size(); ++i) {
    const double v = norms[i] < 1e-4 ? 1.0 : norms[i];
    s[i] = std::clamp(1.0 / std::sqrt(v), 1e-4, 1e4);
  }
  return s;
}

struct ScaledProgram {
  SpMat P, A;
  Vec q, l, u;
  Vec D, E;     // x = D xs, zs = E z
  double c = 1; // objective scaling
};

ScaledProgram equilibrate(const SparseConvexProgram& prog, int passes) {
  const int n = prog.nvar;
  const int m = prog.ncon();
  ScaledProgram s;
  s.P = prog.P.size() > 0 ? prog.P : SpMat(n, n);
  s.A = prog.A;
  s.q = prog.q;
  s.D = Vec::Ones(n);
  s.E = Vec::Ones(m);
  for (int pass = 0; pass < passes; ++pass) {
    Vec vn, cn;
    kkt_col_norms(s.P, s.A, vn, cn);
    const Vec dD = to_scale(vn);
    const Vec dE = to_scale(cn);
    s.P = diag_scale(s.P, dD, dD);
    s.A = diag_scale(s.A, dE, dD);
    s.q = s.q.cwiseProduct(dD);
    s.D = s.D.cwiseProduct(dD);
    s.E = s.E.cwiseProduct(dE);
  }
  double pnorm = 0.0;
  if (n > 0) {
    Vec vn, cn;
    kkt_col_norms(s.P, SpMat(0, n), vn, cn);
    pnorm = vn.mean();
  }
  const double scale = std::max(pnorm, inf_norm(s.q));
  s.c = scale < 1e-4 ? 1.0 : std::clamp(1.0 / scale, 1e-4, 1e4);
  s.P *= s.c;
  s.q *= s.c;
  s.l.resize(m);
  s.u.resize(m);
  for (int i = 0; i < m; ++i) {
    s.l[i] = is_inf(prog.l[i]) ? -kInfBound : prog.l[i] * s.E[i];
    s.u[i] = is_inf(prog.u[i]) ? kInfBound : prog.u[i] * s.E[i];
  }
  return s;
}

struct Residuals {
  double prim = 0, dual = 0, eps_prim = 0, eps_dual = 0;
  bool converged() const { return prim <= eps_prim && dual <= eps_dual; }
};

// Residuals of an unscaled primal/dual pair.
Residuals residuals(const SparseConvexProgram& prog, const SpMat& P, const Vec& x, const Vec& z,
                    const Vec& y, const SolveOptions& opts) {
  Residuals r;
  const Vec Ax = prog.A * x;
  const Vec Px = P * x;
  const Vec Aty = prog.A.transpose() * y;
  r.prim = inf_norm(Ax - z);
  r.dual = inf_norm(Px + prog.q + Aty);
  r.eps_prim = opts.eps_abs + opts.eps_rel * std::max(inf_norm(Ax), inf_norm(z));
  r.eps_dual = opts.eps_abs + opts.eps_rel * std::max({inf_norm(Px), inf_norm(Aty), inf_norm(prog.q)});
  return r;
}

Vec rho_vector(const Vec& l, const Vec& u, double rho) {
  Vec r(l.size());
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    if (l[i] <= -kInfBound && u[i] >= kInfBound) r[i] = 1e-6;
    else if (std::abs(u[i] - l[i]) < 1e-12) r[i] = 1e3 * rho;
    else r[i] = rho;
  }
  return r;
}

class KktSolver {
 public:
  KktSolver(const ScaledProgram& s, double sigma) : s_(s), sigma_(sigma) {}

  bool factor(const Vec& rho) {
    const int n = static_cast<int>(s_.A.cols());
    SpMat I(n, n);
    I.setIdentity();
    SpMat AtRA = SpMat(s_.A.transpose()) * rho.asDiagonal() * s_.A;
    K_ = s_.P + sigma_ * I + AtRA;
    ldlt_.compute(K_);
    return ldlt_.info() == Eigen::Success;
  }
  Vec solve(const Vec& rhs) const { return ldlt_.solve(rhs); }

 private:
  const ScaledProgram& s_;
  double sigma_;
  SpMat K_;
  Eigen::SimplicialLDLT<SpMat> ldlt_;
};

struct Polished {
  Vec x, y;
};

struct ActiveRow {
  int row;
  double rhs;
  int kind;  // -1 lower, +1 upper, 0 equality
};

enum class PolishOutcome { Accepted, Rejected, WrongSign };

// Solves the equality-constrained QP on one active set and checks
// feasibility, stationarity and dual signs in the original scaling. Rows
// whose multiplier has the wrong sign are reported through `wrong`.
PolishOutcome polish_once(const SparseConvexProgram& prog, const SpMat& P_full,
                          const ScaledProgram& s, const std::vector<ActiveRow>& active,
                          const SolveOptions& opts, Polished& out, std::vector<int>& wrong) {
  const int n = prog.nvar;
  const int m = prog.ncon();
  const int na = static_cast<int>(active.size());
  std::vector<int> row_pos(m, -1);
  for (int k = 0; k < na; ++k) row_pos[active[k].row] = k;

  // Quasi-definite regularization keeps the factorization stable on
  // degenerate active sets; iterative refinement removes its bias.
  const double delta = 1e-6;
  std::vector<Eigen::Triplet<double>> trip, trip0;
  for (int k = 0; k < s.P.outerSize(); ++k)
    for (SpMat::InnerIterator it(s.P, k); it; ++it) {
      trip.emplace_back(it.row(), it.col(), it.value());
      trip0.emplace_back(it.row(), it.col(), it.value());
    }
  for (int j = 0; j < n; ++j) trip.emplace_back(j, j, delta);
  for (int k = 0; k < s.A.outerSize(); ++k)
    for (SpMat::InnerIterator it(s.A, k); it; ++it) {
      const int pos = row_pos[it.row()];
      if (pos < 0) continue;
      for (auto* t : {&trip, &trip0}) {
        t->emplace_back(n + pos, it.col(), it.value());
        t->emplace_back(it.col(), n + pos, it.value());
      }
    }
  for (int k = 0; k < na; ++k) trip.emplace_back(n + k, n + k, -delta);
  SpMat K(n + na, n + na), K0(n + na, n + na);
  K.setFromTriplets(trip.begin(), trip.end());
  K0.setFromTriplets(trip0.begin(), trip0.end());

  Eigen::SimplicialLDLT<SpMat> ldlt(K);
  if (ldlt.info() != Eigen::Success) return PolishOutcome::Rejected;
  Vec rhs(n + na);
  rhs.head(n) = -s.q;
  for (int k = 0; k < na; ++k) rhs[n + k] = active[k].rhs;
  Vec sol = ldlt.solve(rhs);
  for (int it = 0; it < 25; ++it) sol += ldlt.solve(rhs - K0 * sol);
  if (!sol.allFinite()) return PolishOutcome::Rejected;

  out.x = s.D.cwiseProduct(sol.head(n));
  Vec y_scaled = Vec::Zero(m);
  for (int k = 0; k < na; ++k) y_scaled[active[k].row] = sol[n + k];
  out.y = s.E.cwiseProduct(y_scaled) / s.c;

  const Vec Ax = prog.A * out.x;
  const Residuals r = residuals(prog, P_full, out.x, Ax.cwiseMax(prog.l).cwiseMin(prog.u), out.y, opts);
  double viol = 0.0;
  for (int i = 0; i < m; ++i) {
    if (!is_inf(prog.l[i])) viol = std::max(viol, prog.l[i] - Ax[i]);
    if (!is_inf(prog.u[i])) viol = std::max(viol, Ax[i] - prog.u[i]);
  }
  if (viol > r.eps_prim || r.dual > r.eps_dual) return PolishOutcome::Rejected;
  wrong.clear();
  for (int k = 0; k < na; ++k) {
    const double yi = out.y[active[k].row];
    if ((active[k].kind == -1 && yi > r.eps_dual) || (active[k].kind == 1 && yi < -r.eps_dual)) {
      wrong.push_back(k);
    }
  }
  return wrong.empty() ? PolishOutcome::Accepted : PolishOutcome::WrongSign;
}

// Multipliers for a fixed primal point by sign-constrained least squares on
// the stationarity condition over the rows tight at that point
// (Lawson-Hanson active-set iteration). Needed on degenerate vertices,
// where the multipliers are not unique and the regularized KKT solve may
// return a wrong-signed set even though a valid one exists.
bool refit_multipliers(const SparseConvexProgram& prog, const SpMat& P_full,
                       const ScaledProgram& s, const std::vector<ActiveRow>& active,
                       const SolveOptions& opts, Polished& out) {
  const int n = prog.nvar;
  const int m = prog.ncon();
  const int na = static_cast<int>(active.size());
  if (na == 0) return false;
  const Vec grad = s.P * out.x.cwiseQuotient(s.D) + s.q;

  // Column j of M is sign_j * (row active[j] of A); w_j >= 0 for bounds.
  std::vector<int> row_pos(m, -1);
  for (int k = 0; k < na; ++k) row_pos[active[k].row] = k;
  std::vector<Eigen::Triplet<double>> trip;
  for (int c = 0; c < s.A.outerSize(); ++c)
    for (SpMat::InnerIterator it(s.A, c); it; ++it) {
      const int k = row_pos[it.row()];
      if (k >= 0) trip.emplace_back(it.col(), k, (active[k].kind == -1 ? -1.0 : 1.0) * it.value());
    }
  SpMat M(n, na);
  M.setFromTriplets(trip.begin(), trip.end());
  const SpMat Mt = M.transpose();

  std::vector<char> passive(na, 0);
  for (int k = 0; k < na; ++k) passive[k] = active[k].kind == 0;
  auto restricted_ls = [&](Vec& z) {
    std::vector<int> cols;
    for (int k = 0; k < na; ++k)
      if (passive[k]) cols.push_back(k);
    z = Vec::Zero(na);
    if (cols.empty()) return true;
    SpMat sel(na, static_cast<int>(cols.size()));
    std::vector<Eigen::Triplet<double>> st;
    for (std::size_t j = 0; j < cols.size(); ++j) st.emplace_back(cols[j], static_cast<int>(j), 1.0);
    sel.setFromTriplets(st.begin(), st.end());
    const SpMat Mp = M * sel;
    const SpMat N = SpMat(Mp.transpose()) * Mp;
    SpMat reg(N.rows(), N.cols());
    reg.setIdentity();
    Eigen::SimplicialLDLT<SpMat> ldlt(N + 1e-12 * reg);
    if (ldlt.info() != Eigen::Success) return false;
    const Vec rhs = -(Mp.transpose() * grad);
    Vec zp = ldlt.solve(rhs);
    for (int it = 0; it < 5; ++it) zp += ldlt.solve(rhs - N * zp);
    if (!zp.allFinite()) return false;
    z = sel * zp;
    return true;
  };

  Vec w = Vec::Zero(na);
  const double tol = 1e-12 * (1.0 + inf_norm(grad));
  for (int outer = 0; outer < 4 * na + 10; ++outer) {
    Vec z;
    if (!restricted_ls(z)) return false;
    // Inner loop: keep the bound multipliers nonnegative.
    for (int inner = 0; inner < na; ++inner) {
      double alpha = 1.0;
      bool clipped = false;
      for (int k = 0; k < na; ++k) {
        if (passive[k] && active[k].kind != 0 && z[k] <= 0.0) {
          alpha = std::min(alpha, w[k] / std::max(w[k] - z[k], kTiny));
          clipped = true;
        }
      }
      if (!clipped) break;
      w += alpha * (z - w);
      for (int k = 0; k < na; ++k) {
        if (passive[k] && active[k].kind != 0 && w[k] <= tol) {
          passive[k] = 0;
          w[k] = 0.0;
        }
      }
      if (!restricted_ls(z)) return false;
    }
    w = z;
    const Vec desc = -(Mt * (M * w + grad));
    int best = -1;
    double best_v = tol;
    for (int k = 0; k < na; ++k) {
      if (!passive[k] && desc[k] > best_v) {
        best_v = desc[k];
        best = k;
      }
    }
    if (best < 0) break;
    passive[best] = 1;
  }

  Vec y_scaled = Vec::Zero(m);
  for (int k = 0; k < na; ++k) {
    const double wk = active[k].kind == 0 ? w[k] : std::max(w[k], 0.0);
    y_scaled[active[k].row] = (active[k].kind == -1 ? -1.0 : 1.0) * wk;
  }
  out.y = s.E.cwiseProduct(y_scaled) / s.c;
  const Vec Ax = prog.A * out.x;
  const Residuals r =
      residuals(prog, P_full, out.x, Ax.cwiseMax(prog.l).cwiseMin(prog.u), out.y, opts);
  return r.dual <= r.eps_dual;
}

// Guesses the active set from the current iterate and polishes it.
std::optional<Polished> polish(const SparseConvexProgram& prog, const SpMat& P_full,
                               const ScaledProgram& s, const Vec& zs, const Vec& ys,
                               const SolveOptions& opts) {
  std::vector<ActiveRow> active;
  for (int i = 0; i < prog.ncon(); ++i) {
    const bool eq = std::abs(s.u[i] - s.l[i]) < 1e-12;
    const bool lower = s.l[i] > -kInfBound && zs[i] - s.l[i] < -ys[i];
    const bool upper = s.u[i] < kInfBound && s.u[i] - zs[i] < ys[i];
    if (eq) active.push_back({i, s.l[i], 0});
    else if (lower) active.push_back({i, s.l[i], -1});
    else if (upper) active.push_back({i, s.u[i], 1});
  }
  Polished out;
  std::vector<int> wrong;
  const PolishOutcome o = polish_once(prog, P_full, s, active, opts, out, wrong);
  if (o == PolishOutcome::Accepted) return out;
  if (o == PolishOutcome::WrongSign) {
    // The iterate may have missed rows that are tight at the polished point.
    const Vec Axs = s.A * out.x.cwiseQuotient(s.D);
    std::vector<ActiveRow> tight;
    for (int i = 0; i < prog.ncon(); ++i) {
      const double tol = 1e-9 * (1.0 + std::abs(Axs[i]));
      if (std::abs(s.u[i] - s.l[i]) < 1e-12) tight.push_back({i, s.l[i], 0});
      else if (s.l[i] > -kInfBound && Axs[i] - s.l[i] <= tol) tight.push_back({i, s.l[i], -1});
      else if (s.u[i] < kInfBound && s.u[i] - Axs[i] <= tol) tight.push_back({i, s.u[i], 1});
    }
    if (refit_multipliers(prog, P_full, s, tight, opts, out)) return out;
    // Otherwise release the wrong-signed bounds and try again.
    for (int round = 0; round < 10 && !wrong.empty(); ++round) {
      std::vector<char> drop(active.size(), 0);
      for (int k : wrong) drop[static_cast<std::size_t>(k)] = 1;
      std::vector<ActiveRow> kept;
      for (std::size_t k = 0; k < active.size(); ++k)
        if (!drop[k]) kept.push_back(active[k]);
      active.swap(kept);
      const PolishOutcome again = polish_once(prog, P_full, s, active, opts, out, wrong);
      if (again == PolishOutcome::Accepted) return out;
      if (again == PolishOutcome::Rejected) break;
    }
  }
  return std::nullopt;
}

bool infeasibility_certificate(const SparseConvexProgram& prog, const Vec& dy, double eps) {
  const double ny = inf_norm(dy);
  if (ny < 1e-12) return false;
  if (inf_norm(prog.A.transpose() * dy) > eps * ny) return false;
  double support = 0.0;
  for (int i = 0; i < prog.ncon(); ++i) {
    if (dy[i] > eps * ny) {
      if (is_inf(prog.u[i])) return false;
      support += prog.u[i] * dy[i];
    } else if (dy[i] < -eps * ny) {
      if (is_inf(prog.l[i])) return false;
      support += prog.l[i] * dy[i];
    }
  }
  return support < -eps * ny;
}

}  // namespace

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::PrimalInfeasible: return "primal_infeasible";
    case SolveStatus::MaxIters: return "max_iters";
  }
  return "unknown";
}

double SparseConvexProgram::objective(const Vec& z) const {
  double v = objective_constant + q.dot(z);
  if (P.nonZeros() > 0) v += 0.5 * z.dot(P * z);
  return v;
}

bool SparseConvexProgram::is_valid(std::string* why) const {
  auto fail = [&](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  if (q.size() != nvar) return fail("q has the wrong length");
  if (A.cols() != nvar) return fail("A has the wrong column count");
  if (l.size() != A.rows() || u.size() != A.rows()) return fail("l/u length mismatch");
  if ((l.array() > u.array()).any()) return fail("l > u");
  if (P.size() > 0) {
    if (P.rows() != nvar || P.cols() != nvar) return fail("P has the wrong shape");
    if ((SpMat(P.transpose()) - P).norm() > 1e-12 * (1.0 + P.norm())) return fail("P is not symmetric");
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    for (int t = 0; t < 20; ++t) {
      Vec v(nvar);
      for (int j = 0; j < nvar; ++j) v[j] = normal(rng);
      if (v.dot(P * v) < -1e-10 * v.squaredNorm()) return fail("P is not positive semidefinite");
    }
  }
  return true;
}

SolveReport solve(const SparseConvexProgram& prog, const SolveOptions& opts) {
  const int n = prog.nvar;
  const int m = prog.ncon();
  const SpMat P_full = prog.P.size() > 0 ? prog.P : SpMat(n, n);
  const ScaledProgram s = equilibrate(prog, opts.scaling_passes);

  Vec xs = Vec::Zero(n);
  if (opts.initial_point) xs = opts.initial_point->cwiseQuotient(s.D);
  Vec zs = (s.A * xs).cwiseMax(s.l).cwiseMin(s.u);
  Vec ys = Vec::Zero(m);

  double rho = opts.rho;
  Vec rho_vec = rho_vector(s.l, s.u, rho);
  KktSolver kkt(s, opts.sigma);
  kkt.factor(rho_vec);

  SolveReport report;
  auto unscale = [&](Vec& x, Vec& z, Vec& y) {
    x = s.D.cwiseProduct(xs);
    z = zs.cwiseQuotient(s.E);
    y = s.E.cwiseProduct(ys) / s.c;
  };
  auto finish = [&](SolveStatus status, const Vec& x, const Vec& y, const Residuals& r, int iters,
                    bool polished) {
    report.status = status;
    report.z = x;
    report.y = y;
    report.objective = prog.objective(x);
    report.primal_residual = r.prim;
    report.dual_residual = r.dual;
    report.iterations = iters;
    report.polished = polished;
    return report;
  };

  Vec x, z, y;
  Residuals r;
  int last_polish = 0;
  for (int iter = 1; iter <= opts.max_iters; ++iter) {
    const Vec rhs = opts.sigma * xs - s.q + s.A.transpose() * (rho_vec.cwiseProduct(zs) - ys);
    const Vec xt = kkt.solve(rhs);
    const Vec zt = s.A * xt;
    const Vec z_relaxed = opts.alpha * zt + (1.0 - opts.alpha) * zs;
    xs = opts.alpha * xt + (1.0 - opts.alpha) * xs;
    const Vec z_new = (z_relaxed + ys.cwiseQuotient(rho_vec)).cwiseMax(s.l).cwiseMin(s.u);
    const Vec y_new = ys + rho_vec.cwiseProduct(z_relaxed - z_new);
    const Vec dys = y_new - ys;
    zs = z_new;
    ys = y_new;

    const bool last = iter == opts.max_iters;
    if (iter % opts.check_interval == 0 || last) {
      unscale(x, z, y);
      r = residuals(prog, P_full, x, z, y, opts);
      if (r.converged()) {
        if (opts.polish) {
          if (auto p = polish(prog, P_full, s, zs, ys, opts)) {
            const Vec Ax = prog.A * p->x;
            const Residuals rp =
                residuals(prog, P_full, p->x, Ax.cwiseMax(prog.l).cwiseMin(prog.u), p->y, opts);
            return finish(SolveStatus::Optimal, p->x, p->y, rp, iter, true);
          }
        }
        return finish(SolveStatus::Optimal, x, y, r, iter, false);
      }
      // Early polish: LPs often have a correct active set long before the
      // ADMM residuals reach tight tolerances.
      const double loose = 1e-4 / std::max(opts.eps_rel, 1e-12);
      if (opts.polish && iter - last_polish >= 200 &&
          r.prim <= loose * (r.eps_prim - opts.eps_abs) + 1e-4 &&
          r.dual <= loose * (r.eps_dual - opts.eps_abs) + 1e-4) {
        last_polish = iter;
        if (auto p = polish(prog, P_full, s, zs, ys, opts)) {
          const Vec Ax = prog.A * p->x;
          const Residuals rp =
              residuals(prog, P_full, p->x, Ax.cwiseMax(prog.l).cwiseMin(prog.u), p->y, opts);
          return finish(SolveStatus::Optimal, p->x, p->y, rp, iter, true);
        }
      }
      const Vec dy = s.E.cwiseProduct(dys) / s.c;
      if (infeasibility_certificate(prog, dy, opts.eps_primal_infeasible)) {
        return finish(SolveStatus::PrimalInfeasible, x, dy / inf_norm(dy), r, iter, false);
      }
    }

    if (opts.adaptive_rho_interval > 0 && iter % opts.adaptive_rho_interval == 0) {
      const Vec Ax = s.A * xs;
      const Vec Px = s.P * xs;
      const Vec Aty = s.A.transpose() * ys;
      const double prim = inf_norm(Ax - zs) / std::max({inf_norm(Ax), inf_norm(zs), kTiny});
      const double dual = inf_norm(Px + s.q + Aty) /
                          std::max({inf_norm(Px), inf_norm(Aty), inf_norm(s.q), kTiny});
      double rho_new = rho * std::sqrt(prim / std::max(dual, kTiny));
      rho_new = std::clamp(rho_new, 1e-6, 1e6);
      if (rho_new > 5.0 * rho || rho_new < 0.2 * rho) {
        rho = rho_new;
        rho_vec = rho_vector(s.l, s.u, rho);
        kkt.factor(rho_vec);
      }
    }
  }
  unscale(x, z, y);
  r = residuals(prog, P_full, x, z, y, opts);
  return finish(SolveStatus::MaxIters, x, y, r, opts.max_iters, false);
}

FeasibilityResult feasibility(const SparseConvexProgram& prog, const SolveOptions& opts) {
  SparseConvexProgram zero = prog;
  zero.P = SpMat(prog.nvar, prog.nvar);
  zero.q = Vec::Zero(prog.nvar);
  zero.objective_constant = 0.0;
  const SolveReport r = solve(zero, opts);
  if (r.status == SolveStatus::Optimal) return Feasible{r.z};
  if (r.status == SolveStatus::MaxIters) {
    const Vec Az = prog.A * r.z;
    double viol = 0.0;
    for (int i = 0; i < prog.ncon(); ++i) {
      if (!is_inf(prog.l[i])) viol = std::max(viol, prog.l[i] - Az[i]);
      if (!is_inf(prog.u[i])) viol = std::max(viol, Az[i] - prog.u[i]);
    }
    if (viol <= 1e-6) return Feasible{r.z};
  }
  return Infeasible{};
}

void write_program(const SparseConvexProgram& prog, std::ostream& os) {
  os.precision(17);
  auto dump = [&](const char* name, const SpMat& M) {
    os << "%% " << name << " coordinate real general\n";
    os << M.rows() << ' ' << M.cols() << ' ' << M.nonZeros() << '\n';
    for (int k = 0; k < M.outerSize(); ++k)
      for (SpMat::InnerIterator it(M, k); it; ++it)
        os << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
  };
  auto dump_vec = [&](const char* name, const Vec& v) {
    os << "%% " << name << " array real general\n" << v.size() << " 1\n";
    for (Eigen::Index i = 0; i < v.size(); ++i) os << v[i] << '\n';
  };
  dump("P", prog.P.size() > 0 ? prog.P : SpMat(prog.nvar, prog.nvar));
  dump_vec("q", prog.q);
  dump("A", prog.A);
  dump_vec("l", prog.l);
  dump_vec("u", prog.u);
}

void write_program(const SparseConvexProgram& prog, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_program(prog, os);
}

}  // namespace laxsynth::convex
