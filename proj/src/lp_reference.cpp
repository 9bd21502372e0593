// Copyright 2026 The revising Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Bounded dual simplex used as a differential-testing oracle.
//
// Works on  min -v^T y  s.t.  B^T y + a = 0,  0 <= y <= 1,  a = 0,
// whose dual is the artificial-variable problem with u = -pi. The slack
// basis with y_j at its upper bound exactly when v_j > 0 is dual feasible,
// so no phase one is needed.

#include <cmath>
#include <limits>
#include <stdexcept>

#include "revising/lp.hpp"

namespace revising {

namespace {

constexpr double kPrimalTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr int kRefactorEvery = 50;

LPResult dual_simplex(const Eigen::MatrixXd& B, std::span<const double> v) {
  const Eigen::Index m = B.rows();
  const Eigen::Index n = B.cols();
  const Eigen::Index total = m + n;  // y_0..y_{m-1}, a_0..a_{n-1}

  // Column k of [B^T | I].
  auto column = [&](Eigen::Index k) -> Eigen::VectorXd {
    if (k < m) return B.row(k).transpose();
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[k - m] = 1.0;
    return e;
  };
  auto cost = [&](Eigen::Index k) { return k < m ? -v[k] : 0.0; };
  auto upper = [&](Eigen::Index k) { return k < m ? 1.0 : 0.0; };

  std::vector<Eigen::Index> basis(n);
  std::vector<int> where(total, -1);  // basis row or -1
  std::vector<char> at_upper(total, 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    basis[i] = m + i;
    where[m + i] = static_cast<int>(i);
  }
  for (Eigen::Index j = 0; j < m; ++j) at_upper[j] = v[j] > 0.0;

  Eigen::MatrixXd binv = Eigen::MatrixXd::Identity(n, n);
  auto refactor = [&] {
    Eigen::MatrixXd AB(n, n);
    for (Eigen::Index i = 0; i < n; ++i) AB.col(i) = column(basis[i]);
    binv = AB.partialPivLu().inverse();
  };

  const long max_iter = 50L * (total + 10);
  for (long iter = 0; iter < max_iter; ++iter) {
    if (iter % kRefactorEvery == 0 && iter > 0) refactor();

    // x_B = -B_B^{-1} sum_{nonbasic at upper} A_j.
    Eigen::VectorXd t = Eigen::VectorXd::Zero(n);
    for (Eigen::Index j = 0; j < m; ++j) {
      if (where[j] < 0 && at_upper[j]) t += B.row(j).transpose();
    }
    const Eigen::VectorXd xb = -binv * t;

    // Most infeasible basic variable.
    Eigen::Index r = -1;
    double worst = kPrimalTol;
    bool below = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double lo = 0.0, hi = upper(basis[i]);
      if (lo - xb[i] > worst) {
        worst = lo - xb[i];
        r = i;
        below = true;
      } else if (xb[i] - hi > worst) {
        worst = xb[i] - hi;
        r = i;
        below = false;
      }
    }

    Eigen::VectorXd cb(n);
    for (Eigen::Index i = 0; i < n; ++i) cb[i] = cost(basis[i]);
    const Eigen::VectorXd pi = binv.transpose() * cb;

    if (r < 0) {
      LPResult out;
      out.status = LPStatus::Optimal;
      out.iterations = static_cast<int>(iter);
      out.u.resize(n);
      for (Eigen::Index i = 0; i < n; ++i) out.u[i] = -pi[i];
      const Eigen::VectorXd bu = B * (-pi);
      out.rho.resize(m);
      double primal = 0.0;
      for (Eigen::Index j = 0; j < m; ++j) {
        out.rho[j] = std::max(0.0, v[j] - bu[j]);
        out.objective += out.rho[j];
        const double yj = where[j] >= 0 ? xb[where[j]] : (at_upper[j] ? 1.0 : 0.0);
        primal += v[j] * yj;
      }
      out.residuals.gap = std::abs(primal - out.objective);
      return out;
    }

    // Pivot row alpha_j = (B_B^{-1})_r . A_j and reduced costs.
    const Eigen::VectorXd rho_r = binv.row(r).transpose();
    const Eigen::VectorXd alpha_y = B * rho_r;
    const Eigen::VectorXd bpi = B * pi;
    Eigen::Index enter = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_alpha = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (where[j] >= 0) continue;
      const double a = alpha_y[j];
      if (std::abs(a) < kPivotTol) continue;
      // Leaving below its lower bound must rise: increase a variable at its
      // lower bound with a < 0 or decrease one at its upper bound with a > 0.
      // The mirror case flips both signs.
      const bool ok = below ? (at_upper[j] ? a > 0 : a < 0)
                            : (at_upper[j] ? a < 0 : a > 0);
      if (!ok) continue;
      const double d = cost(j) - bpi[j];
      const double ratio = std::abs(d / a);
      if (ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && std::abs(a) > std::abs(best_alpha))) {
        best_ratio = ratio;
        best_alpha = a;
        enter = j;
      }
    }
    if (enter < 0) {
      throw std::runtime_error("reference simplex: primal infeasible (unexpected)");
    }

    // Basis change with an eta update of the inverse.
    const Eigen::VectorXd w = binv * column(enter);
    const double piv = w[r];
    if (std::abs(piv) < kPivotTol) {
      refactor();
      continue;
    }
    binv.row(r) /= piv;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != r && w[i] != 0.0) binv.row(i) -= w[i] * binv.row(r);
    }
    const Eigen::Index leave = basis[r];
    where[leave] = -1;
    at_upper[leave] = below ? 0 : (upper(leave) > 0.0);
    basis[r] = enter;
    where[enter] = static_cast<int>(r);
    at_upper[enter] = 0;
  }
  throw std::runtime_error("reference simplex: iteration cap reached");
}

}  // namespace

LPResult reference_solve_dense(std::uint64_t rows, std::uint64_t cols,
                               std::span<const double> B,
                               std::span<const double> rhs) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("LP needs m, n >= 1");
  if (rows > 20000 || cols > 300) {
    throw std::invalid_argument("reference solver limited to m <= 20000, n <= 300");
  }
  if (B.size() != rows * cols || rhs.size() != rows) {
    throw std::invalid_argument("reference solver size mismatch");
  }
  Eigen::MatrixXd M(rows, cols);
  for (std::uint64_t r = 0; r < rows; ++r) {
    for (std::uint64_t j = 0; j < cols; ++j) M(r, j) = B[r * cols + j];
  }
  return dual_simplex(M, rhs);
}

LPResult reference_solve(const LPInstance& inst) {
  if (inst.B == nullptr) throw std::invalid_argument("LP instance without matrix");
  auto dense = inst.B->dense();
  return reference_solve_dense(inst.B->rows(), inst.B->cols(), dense, inst.rhs);
}

}  // namespace revising
