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


#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "revising/constraints.hpp"

namespace revising {

/// Phase-1 problem min ||rho||_1 s.t. B u + rho >= v, rho >= 0, u free.
/// Non-owning view; the matrix and right-hand side must outlive the solve.
struct LPInstance {
  const ConstraintMatrix* B = nullptr;
  std::span<const double> rhs;
};

enum class LPStatus { Optimal, IterationLimit, NumericalFailure };
std::string to_string(LPStatus s);

/// How Omega = B^T W B is formed each iteration.
enum class NormalAssembly {
  Auto,      // column-pair plan for sparse B, dense product otherwise
  PairPlan,  // weighted sums over precomputed shared-row lists
  Dense,     // dense B^T W B
};

struct LPOptions {
  double tol = 1e-9;  // relative duality gap
  double feas_tol = 1e-8;  // relative primal and dual residuals
  int max_iter = 200;
  int threads = 1;
  NormalAssembly assembly = NormalAssembly::Auto;
};

struct LPResiduals {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
};

struct LPResult {
  double objective = 0.0;  // sum of rho
  std::vector<double> u;
  std::vector<double> rho;
  LPStatus status = LPStatus::NumericalFailure;
  int iterations = 0;
  LPResiduals residuals;
};

/// For every column pair (i, j), i <= j, the rows where both columns are
/// nonzero and the product of the two entries there.
class ColumnPairPlan {
 public:
  explicit ColumnPairPlan(const ConstraintMatrix& B);

  std::uint64_t cols() const { return n_; }
  /// Total number of stored (row, sign) entries over all pairs.
  std::uint64_t entries() const { return rows_.size(); }

  std::span<const std::uint32_t> rows(std::uint64_t i, std::uint64_t j) const;
  std::span<const std::int8_t> signs(std::uint64_t i, std::uint64_t j) const;

  /// Omega_ij = sum_k S_ij(k) w(R_ij(k)); fills both triangles.
  void assemble(std::span<const double> w, Eigen::MatrixXd& omega,
                int threads = 1) const;

  /// Bytes the plan for B would take, without building it.
  static std::uint64_t estimate_entries(const ConstraintMatrix& B);

 private:
  std::uint64_t slot(std::uint64_t i, std::uint64_t j) const {
    return i * n_ - i * (i + 1) / 2 + j;
  }

  std::uint64_t n_ = 0;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint32_t> rows_;
  std::vector<std::int8_t> signs_;
};

/// Factorized normal matrix A K A^T of the identified standard-form LP,
/// reduced to the n x n Schur complement Omega = B^T diag(k1 k2 / (k1 + k2)) B.
class NormalEquations {
 public:
  NormalEquations(const ConstraintMatrix& B, NormalAssembly assembly,
                  int threads);

  /// Forms and factors Omega with jitter escalation; false on failure.
  bool factorize(std::span<const double> k1, std::span<const double> k2);
  /// p = (A K A^T)^{-1} q for q = (q1 in R^n, q2 in R^m).
  Eigen::VectorXd solve(const Eigen::VectorXd& q) const;

  double jitter() const { return jitter_; }
  NormalAssembly assembly() const { return assembly_; }
  const ConstraintMatrix& matrix() const { return B_; }

 private:
  const ConstraintMatrix& B_;
  NormalAssembly assembly_;
  int threads_;
  std::unique_ptr<ColumnPairPlan> plan_;
  Eigen::MatrixXd dense_;  // m x n copy for the dense path
  Eigen::VectorXd k1_, z_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  double jitter_ = 0.0;
};

/// One-shot block solve of (A K A^T) p = q using a prebuilt plan. Throws
/// std::runtime_error if Omega cannot be factored.
Eigen::VectorXd solve_normal_equations(const ColumnPairPlan& plan,
                                       const ConstraintMatrix& B,
                                       std::span<const double> k1,
                                       std::span<const double> k2,
                                       const Eigen::VectorXd& q);

/// Operators of the identification b = [0; -1], c = [-v; 0],
/// A^T = [[-B, -I], [0, -I]] with x, s in R^{2m} and lambda in R^{n+m}.
struct ArtificialOperators {
  const ConstraintMatrix& B;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;            // A x
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& l) const;  // A^T l
  Eigen::VectorXd b() const;
  Eigen::VectorXd c(std::span<const double> v) const;
};

struct KKTState {
  Eigen::VectorXd x, lambda, s;
};

struct KKTStep {
  Eigen::VectorXd dx, dlambda, ds;
};

/// Solves [0 A^T I; A 0 0; S 0 X] (dx, dl, ds) = (-r_c, -r_b, L) where the
/// residuals are taken at `state`. The normal matrix must already be
/// factored for K = X S^{-1}.
KKTStep solve_kkt_step(const ArtificialOperators& ops,
                       const NormalEquations& normal, const KKTState& state,
                       const Eigen::VectorXd& r_b, const Eigen::VectorXd& r_c,
                       const Eigen::VectorXd& L);

/// Mehrotra predictor-corrector on the artificial-variable LP.
LPResult solve_artificial(const LPInstance& inst, const LPOptions& opts = {});

/// Bounded dual simplex on the equivalent problem max v^T y s.t. B^T y = 0,
/// 0 <= y <= 1. Dense basis of size n; slow but simple. Limits m <= 20000,
/// n <= 300.
LPResult reference_solve(const LPInstance& inst);

/// Reference solve for a dense real matrix (row-major, rows x cols).
LPResult reference_solve_dense(std::uint64_t rows, std::uint64_t cols,
                               std::span<const double> B,
                               std::span<const double> rhs);

}  // namespace revising
