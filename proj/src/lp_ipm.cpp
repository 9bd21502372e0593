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


#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "revising/lp.hpp"
#include "revising/parallel.hpp"

namespace revising {

std::string to_string(LPStatus s) {
  switch (s) {
    case LPStatus::Optimal:
      return "Optimal";
    case LPStatus::IterationLimit:
      return "IterationLimit";
    case LPStatus::NumericalFailure:
      return "NumericalFailure";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Column-pair plan

std::uint64_t ColumnPairPlan::estimate_entries(const ConstraintMatrix& B) {
  // Exact count would need the merge; bound it by assuming independent
  // placement of nonzeros.
  const double m = static_cast<double>(std::max<std::uint64_t>(B.rows(), 1));
  double total = 0.0;
  std::vector<double> len(B.cols());
  for (std::uint64_t j = 0; j < B.cols(); ++j) {
    len[j] = static_cast<double>(B.col_ptr()[j + 1] - B.col_ptr()[j]);
  }
  double sum = 0.0, sumsq = 0.0;
  for (double l : len) {
    sum += l;
    sumsq += l * l;
  }
  total = sum + (sum * sum - sumsq) / (2.0 * m);
  return static_cast<std::uint64_t>(total);
}

ColumnPairPlan::ColumnPairPlan(const ConstraintMatrix& B) : n_(B.cols()) {
  offsets_.assign(n_ * (n_ + 1) / 2 + 1, 0);
  rows_.reserve(estimate_entries(B));
  signs_.reserve(rows_.capacity());
  for (std::uint64_t i = 0; i < n_; ++i) {
    auto ri = B.column_rows(i);
    auto vi = B.column_values(i);
    for (std::uint64_t j = i; j < n_; ++j) {
      auto rj = B.column_rows(j);
      auto vj = B.column_values(j);
      std::size_t a = 0, b = 0;
      while (a < ri.size() && b < rj.size()) {
        if (ri[a] < rj[b]) {
          ++a;
        } else if (rj[b] < ri[a]) {
          ++b;
        } else {
          rows_.push_back(ri[a]);
          signs_.push_back(static_cast<std::int8_t>(vi[a] * vj[b]));
          ++a;
          ++b;
        }
      }
      offsets_[slot(i, j) + 1] = rows_.size();
    }
  }
}

std::span<const std::uint32_t> ColumnPairPlan::rows(std::uint64_t i,
                                                   std::uint64_t j) const {
  if (i > j) std::swap(i, j);
  const auto s = slot(i, j);
  return {rows_.data() + offsets_[s], rows_.data() + offsets_[s + 1]};
}

std::span<const std::int8_t> ColumnPairPlan::signs(std::uint64_t i,
                                                  std::uint64_t j) const {
  if (i > j) std::swap(i, j);
  const auto s = slot(i, j);
  return {signs_.data() + offsets_[s], signs_.data() + offsets_[s + 1]};
}

void ColumnPairPlan::assemble(std::span<const double> w, Eigen::MatrixXd& omega,
                              int threads) const {
  omega.resize(n_, n_);
  // Each (i, j) slot is written by exactly one task.
  parallel_for(0, static_cast<std::int64_t>(n_), threads, [&](std::int64_t i) {
    for (std::uint64_t j = i; j < n_; ++j) {
      const auto s = slot(i, j);
      double acc = 0.0;
      for (auto k = offsets_[s]; k < offsets_[s + 1]; ++k) {
        acc += signs_[k] * w[rows_[k]];
      }
      omega(i, j) = acc;
      omega(j, i) = acc;
    }
  });
}

// ---------------------------------------------------------------------------
// Normal equations

NormalEquations::NormalEquations(const ConstraintMatrix& B,
                                 NormalAssembly assembly, int threads)
    : B_(B), assembly_(assembly), threads_(std::max(1, threads)) {
  if (assembly_ == NormalAssembly::Auto) {
    // The plan pays off only when pairs of columns rarely share rows.
    const double dense_cost = static_cast<double>(B.rows()) * B.cols() * B.cols() / 2.0;
    const double plan_cost = static_cast<double>(ColumnPairPlan::estimate_entries(B));
    assembly_ = plan_cost * 8.0 < dense_cost ? NormalAssembly::PairPlan
                                             : NormalAssembly::Dense;
  }
  if (assembly_ == NormalAssembly::PairPlan) {
    plan_ = std::make_unique<ColumnPairPlan>(B);
  } else {
    dense_ = Eigen::MatrixXd::Zero(B.rows(), B.cols());
    for (std::uint64_t j = 0; j < B.cols(); ++j) {
      for (auto k = B.col_ptr()[j]; k < B.col_ptr()[j + 1]; ++k) {
        dense_(B.row_idx()[k], j) = B.values()[k];
      }
    }
  }
}

bool NormalEquations::factorize(std::span<const double> k1,
                                std::span<const double> k2) {
  const auto m = static_cast<Eigen::Index>(B_.rows());
  const auto n = static_cast<Eigen::Index>(B_.cols());
  k1_.resize(m);
  z_.resize(m);
  Eigen::VectorXd w(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    k1_[r] = k1[r];
    z_[r] = k1[r] + k2[r];
    w[r] = k1[r] * k2[r] / z_[r];
  }
  Eigen::MatrixXd omega(n, n);
  if (plan_) {
    plan_->assemble({w.data(), static_cast<std::size_t>(m)}, omega, threads_);
  } else {
    Eigen::MatrixXd scaled = dense_.array().colwise() * w.array().sqrt();
    omega.setZero();
    omega.selfadjointView<Eigen::Lower>().rankUpdate(scaled.transpose());
    omega.triangularView<Eigen::StrictlyUpper>() = omega.transpose();
  }
  double scale = n > 0 ? omega.diagonal().mean() : 1.0;
  if (!(scale > 0.0) || !std::isfinite(scale)) scale = 1.0;
  for (double j = 1e-12; j <= 1e-6 * (1 + 1e-9); j *= 10.0) {
    Eigen::MatrixXd trial = omega;
    trial.diagonal().array() += j * scale;
    llt_.compute(trial);
    if (llt_.info() == Eigen::Success) {
      jitter_ = j * scale;
      return true;
    }
  }
  return false;
}

Eigen::VectorXd NormalEquations::solve(const Eigen::VectorXd& q) const {
  const auto m = static_cast<Eigen::Index>(B_.rows());
  const auto n = static_cast<Eigen::Index>(B_.cols());
  // p1 = Omega^{-1} (q1 - B^T D Z^{-1} q2), p2 = Z^{-1} (q2 - D B p1).
  Eigen::VectorXd t = k1_.cwiseProduct(q.tail(m)).cwiseQuotient(z_);
  Eigen::VectorXd bt(n);
  B_.multiply_transpose({t.data(), static_cast<std::size_t>(m)},
                        {bt.data(), static_cast<std::size_t>(n)});
  Eigen::VectorXd p(n + m);
  p.head(n) = llt_.solve(q.head(n) - bt);
  Eigen::VectorXd p1 = p.head(n);
  Eigen::VectorXd bp(m);
  B_.multiply({p1.data(), static_cast<std::size_t>(n)},
              {bp.data(), static_cast<std::size_t>(m)});
  p.tail(m) = (q.tail(m) - k1_.cwiseProduct(bp)).cwiseQuotient(z_);
  return p;
}

Eigen::VectorXd solve_normal_equations(const ColumnPairPlan& plan,
                                       const ConstraintMatrix& B,
                                       std::span<const double> k1,
                                       std::span<const double> k2,
                                       const Eigen::VectorXd& q) {
  if (plan.cols() != B.cols()) throw std::invalid_argument("plan does not match B");
  if (k1.size() != B.rows() || k2.size() != B.rows()) {
    throw std::invalid_argument("diagonal length must equal the row count");
  }
  for (std::size_t r = 0; r < k1.size(); ++r) {
    if (!(k1[r] > 0.0) || !(k2[r] > 0.0)) {
      throw std::invalid_argument("diagonals must be strictly positive");
    }
  }
  const auto m = static_cast<Eigen::Index>(B.rows());
  const auto n = static_cast<Eigen::Index>(B.cols());
  Eigen::VectorXd w(m), z(m), d(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    d[r] = k1[r];
    z[r] = k1[r] + k2[r];
    w[r] = k1[r] * k2[r] / z[r];
  }
  Eigen::MatrixXd omega;
  plan.assemble({w.data(), static_cast<std::size_t>(m)}, omega);
  double scale = n > 0 ? omega.diagonal().mean() : 1.0;
  if (!(scale > 0.0)) scale = 1.0;
  Eigen::LLT<Eigen::MatrixXd> llt;
  bool ok = false;
  for (double j = 1e-12; j <= 1e-6 * (1 + 1e-9) && !ok; j *= 10.0) {
    Eigen::MatrixXd trial = omega;
    trial.diagonal().array() += j * scale;
    llt.compute(trial);
    ok = llt.info() == Eigen::Success;
  }
  if (!ok) throw std::runtime_error("normal matrix factorization failed");
  Eigen::VectorXd t = d.cwiseProduct(q.tail(m)).cwiseQuotient(z);
  Eigen::VectorXd bt(n);
  B.multiply_transpose({t.data(), static_cast<std::size_t>(m)},
                       {bt.data(), static_cast<std::size_t>(n)});
  Eigen::VectorXd p(n + m);
  p.head(n) = llt.solve(q.head(n) - bt);
  Eigen::VectorXd p1 = p.head(n);
  Eigen::VectorXd bp(m);
  B.multiply({p1.data(), static_cast<std::size_t>(n)},
             {bp.data(), static_cast<std::size_t>(m)});
  p.tail(m) = (q.tail(m) - d.cwiseProduct(bp)).cwiseQuotient(z);
  return p;
}

// ---------------------------------------------------------------------------
// Operators and KKT step

Eigen::VectorXd ArtificialOperators::apply(const Eigen::VectorXd& x) const {
  const auto m = static_cast<Eigen::Index>(B.rows());
  const auto n = static_cast<Eigen::Index>(B.cols());
  Eigen::VectorXd out(n + m);
  Eigen::VectorXd x1 = x.head(m);
  Eigen::VectorXd bt(n);
  B.multiply_transpose({x1.data(), static_cast<std::size_t>(m)},
                       {bt.data(), static_cast<std::size_t>(n)});
  out.head(n) = -bt;
  out.tail(m) = -x.head(m) - x.tail(m);
  return out;
}

Eigen::VectorXd ArtificialOperators::apply_transpose(
    const Eigen::VectorXd& l) const {
  const auto m = static_cast<Eigen::Index>(B.rows());
  const auto n = static_cast<Eigen::Index>(B.cols());
  Eigen::VectorXd out(2 * m);
  Eigen::VectorXd l1 = l.head(n);
  Eigen::VectorXd bl(m);
  B.multiply({l1.data(), static_cast<std::size_t>(n)},
             {bl.data(), static_cast<std::size_t>(m)});
  out.head(m) = -bl - l.tail(m);
  out.tail(m) = -l.tail(m);
  return out;
}

Eigen::VectorXd ArtificialOperators::b() const {
  const auto m = static_cast<Eigen::Index>(B.rows());
  const auto n = static_cast<Eigen::Index>(B.cols());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n + m);
  out.tail(m).setConstant(-1.0);
  return out;
}

Eigen::VectorXd ArtificialOperators::c(std::span<const double> v) const {
  const auto m = static_cast<Eigen::Index>(B.rows());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * m);
  for (Eigen::Index r = 0; r < m; ++r) out[r] = -v[r];
  return out;
}

KKTStep solve_kkt_step(const ArtificialOperators& ops,
                       const NormalEquations& normal, const KKTState& st,
                       const Eigen::VectorXd& r_b, const Eigen::VectorXd& r_c,
                       const Eigen::VectorXd& L) {
  // dl = (A S^{-1} X A^T)^{-1} (-r_b - A S^{-1} (X r_c + L)),
  // ds = -r_c - A^T dl, dx = S^{-1} (L - X ds).
  KKTStep step;
  Eigen::VectorXd inner = (st.x.cwiseProduct(r_c) + L).cwiseQuotient(st.s);
  step.dlambda = normal.solve(-r_b - ops.apply(inner));
  step.ds = -r_c - ops.apply_transpose(step.dlambda);
  step.dx = (L - st.x.cwiseProduct(step.ds)).cwiseQuotient(st.s);
  return step;
}

// ---------------------------------------------------------------------------
// Mehrotra predictor-corrector

namespace {

double max_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
  double alpha = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv[i] < 0.0) alpha = std::min(alpha, -v[i] / dv[i]);
  }
  return alpha;
}

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

}  // namespace

LPResult solve_artificial(const LPInstance& inst, const LPOptions& opts) {
  if (inst.B == nullptr) throw std::invalid_argument("LP instance without matrix");
  const ConstraintMatrix& B = *inst.B;
  const auto m = static_cast<Eigen::Index>(B.rows());
  const auto n = static_cast<Eigen::Index>(B.cols());
  if (m < 1 || n < 1) throw std::invalid_argument("LP needs m, n >= 1");
  if (inst.rhs.size() != static_cast<std::size_t>(m)) {
    throw std::invalid_argument("right-hand side length must equal the row count");
  }
  for (double v : inst.rhs) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite right-hand side");
  }

  ArtificialOperators ops{B};
  NormalEquations normal(B, opts.assembly, opts.threads);
  const Eigen::VectorXd b = ops.b();
  const Eigen::VectorXd c = ops.c(inst.rhs);
  const double b_norm = b.lpNorm<Eigen::Infinity>();
  const double c_norm = c.lpNorm<Eigen::Infinity>();

  LPResult result;
  auto finish = [&](const KKTState& st, LPStatus status, int iters,
                    const LPResiduals& res) {
    result.status = status;
    result.iterations = iters;
    result.residuals = res;
    result.u.assign(st.lambda.data(), st.lambda.data() + n);
    std::vector<double> bu(m);
    B.multiply(result.u, bu);
    result.rho.resize(m);
    result.objective = 0.0;
    for (Eigen::Index r = 0; r < m; ++r) {
      result.rho[r] = std::max(0.0, inst.rhs[r] - bu[r]);
      result.objective += result.rho[r];
    }
    return result;
  };

  // Starting point from the least-squares heuristic with a positivity shift.
  std::vector<double> ones(m, 1.0);
  KKTState st;
  if (!normal.factorize(ones, ones)) {
    st.x = Eigen::VectorXd::Ones(2 * m);
    st.s = Eigen::VectorXd::Ones(2 * m);
    st.lambda = Eigen::VectorXd::Zero(n + m);
    return finish(st, LPStatus::NumericalFailure, 0, {});
  }
  st.x = ops.apply_transpose(normal.solve(b));
  st.lambda = normal.solve(ops.apply(c));
  st.s = c - ops.apply_transpose(st.lambda);
  const double dx = std::max(-1.5 * st.x.minCoeff(), 0.0);
  const double ds = std::max(-1.5 * st.s.minCoeff(), 0.0);
  st.x.array() += dx;
  st.s.array() += ds;
  const double xs = st.x.dot(st.s);
  const double sx = st.x.sum(), ss = st.s.sum();
  st.x.array() += (ss > 0 ? 0.5 * xs / ss : 0.0) + 1e-8;
  st.s.array() += (sx > 0 ? 0.5 * xs / sx : 0.0) + 1e-8;

  const double dim = static_cast<double>(2 * m);
  LPResiduals res;
  std::vector<double> k1(m), k2(m);
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    const Eigen::VectorXd r_b = ops.apply(st.x) - b;
    const Eigen::VectorXd r_c = ops.apply_transpose(st.lambda) + st.s - c;
    const double mu = st.x.dot(st.s) / dim;
    const double pobj = c.dot(st.x);
    res.primal = r_b.lpNorm<Eigen::Infinity>() / (1.0 + b_norm);
    res.dual = r_c.lpNorm<Eigen::Infinity>() / (1.0 + c_norm);
    res.gap = st.x.dot(st.s) / (1.0 + std::abs(pobj));
    if (!std::isfinite(mu) || !all_finite(st.lambda)) {
      return finish(st, LPStatus::NumericalFailure, iter, res);
    }
    if (res.gap <= opts.tol && res.primal <= opts.feas_tol &&
        res.dual <= opts.feas_tol) {
      return finish(st, LPStatus::Optimal, iter, res);
    }

    for (Eigen::Index r = 0; r < m; ++r) {
      k1[r] = st.x[r] / st.s[r];
      k2[r] = st.x[m + r] / st.s[m + r];
    }
    if (!normal.factorize(k1, k2)) {
      return finish(st, LPStatus::NumericalFailure, iter, res);
    }

    // Predictor.
    const Eigen::VectorXd xs_e = st.x.cwiseProduct(st.s);
    KKTStep aff = solve_kkt_step(ops, normal, st, r_b, r_c, -xs_e);
    const double a_pri = max_step(st.x, aff.dx);
    const double a_dual = max_step(st.s, aff.ds);
    const double mu_aff =
        (st.x + a_pri * aff.dx).dot(st.s + a_dual * aff.ds) / dim;
    double sigma = std::pow(mu_aff / mu, 3.0);
    // Keep complementarity from collapsing ahead of primal feasibility.
    if (res.primal > 1e3 * res.gap && res.primal > opts.feas_tol) sigma = std::max(sigma, 0.5);

    // Corrector.
    Eigen::VectorXd L = -xs_e - aff.dx.cwiseProduct(aff.ds);
    L.array() += sigma * mu;
    KKTStep step = solve_kkt_step(ops, normal, st, r_b, r_c, L);
    if (!all_finite(step.dx) || !all_finite(step.ds) || !all_finite(step.dlambda)) {
      return finish(st, LPStatus::NumericalFailure, iter, res);
    }
    // Capped below 1 so no iterate lands exactly on the boundary, where the
    // scaling x / s would overflow.
    const double eta = std::min(0.9999, std::max(0.99, 1.0 - mu));
    const double alpha_p = std::min(1.0, eta * max_step(st.x, step.dx));
    const double alpha_d = std::min(1.0, eta * max_step(st.s, step.ds));
    st.x += alpha_p * step.dx;
    st.lambda += alpha_d * step.dlambda;
    st.s += alpha_d * step.ds;
  }
  return finish(st, LPStatus::IterationLimit, opts.max_iter, res);
}

}  // namespace revising
