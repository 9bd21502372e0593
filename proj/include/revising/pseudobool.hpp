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
#include <iosfwd>
#include <map>
#include <span>
#include <tuple>
#include <vector>

#include "revising/spin.hpp"

namespace revising {

/// Multilinear pseudo-Boolean polynomial sum_H c_H prod_{i in H} x_i, with
/// each monomial H stored as a bitmask over the variables.
struct MultilinearPolynomial {
  std::map<std::uint64_t, double> terms;
  int n_vars = 0;
  Convention convention = Convention::ZeroOne;

  int degree() const;
  /// Adds `c` to the coefficient of `mask`, dropping exact zeros.
  void add(std::uint64_t mask, double c);
  double coefficient(std::uint64_t mask) const;
  double abs_sum() const;
};

/// Ising Hamiltonian H = sum_i h_i s_i + sum_{i<j} J_ij s_i s_j + constant.
///
/// Couplings are stored in the same flattened upper-triangular order as the
/// pair block of the virtual spin, so (h, J) is exactly the coefficient
/// vector u with H(s) = <u, v(s)> + constant.
class QuadraticHamiltonian {
 public:
  QuadraticHamiltonian() = default;
  explicit QuadraticHamiltonian(int n,
                                Convention convention = Convention::PlusMinus);

  int size() const { return n_; }
  Convention convention() const { return convention_; }

  double bias(int i) const { return h_[i]; }
  double& bias(int i) { return h_[i]; }
  double coupling(int i, int j) const;
  void set_coupling(int i, int j, double value);
  void add_coupling(int i, int j, double value);
  double constant() const { return constant_; }
  double& constant() { return constant_; }

  std::span<const double> biases() const { return h_; }
  std::span<const double> couplings() const { return J_; }
  std::span<double> biases() { return h_; }
  std::span<double> couplings() { return J_; }

  /// Coefficient vector (h, J) aligned with the virtual spin.
  std::vector<double> coefficient_vector() const;
  static QuadraticHamiltonian from_coefficients(std::span<const double> u,
                                                int n, double constant = 0.0);

  /// Energy of the packed state `bits` read in this Hamiltonian's convention.
  double energy(std::uint64_t bits) const;

  /// Largest absolute coefficient (excluding the constant).
  double max_abs_coefficient() const;

  QuadraticHamiltonian& operator+=(const QuadraticHamiltonian& o);
  QuadraticHamiltonian& operator*=(double s);

 private:
  int n_ = 0;
  Convention convention_ = Convention::PlusMinus;
  std::vector<double> h_;
  std::vector<double> J_;
  double constant_ = 0.0;
};

/// Sum-of-monomials evaluation; conventions must match.
double evaluate(const MultilinearPolynomial& p, const SpinState& s);
/// Local-bias/coupling form including the constant.
double evaluate(const QuadraticHamiltonian& H, const SpinState& s);
/// Inner product of (h, J) with v(s) plus the constant. PlusMinus only.
double evaluate_virtual(const QuadraticHamiltonian& H, const SpinState& s);

/// Unique multilinear representation (0/1 convention) of a table of
/// 2^n values, via the subset Moebius transform.
MultilinearPolynomial fit_multilinear(std::span<const double> values);

/// d(eta, f(sigma)) over the N+M input/output variables.
MultilinearPolynomial hamming_hamiltonian(const Circuit& c);

struct RosenbergSubstitution {
  int i;
  int j;
  int aux;
};

struct RosenbergResult {
  MultilinearPolynomial q;
  std::vector<RosenbergSubstitution> subs;
};

/// Repeatedly replaces the most frequent variable pair among monomials of
/// degree >= 3 by a fresh variable a, adding C (x_i x_j - 2 a x_i - 2 a x_j
/// + 3 a) with C = 1 + sum |c_H| of the current polynomial.
RosenbergResult rosenberg_reduce(const MultilinearPolynomial& p);

/// Rosenberg penalty x y - 2 a x - 2 a y + 3 a on spins (x, y, a) = (0, 1, 2),
/// in the 0/1 convention.
QuadraticHamiltonian rosenberg_and_penalty();

/// Quadratic form in the 0/1 convention on spins x_0..x_{n-1}, y = x_n and
/// auxiliaries a_1..a_l following y:
///   (sum x + y + offset + sign * sum_{i=1..l} 2^i a_i)^2.
struct ParityForm {
  int n = 0;
  int aux = 0;
  int offset = 0;
  int sign = -1;
  QuadraticHamiltonian hamiltonian;
};

/// Expands (c0 + sum_k c_k z_k)^2 over 0/1 variables.
QuadraticHamiltonian squared_linear_form(double c0, std::span<const double> c);

/// Searches the family above, starting from the aux count
/// ceil(log2(n+1)) - 1, and returns the first member whose every
/// input-level minimizer carries the parity output bit. Throws if no member
/// of the searched family passes.
ParityForm parity_quadratization(int n);

/// Affine change of variables between 0/1 and +-1 conventions.
QuadraticHamiltonian convert_convention(const QuadraticHamiltonian& H);
QuadraticHamiltonian to_convention(const QuadraticHamiltonian& H,
                                   Convention target);

/// Polynomial text format: one `<bitmask-hex> <coefficient>` per line.
void write_polynomial(std::ostream& out, const MultilinearPolynomial& p);
MultilinearPolynomial read_polynomial(std::istream& in);

}  // namespace revising
