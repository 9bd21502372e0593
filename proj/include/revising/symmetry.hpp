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
#include <set>
#include <vector>

#include "revising/pseudobool.hpp"
#include "revising/spin.hpp"
#include "revising/threshold_function.hpp"
#include "revising/truth_table.hpp"

namespace revising {

/// Pointwise multiplication by a sign vector alpha; bit j of `flips` set
/// means alpha_j = -1.
struct SpinAction {
  std::uint64_t flips = 0;
  int n = 0;

  static SpinAction identity(int n) { return {0, n}; }
  /// alpha restricted to spins [first, first + count), re-based to 0.
  std::uint64_t restrict_to(int first, int count) const {
    return (flips >> first) & low_mask(count);
  }
  friend bool operator==(const SpinAction&, const SpinAction&) = default;
};

/// Relabelling of inputs and outputs: new input i carries old input
/// input_perm[i], likewise for outputs. Auxiliary spins are fixed.
struct CoordPermutation {
  std::vector<int> input_perm;
  std::vector<int> output_perm;

  static CoordPermutation identity(int n_in, int n_out);
  /// Full permutation over n_in + n_out + n_aux spins.
  std::vector<int> spin_perm(int n_aux) const;
  CoordPermutation inverse() const;
  friend bool operator==(const CoordPermutation&, const CoordPermutation&) = default;
};

/// outer after inner.
SpinAction compose(const SpinAction& outer, const SpinAction& inner);
CoordPermutation compose(const CoordPermutation& outer,
                         const CoordPermutation& inner);

SpinState act_state(const SpinAction& a, const SpinState& s);
/// (pi s)_i = s_{perm[i]} over a full spin permutation.
SpinState act_state(const std::vector<int>& perm, const SpinState& s);

/// (alpha f)(sigma) = alpha|_M f(alpha|_N sigma). The action covers N + M
/// spins (or more; extra bits are ignored).
Circuit act_function(const SpinAction& a, const Circuit& c);
/// f'(pi sigma) = pi f(sigma).
Circuit act_function(const CoordPermutation& p, const Circuit& c);

/// (alpha t)(x) = alpha_out t(alpha_in x) for a single-output function,
/// with `input_flips` over its d inputs and an optional output negation.
ThresholdFunction act_threshold(std::uint64_t input_flips, bool negate_output,
                                const ThresholdFunction& t);
/// Input relabelling x'_i = x_{perm[i]} on the leading perm.size() inputs.
ThresholdFunction permute_threshold(const std::vector<int>& perm,
                                    const ThresholdFunction& t);

/// Spin action over N + M + A spins applied to an auxiliary function:
/// (alpha g)(z) = alpha|_A g(alpha|_{N+M} z).
AuxiliaryFunction act_aux(const SpinAction& a, const AuxiliaryFunction& g);
/// g'(pi z) = g(z) for a coordinate permutation of the base spins.
AuxiliaryFunction act_aux(const CoordPermutation& p, const AuxiliaryFunction& g);

/// (alpha H)(z) = H(alpha z): h_i -> alpha_i h_i, J_ij -> alpha_i alpha_j J_ij.
QuadraticHamiltonian act_coefficients(const SpinAction& a,
                                      const QuadraticHamiltonian& H);
/// (pi H)(pi z) = H(z): h'_i = h_{perm[i]}, J'_ij = J_{perm[i] perm[j]},
/// with auxiliary spins fixed.
QuadraticHamiltonian act_coefficients(const CoordPermutation& p,
                                      const QuadraticHamiltonian& H);

enum class SymmetryGroup {
  SpinActionsOnly,  // input sign flips and output negation
  FullGroup,        // plus input permutations
};

std::string to_string(SymmetryGroup g);
SymmetryGroup parse_symmetry_group(const std::string& s);

/// Lexicographically smallest table in the orbit of `t`. FullGroup is
/// limited to d <= 8.
TruthTable canonical_form(const TruthTable& t, SymmetryGroup group);

/// Every table in the orbit of `t` (same limits as canonical_form).
std::vector<TruthTable> orbit(const TruthTable& t, SymmetryGroup group);

}  // namespace revising
