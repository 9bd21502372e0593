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
#include <optional>
#include <vector>

#include "revising/pseudobool.hpp"
#include "revising/spin.hpp"
#include "revising/threshold_function.hpp"

namespace revising {

struct VerifyResult {
  bool pass = false;
  /// min over sigma of (lowest wrong-output energy - lowest correct-output
  /// energy); positive exactly when every minimizer is correct.
  double gap = 0.0;
  /// Failing level and one offending state (full spin word) when !pass.
  std::uint64_t witness_sigma = 0;
  std::uint64_t witness_state = 0;
};

/// Exhaustive check that on every input level all minimizers of H over
/// Sigma^{M+A} carry the output f(sigma). Ties with a wrong output fail.
/// H must have N + M + A spins; 2^{N+M+A} <= 2^26.
VerifyResult verify_hamiltonian(const Circuit& c, const QuadraticHamiltonian& H,
                                int n_aux, int threads = 1);

/// Dense augmented constraints solved by the reference simplex.
bool reference_feasibility(const Circuit& c, const AuxiliaryFunction& g);

/// Brute force over every input-only auxiliary map Sigma^N -> Sigma^A
/// against the full weak constraints. Requires A * 2^N <= 20.
std::optional<std::vector<std::uint64_t>> exhaustive_aux_search(const Circuit& c,
                                                                int n_aux);

}  // namespace revising
