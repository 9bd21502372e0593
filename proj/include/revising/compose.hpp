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
#include <optional>
#include <string>
#include <vector>

#include "revising/lp.hpp"
#include "revising/oracle.hpp"
#include "revising/pseudobool.hpp"
#include "revising/spin.hpp"
#include "revising/threshold_function.hpp"
#include "revising/thresholds.hpp"

namespace revising {

/// R_k for component k placed on the global spins it reads. `spins` lists
/// the global index of every spin of `R`; the last one is N + M + k.
struct ComponentCertificate {
  int component = 0;
  NeutralizabilityKind kind = NeutralizabilityKind::Strong;
  std::vector<int> spins;
  QuadraticHamiltonian R;
};

/// Certificate for component k of g: the strong check on the component
/// restricted to its support, else the weak check against c with the
/// preceding components as prefix. nullopt when neither holds.
std::optional<ComponentCertificate> certify_component(
    const Circuit& c, const AuxiliaryFunction& g, int k,
    const LPOptions& opts = {});

/// Sum of the lifted R_k on n_spins PlusMinus spins. Throws if two
/// certificates claim the same auxiliary spin.
QuadraticHamiltonian glue_certificates(const std::vector<ComponentCertificate>& certs,
                                       int n_spins);

struct LambdaChoice {
  double alpha = 0.0;
  double beta = 0.0;
  double lambda = 0.0;
};

/// alpha = min over (sigma, omega, eta != g(sigma, omega)) of
/// R(sigma, omega, eta) - R(z*), beta = max over the same states of
/// S(z*) - S(sigma, omega, eta), with z* = (sigma, f(sigma), g(sigma, f(sigma))).
/// lambda = max(beta, 0) / alpha + 1. Throws when alpha <= 1e-9 or the state
/// space exceeds 2^26.
LambdaChoice choose_lambda(const QuadraticHamiltonian& S,
                           const QuadraticHamiltonian& R, const Circuit& c,
                           const AuxiliaryFunction& g, int threads = 1);

/// H = S + lambda R in the PlusMinus convention.
QuadraticHamiltonian compose_hamiltonian(const QuadraticHamiltonian& S,
                                         const QuadraticHamiltonian& R,
                                         double lambda);

struct SolutionRecord {
  std::string circuit_name;
  int n_in = 0;
  int n_out = 0;
  std::vector<std::uint64_t> table;
  AuxiliaryFunction g;
  QuadraticHamiltonian S;
  QuadraticHamiltonian R;
  LambdaChoice lambda;
  QuadraticHamiltonian H;
  bool verified = false;
  double gap = 0.0;
  std::uint64_t seed = 0;
  std::string version;

  Circuit circuit() const;
};

struct ComposeResult {
  std::optional<SolutionRecord> record;  // set only when H verifies
  VerifyResult verification;
  std::string failure;  // reason when record is empty
};

/// Composition pipeline for a full-radius feasible g: S from the augmented
/// LP, R from component certificates, lambda, H, exhaustive verification.
ComposeResult compose_solution(const Circuit& c, const AuxiliaryFunction& g,
                               std::uint64_t seed = 0, const LPOptions& opts = {},
                               int threads = 1);

void write_solution(std::ostream& out, const SolutionRecord& rec);
SolutionRecord read_solution(std::istream& in);
void save_solution(const std::string& path, const SolutionRecord& rec);
SolutionRecord load_solution(const std::string& path);

}  // namespace revising
