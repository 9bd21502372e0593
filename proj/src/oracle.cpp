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


#include "revising/oracle.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "revising/constraints.hpp"
#include "revising/feasibility.hpp"
#include "revising/lp.hpp"
#include "revising/parallel.hpp"

namespace revising {

namespace {

struct LevelOutcome {
  double best_ok = std::numeric_limits<double>::infinity();
  double best_bad = std::numeric_limits<double>::infinity();
  std::uint64_t bad_state = 0;
};

// Walks one input level in Gray-code order, updating the energy through
// local fields. H is in the PlusMinus convention.
LevelOutcome scan_level(const QuadraticHamiltonian& H, int N, int M,
                        std::uint64_t sigma, std::uint64_t want) {
  const int n = H.size();
  const int free_bits = n - N;
  std::vector<double> J(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) J[i * n + j] = J[j * n + i] = H.coupling(i, j);
  }
  std::vector<double> field(n);
  std::uint64_t z = sigma;  // outputs and auxiliaries start at -1
  auto spin = [&](int i) { return ((z >> i) & 1u) ? 1.0 : -1.0; };
  for (int i = 0; i < n; ++i) {
    double f = H.bias(i);
    for (int j = 0; j < n; ++j) f += J[i * n + j] * spin(j);
    field[i] = f;
  }
  double e = H.energy(z);
  LevelOutcome out;
  const std::uint64_t out_mask = low_mask(M);
  for (std::uint64_t step = 0; step < (std::uint64_t{1} << free_bits); ++step) {
    if (step > 0) {
      const int k = N + std::countr_zero(step);
      const double s_old = spin(k);
      e -= 2.0 * s_old * field[k];
      z ^= std::uint64_t{1} << k;
      const double* col = &J[static_cast<std::size_t>(k) * n];
      for (int j = 0; j < n; ++j) field[j] -= 2.0 * s_old * col[j];
    }
    if (((z >> N) & out_mask) == want) {
      out.best_ok = std::min(out.best_ok, e);
    } else if (e < out.best_bad) {
      out.best_bad = e;
      out.bad_state = z;
    }
  }
  return out;
}

}  // namespace

VerifyResult verify_hamiltonian(const Circuit& c, const QuadraticHamiltonian& H,
                                int n_aux, int threads) {
  const int N = c.inputs(), M = c.outputs();
  if (H.size() != N + M + n_aux) {
    throw std::invalid_argument("Hamiltonian size must be N + M + A");
  }
  if (N + M + n_aux > 26) throw std::invalid_argument("verification limited to 2^26 states");
  const auto Hp = to_convention(H, Convention::PlusMinus);
  double scale = 1.0;
  for (double x : Hp.biases()) scale += std::abs(x);
  for (double x : Hp.couplings()) scale += std::abs(x);
  const double tie_tol = 1e-9 * scale;

  const std::uint64_t levels = std::uint64_t{1} << N;
  std::vector<LevelOutcome> per(levels);
  parallel_for(0, static_cast<std::int64_t>(levels), threads, [&](std::int64_t s) {
    per[s] = scan_level(Hp, N, M, static_cast<std::uint64_t>(s), c(s));
  });

  VerifyResult out;
  out.pass = true;
  out.gap = std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < levels; ++s) {
    const double g = per[s].best_bad - per[s].best_ok;
    out.gap = std::min(out.gap, g);
    if (!(g > tie_tol) && out.pass) {
      out.pass = false;
      out.witness_sigma = s;
      out.witness_state = per[s].bad_state;
    }
  }
  return out;
}

bool reference_feasibility(const Circuit& c, const AuxiliaryFunction& g) {
  auto B = build_augmented(c, g);
  std::vector<double> v(B.rows(), 1.0);
  return reference_solve({&B, v}).objective < 1e-6;
}

std::optional<std::vector<std::uint64_t>> exhaustive_aux_search(const Circuit& c,
                                                                int n_aux) {
  const int N = c.inputs();
  if (n_aux < 0 || N > 20 || n_aux * (std::uint64_t{1} << N) > 20) {
    throw std::invalid_argument("exhaustive search limited to A * 2^N <= 20");
  }
  const std::uint64_t inputs = std::uint64_t{1} << N;
  const std::uint64_t total = std::uint64_t{1} << (n_aux * inputs);
  std::vector<std::uint64_t> g(inputs);
  for (std::uint64_t code = 0; code < total; ++code) {
    for (std::uint64_t s = 0; s < inputs; ++s) {
      g[s] = (code >> (s * n_aux)) & low_mask(n_aux);
    }
    auto B = build_full(c, g, n_aux);
    if (solve_rho_lp(B, {}).objective < 1e-6) return g;
  }
  return std::nullopt;
}

}  // namespace revising
