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


#include <limits>
#include <random>

#include "doctest.h"
#include "revising/oracle.hpp"
#include "revising/pseudobool.hpp"

using namespace revising;

namespace {

// Plain double loop over every state, no Gray code, no local fields.
double naive_gap(const Circuit& c, const QuadraticHamiltonian& H, int n_aux) {
  const int N = c.inputs(), M = c.outputs();
  const std::uint64_t rest = std::uint64_t{1} << (M + n_aux);
  double gap = std::numeric_limits<double>::infinity();
  for (std::uint64_t sigma = 0; sigma < (std::uint64_t{1} << N); ++sigma) {
    double good = std::numeric_limits<double>::infinity();
    double bad = std::numeric_limits<double>::infinity();
    for (std::uint64_t r = 0; r < rest; ++r) {
      const double e = H.energy(sigma | (r << N));
      if ((r & low_mask(M)) == c(sigma)) {
        good = std::min(good, e);
      } else {
        bad = std::min(bad, e);
      }
    }
    gap = std::min(gap, bad - good);
  }
  return gap;
}

}  // namespace

TEST_CASE("Rosenberg AND penalty passes with unit gap") {
  auto res = verify_hamiltonian(make_and(), rosenberg_and_penalty(), 0);
  CHECK(res.pass);
  CHECK(res.gap >= 1.0 - 1e-12);
}

TEST_CASE("zero Hamiltonian fails on xor through ties") {
  QuadraticHamiltonian zero(3);
  auto res = verify_hamiltonian(make_xor(), zero, 0);
  CHECK_FALSE(res.pass);
  CHECK(res.gap == doctest::Approx(0.0));
}

TEST_CASE("a wrong minimizer is reported with a witness") {
  // h_out = -1 favours output 1 everywhere; AND(0, 0) = 0 fails.
  QuadraticHamiltonian H(3);
  H.bias(2) = -1.0;
  auto res = verify_hamiltonian(make_and(), H, 0);
  CHECK_FALSE(res.pass);
  CHECK(res.gap < 0.0);
  const auto c = make_and();
  CHECK(((res.witness_state >> 2) & 1u) != c(res.witness_sigma));
  CHECK((res.witness_state & 3u) == res.witness_sigma);
}

TEST_CASE("parity quadratizations verify") {
  for (int n = 2; n <= 5; ++n) {
    auto form = parity_quadratization(n);
    auto res = verify_hamiltonian(make_parity(n), form.hamiltonian, form.aux);
    CHECK(res.pass);
  }
}

TEST_CASE("verifier gap matches a naive scan") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  const auto c = make_mul(2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const int A = trial % 3;
    QuadraticHamiltonian H(8 + A);
    for (int i = 0; i < H.size(); ++i) {
      H.bias(i) = nd(rng);
      for (int j = i + 1; j < H.size(); ++j) H.set_coupling(i, j, nd(rng));
    }
    auto fast = verify_hamiltonian(c, H, A, 1 + trial % 2);
    const double slow = naive_gap(c, H, A);
    CHECK(fast.gap == doctest::Approx(slow).epsilon(1e-9));
    if (fast.pass) CHECK(slow > 0.0);
    if (slow > 1e-6) CHECK(fast.pass);
  }
}

TEST_CASE("exhaustive auxiliary search") {
  CHECK_FALSE(exhaustive_aux_search(make_xor(), 0).has_value());
  auto g = exhaustive_aux_search(make_xor(), 1);
  REQUIRE(g.has_value());
  CHECK(g->size() == 4);
  CHECK(exhaustive_aux_search(make_and(), 0).has_value());
}

TEST_CASE("verifier rejects oversized or mismatched input") {
  QuadraticHamiltonian H(4);
  CHECK_THROWS(verify_hamiltonian(make_and(), H, 0));
}
