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


#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "revising/pseudobool.hpp"

using namespace revising;

namespace {

// Minimum over the trailing `aux` variables of q, at base point x.
double min_over_aux(const MultilinearPolynomial& q, int base, std::uint64_t x) {
  const int aux = q.n_vars - base;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << aux); ++a) {
    best = std::min(best, evaluate(q, SpinState(x | (a << base), q.n_vars,
                                                Convention::ZeroOne)));
  }
  return best;
}

MultilinearPolynomial random_poly(std::mt19937_64& rng, int n, int max_degree) {
  MultilinearPolynomial p;
  p.n_vars = n;
  std::uniform_int_distribution<int> coef(-5, 5);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) <= max_degree && rng() % 2) p.add(mask, coef(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("evaluate polynomials and Hamiltonians") {
  MultilinearPolynomial zero;
  zero.n_vars = 3;
  CHECK(evaluate(zero, SpinState(5, 3, Convention::ZeroOne)) == 0.0);

  QuadraticHamiltonian H(2);
  H.bias(0) = 1;
  H.bias(1) = 1;
  H.set_coupling(0, 1, 1);
  CHECK(evaluate(H, state_from_values({1, -1}, Convention::PlusMinus)) == -1.0);
  CHECK_THROWS(evaluate(H, SpinState(1, 2, Convention::ZeroOne)));

  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + static_cast<int>(rng() % 10);
    QuadraticHamiltonian G(n);
    for (int i = 0; i < n; ++i) G.bias(i) = nd(rng);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) G.set_coupling(i, j, nd(rng));
    G.constant() = nd(rng);
    SpinState s(rng() & low_mask(n), n, Convention::PlusMinus);
    REQUIRE(evaluate(G, s) == doctest::Approx(evaluate_virtual(G, s)).epsilon(1e-12));
  }
}

TEST_CASE("coefficient vector round trip") {
  QuadraticHamiltonian H(3);
  H.bias(1) = 2;
  H.set_coupling(0, 2, -1.5);
  auto u = H.coefficient_vector();
  CHECK(u.size() == 6);
  CHECK(u[3 + pair_offset(0, 2, 3)] == -1.5);
  auto back = QuadraticHamiltonian::from_coefficients(u, 3);
  CHECK(back.coefficient_vector() == u);
}

TEST_CASE("fit_multilinear") {
  std::vector<double> and_vals{0, 0, 0, 1};
  auto p = fit_multilinear(and_vals);
  CHECK(p.terms.size() == 1);
  CHECK(p.coefficient(3) == 1.0);

  std::vector<double> or_vals{0, 1, 1, 1};
  auto q = fit_multilinear(or_vals);
  CHECK(q.coefficient(1) == 1.0);
  CHECK(q.coefficient(2) == 1.0);
  CHECK(q.coefficient(3) == -1.0);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ud(-3, 3);
  std::vector<double> vals(64);
  for (auto& v : vals) v = ud(rng);
  auto r = fit_multilinear(vals);
  double err = 0;
  for (std::uint64_t x = 0; x < 64; ++x) {
    err = std::max(err, std::abs(evaluate(r, SpinState(x, 6, Convention::ZeroOne)) - vals[x]));
  }
  CHECK(err < 1e-9);
  std::vector<double> bad(3);
  CHECK_THROWS(fit_multilinear(bad));
}

TEST_CASE("hamming Hamiltonian zero set is the circuit graph") {
  auto a = make_and();
  auto h = hamming_hamiltonian(a);
  CHECK(evaluate(h, SpinState(0b111, 3, Convention::ZeroOne)) == 0.0);
  CHECK(evaluate(h, SpinState(0b011, 3, Convention::ZeroOne)) == 1.0);

  auto mul = make_mul(2, 2);
  auto hm = hamming_hamiltonian(mul);
  int zeros = 0;
  for (std::uint64_t z = 0; z < 256; ++z) {
    double e = evaluate(hm, SpinState(z, 8, Convention::ZeroOne));
    REQUIRE(e >= -1e-9);
    bool on_graph = mul(z & 15) == (z >> 4);
    REQUIRE((std::abs(e) < 1e-9) == on_graph);
    zeros += on_graph;
  }
  CHECK(zeros == 16);
}

TEST_CASE("Rosenberg penalty is zero exactly on a = xy") {
  auto P = rosenberg_and_penalty();
  for (std::uint64_t s = 0; s < 8; ++s) {
    double e = P.energy(s);
    bool x = s & 1, y = s & 2, a = s & 4;
    CHECK(e >= 0);
    CHECK((e == 0) == (a == (x && y)));
  }
}

TEST_CASE("Rosenberg reduction is a quadratization") {
  MultilinearPolynomial xyz;
  xyz.n_vars = 3;
  xyz.add(7, 1);
  auto r = rosenberg_reduce(xyz);
  CHECK(r.subs.size() == 1);
  CHECK(r.q.degree() <= 2);
  for (std::uint64_t x = 0; x < 8; ++x) {
    CHECK(min_over_aux(r.q, 3, x) == evaluate(xyz, SpinState(x, 3, Convention::ZeroOne)));
  }

  MultilinearPolynomial quad;
  quad.n_vars = 3;
  quad.add(3, 2);
  quad.add(4, -1);
  auto same = rosenberg_reduce(quad);
  CHECK(same.subs.empty());
  CHECK(same.q.terms == quad.terms);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = random_poly(rng, 4, 3);
    auto red = rosenberg_reduce(p);
    REQUIRE(red.q.degree() <= 2);
    for (std::uint64_t x = 0; x < 16; ++x) {
      REQUIRE(min_over_aux(red.q, 4, x) ==
              evaluate(p, SpinState(x, 4, Convention::ZeroOne)));
    }
  }
}

TEST_CASE("parity quadratization calibrates for small n") {
  for (int n = 2; n <= 6; ++n) {
    auto form = parity_quadratization(n);
    CHECK(form.aux <= static_cast<int>(std::ceil(std::log2(n + 2.0))));
    const auto& H = form.hamiltonian;
    CHECK(H.size() == n + 1 + form.aux);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      double best = std::numeric_limits<double>::infinity();
      bool best_ok = false;
      bool tie_bad = false;
      for (std::uint64_t r = 0; r < (std::uint64_t{1} << (1 + form.aux)); ++r) {
        double e = H.energy(x | (r << n));
        bool ok = (r & 1) == static_cast<std::uint64_t>(std::popcount(x) & 1);
        if (e < best - 1e-12) {
          best = e;
          best_ok = ok;
          tie_bad = false;
        } else if (std::abs(e - best) <= 1e-12 && !ok) {
          tie_bad = true;
        }
      }
      REQUIRE(best_ok);
      REQUIRE_FALSE(tie_bad);
    }
  }
  // Frozen calibration results.
  auto p3 = parity_quadratization(3);
  CHECK(p3.aux == 2);
  auto p4 = parity_quadratization(4);
  CHECK(p4.aux == 2);
}

TEST_CASE("convention conversion") {
  auto P = rosenberg_and_penalty();
  auto Q = convert_convention(P);
  CHECK(Q.convention() == Convention::PlusMinus);
  for (std::uint64_t s = 0; s < 8; ++s) CHECK(Q.energy(s) == doctest::Approx(P.energy(s)));
  auto back = convert_convention(Q);
  auto a = P.coefficient_vector(), b = back.coefficient_vector();
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(b[k] == doctest::Approx(a[k]));
  CHECK(back.constant() == doctest::Approx(P.constant()));
  QuadraticHamiltonian zero(4);
  auto z = convert_convention(zero);
  for (double c : z.coefficient_vector()) CHECK(c == 0.0);
  CHECK(z.constant() == 0.0);
}

TEST_CASE("polynomial text round trip") {
  std::mt19937_64 rng(4);
  auto p = random_poly(rng, 5, 4);
  std::stringstream ss;
  write_polynomial(ss, p);
  auto q = read_polynomial(ss);
  CHECK(q.terms == p.terms);
  CHECK(q.n_vars == 5);
}
