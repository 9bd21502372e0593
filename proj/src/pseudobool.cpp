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

#include "revising/pseudobool.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace revising {

int MultilinearPolynomial::degree() const {
  int d = 0;
  for (const auto& [mask, c] : terms) {
    if (c != 0.0) d = std::max(d, std::popcount(mask));
  }
  return d;
}

void MultilinearPolynomial::add(std::uint64_t mask, double c) {
  if (n_vars < 64 && (mask & ~low_mask(n_vars)) != 0) {
    throw std::invalid_argument("monomial references a variable beyond n_vars");
  }
  auto [it, inserted] = terms.try_emplace(mask, c);
  if (!inserted) it->second += c;
  if (it->second == 0.0) terms.erase(it);
}

double MultilinearPolynomial::coefficient(std::uint64_t mask) const {
  auto it = terms.find(mask);
  return it == terms.end() ? 0.0 : it->second;
}

double MultilinearPolynomial::abs_sum() const {
  double s = 0.0;
  for (const auto& [mask, c] : terms) s += std::abs(c);
  return s;
}

QuadraticHamiltonian::QuadraticHamiltonian(int n, Convention convention)
    : n_(n), convention_(convention), h_(n, 0.0), J_(n * (n - 1) / 2, 0.0) {
  if (n < 0 || n > kMaxSpins) {
    throw std::invalid_argument("Hamiltonian size out of range");
  }
}

double QuadraticHamiltonian::coupling(int i, int j) const {
  if (i == j) throw std::invalid_argument("no self coupling");
  if (i > j) std::swap(i, j);
  return J_[pair_offset(i, j, n_)];
}

void QuadraticHamiltonian::set_coupling(int i, int j, double value) {
  if (i == j) throw std::invalid_argument("no self coupling");
  if (i > j) std::swap(i, j);
  J_[pair_offset(i, j, n_)] = value;
}

void QuadraticHamiltonian::add_coupling(int i, int j, double value) {
  if (i == j) throw std::invalid_argument("no self coupling");
  if (i > j) std::swap(i, j);
  J_[pair_offset(i, j, n_)] += value;
}

std::vector<double> QuadraticHamiltonian::coefficient_vector() const {
  std::vector<double> u(h_);
  u.insert(u.end(), J_.begin(), J_.end());
  return u;
}

QuadraticHamiltonian QuadraticHamiltonian::from_coefficients(
    std::span<const double> u, int n, double constant) {
  if (static_cast<int>(u.size()) != virtual_size(n)) {
    throw std::invalid_argument("coefficient vector has wrong length");
  }
  QuadraticHamiltonian H(n, Convention::PlusMinus);
  std::copy(u.begin(), u.begin() + n, H.h_.begin());
  std::copy(u.begin() + n, u.end(), H.J_.begin());
  H.constant_ = constant;
  return H;
}

double QuadraticHamiltonian::energy(std::uint64_t bits) const {
  double e = constant_;
  if (convention_ == Convention::PlusMinus) {
    int k = 0;
    for (int i = 0; i < n_; ++i) {
      const double si = (bits >> i) & 1u ? 1.0 : -1.0;
      e += h_[i] * si;
      double row = 0.0;
      for (int j = i + 1; j < n_; ++j, ++k) {
        row += (bits >> j) & 1u ? J_[k] : -J_[k];
      }
      e += si * row;
    }
  } else {
    for (int i = 0; i < n_; ++i) {
      if (!((bits >> i) & 1u)) continue;
      e += h_[i];
      int k = pair_offset(i, i + 1, n_);
      for (int j = i + 1; j < n_; ++j, ++k) {
        if ((bits >> j) & 1u) e += J_[k];
      }
    }
  }
  return e;
}

double QuadraticHamiltonian::max_abs_coefficient() const {
  double m = 0.0;
  for (double v : h_) m = std::max(m, std::abs(v));
  for (double v : J_) m = std::max(m, std::abs(v));
  return m;
}

QuadraticHamiltonian& QuadraticHamiltonian::operator+=(
    const QuadraticHamiltonian& o) {
  if (o.n_ != n_ || o.convention_ != convention_) {
    throw std::invalid_argument("adding Hamiltonians of different shape");
  }
  for (int i = 0; i < n_; ++i) h_[i] += o.h_[i];
  for (std::size_t k = 0; k < J_.size(); ++k) J_[k] += o.J_[k];
  constant_ += o.constant_;
  return *this;
}

QuadraticHamiltonian& QuadraticHamiltonian::operator*=(double s) {
  for (auto& v : h_) v *= s;
  for (auto& v : J_) v *= s;
  constant_ *= s;
  return *this;
}

double evaluate(const MultilinearPolynomial& p, const SpinState& s) {
  if (p.convention != s.convention()) {
    throw std::invalid_argument("polynomial and state conventions differ");
  }
  if (s.size() < p.n_vars) {
    throw std::invalid_argument("state shorter than polynomial");
  }
  const std::uint64_t bits = s.bits();
  double e = 0.0;
  for (const auto& [mask, c] : p.terms) {
    if (p.convention == Convention::ZeroOne) {
      if ((mask & ~bits) == 0) e += c;
    } else {
      e += (std::popcount(mask & ~bits) & 1) ? -c : c;
    }
  }
  return e;
}

double evaluate(const QuadraticHamiltonian& H, const SpinState& s) {
  if (H.convention() != s.convention()) {
    throw std::invalid_argument("Hamiltonian and state conventions differ");
  }
  if (H.size() != s.size()) {
    throw std::invalid_argument("Hamiltonian and state sizes differ");
  }
  return H.energy(s.bits());
}

double evaluate_virtual(const QuadraticHamiltonian& H, const SpinState& s) {
  if (H.convention() != Convention::PlusMinus) {
    throw std::invalid_argument("virtual-spin form needs PlusMinus");
  }
  auto v = virtual_spin(s);
  auto u = H.coefficient_vector();
  double e = H.constant();
  for (std::size_t k = 0; k < u.size(); ++k) e += u[k] * v.entries[k];
  return e;
}

MultilinearPolynomial fit_multilinear(std::span<const double> values) {
  const std::size_t len = values.size();
  if (len == 0 || !std::has_single_bit(len)) {
    throw std::invalid_argument("value table length must be a power of two");
  }
  const int n = std::countr_zero(len);
  if (n > 20) throw std::invalid_argument("too many variables to fit");
  std::vector<double> c(values.begin(), values.end());
  for (int i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t mask = 0; mask < len; ++mask) {
      if (mask & bit) c[mask] -= c[mask ^ bit];
    }
  }
  MultilinearPolynomial p;
  p.n_vars = n;
  for (std::size_t mask = 0; mask < len; ++mask) {
    if (c[mask] != 0.0) p.terms.emplace(mask, c[mask]);
  }
  return p;
}

MultilinearPolynomial hamming_hamiltonian(const Circuit& c) {
  const int N = c.inputs();
  const int M = c.outputs();
  if (N + M > 20) throw std::invalid_argument("circuit too large for Hamming form");
  std::vector<double> values(std::size_t{1} << (N + M));
  for (std::size_t z = 0; z < values.size(); ++z) {
    std::uint64_t sigma = z & low_mask(N);
    std::uint64_t eta = z >> N;
    values[z] = hamming_distance(eta, c(sigma));
  }
  return fit_multilinear(values);
}

RosenbergResult rosenberg_reduce(const MultilinearPolynomial& p) {
  if (p.convention != Convention::ZeroOne) {
    throw std::invalid_argument("Rosenberg reduction works in the 0/1 convention");
  }
  RosenbergResult out{p, {}};
  auto& q = out.q;
  for (;;) {
    // Pair frequencies among monomials of degree >= 3.
    std::map<std::pair<int, int>, int> freq;
    for (const auto& [mask, c] : q.terms) {
      if (std::popcount(mask) < 3) continue;
      for (std::uint64_t a = mask; a; a &= a - 1) {
        int i = std::countr_zero(a);
        for (std::uint64_t b = a & (a - 1); b; b &= b - 1) {
          ++freq[{i, std::countr_zero(b)}];
        }
      }
    }
    if (freq.empty()) break;
    // std::map iterates lexicographically, so the first maximum wins ties.
    auto best = freq.begin();
    for (auto it = freq.begin(); it != freq.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    const auto [i, j] = best->first;
    if (q.n_vars >= 64) {
      throw std::length_error("Rosenberg reduction exceeded 64 variables");
    }
    const int a = q.n_vars++;
    const double C = 1.0 + q.abs_sum();
    const std::uint64_t pair = (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
    const std::uint64_t abit = std::uint64_t{1} << a;

    std::vector<std::pair<std::uint64_t, double>> moved;
    for (auto it = q.terms.begin(); it != q.terms.end();) {
      if (std::popcount(it->first) >= 3 && (it->first & pair) == pair) {
        moved.emplace_back((it->first & ~pair) | abit, it->second);
        it = q.terms.erase(it);
      } else {
        ++it;
      }
    }
    for (const auto& [mask, c] : moved) q.add(mask, c);
    q.add(pair, C);
    q.add((std::uint64_t{1} << i) | abit, -2.0 * C);
    q.add((std::uint64_t{1} << j) | abit, -2.0 * C);
    q.add(abit, 3.0 * C);
    out.subs.push_back({i, j, a});
  }
  return out;
}

QuadraticHamiltonian rosenberg_and_penalty() {
  QuadraticHamiltonian R(3, Convention::ZeroOne);
  R.set_coupling(0, 1, 1.0);
  R.set_coupling(0, 2, -2.0);
  R.set_coupling(1, 2, -2.0);
  R.bias(2) = 3.0;
  return R;
}

QuadraticHamiltonian squared_linear_form(double c0, std::span<const double> c) {
  const int n = static_cast<int>(c.size());
  QuadraticHamiltonian H(n, Convention::ZeroOne);
  H.constant() = c0 * c0;
  for (int k = 0; k < n; ++k) {
    H.bias(k) = c[k] * c[k] + 2.0 * c0 * c[k];
    for (int l = k + 1; l < n; ++l) H.set_coupling(k, l, 2.0 * c[k] * c[l]);
  }
  return H;
}

namespace {

// True when every minimizer over (y, a) on every input level has y equal to
// the parity of the inputs.
bool parity_minimizers_correct(const QuadraticHamiltonian& H, int n, int aux) {
  const int free_bits = 1 + aux;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    const std::uint64_t want = std::popcount(x) & 1;
    double best_ok = std::numeric_limits<double>::infinity();
    double best_bad = std::numeric_limits<double>::infinity();
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << free_bits); ++r) {
      double e = H.energy(x | (r << n));
      if ((r & 1u) == want) {
        best_ok = std::min(best_ok, e);
      } else {
        best_bad = std::min(best_bad, e);
      }
    }
    if (!(best_bad > best_ok)) return false;
  }
  return true;
}

ParityForm make_parity_form(int n, int aux, int offset, int sign) {
  std::vector<double> c(n + 1 + aux, 1.0);
  for (int i = 1; i <= aux; ++i) c[n + i] = sign * std::ldexp(1.0, i);
  return {n, aux, offset, sign, squared_linear_form(offset, c)};
}

}  // namespace

ParityForm parity_quadratization(int n) {
  if (n < 2 || n > 8) throw std::invalid_argument("parity width must be in [2, 8]");
  const int first_aux =
      std::max(0, static_cast<int>(std::ceil(std::log2(n + 1.0))) - 1);
  const int max_aux = static_cast<int>(std::ceil(std::log2(n + 2.0)));
  for (int aux = first_aux; aux <= max_aux; ++aux) {
    const int P = (1 << (aux + 1)) - (n % 2);
    // The displayed offset with small shifts first, then its mirror, then a
    // widening scan.
    std::vector<int> offsets;
    for (int d = 0; d <= 2; ++d) offsets.push_back(P - d);
    for (int d = 0; d <= 2; ++d) offsets.push_back(-P + d);
    const int span = (1 << (aux + 1)) + n + 2;
    std::vector<int> rest;
    for (int o = -span; o <= span; ++o) {
      if (std::find(offsets.begin(), offsets.end(), o) == offsets.end()) {
        rest.push_back(o);
      }
    }
    std::stable_sort(rest.begin(), rest.end(), [P](int a, int b) {
      return std::abs(a - P) < std::abs(b - P);
    });
    offsets.insert(offsets.end(), rest.begin(), rest.end());
    for (int offset : offsets) {
      for (int sign : {-1, 1}) {
        auto form = make_parity_form(n, aux, offset, sign);
        if (parity_minimizers_correct(form.hamiltonian, n, aux)) return form;
      }
    }
  }
  throw std::runtime_error("no parity quadratization in the searched family for n=" +
                           std::to_string(n));
}

QuadraticHamiltonian convert_convention(const QuadraticHamiltonian& H) {
  const int n = H.size();
  if (H.convention() == Convention::ZeroOne) {
    // x = (s + 1) / 2
    QuadraticHamiltonian out(n, Convention::PlusMinus);
    out.constant() = H.constant();
    for (int i = 0; i < n; ++i) {
      out.bias(i) += H.bias(i) / 2.0;
      out.constant() += H.bias(i) / 2.0;
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double J = H.coupling(i, j);
        if (J == 0.0) continue;
        out.add_coupling(i, j, J / 4.0);
        out.bias(i) += J / 4.0;
        out.bias(j) += J / 4.0;
        out.constant() += J / 4.0;
      }
    }
    return out;
  }
  // s = 2x - 1
  QuadraticHamiltonian out(n, Convention::ZeroOne);
  out.constant() = H.constant();
  for (int i = 0; i < n; ++i) {
    out.bias(i) += 2.0 * H.bias(i);
    out.constant() -= H.bias(i);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double J = H.coupling(i, j);
      if (J == 0.0) continue;
      out.add_coupling(i, j, 4.0 * J);
      out.bias(i) -= 2.0 * J;
      out.bias(j) -= 2.0 * J;
      out.constant() += J;
    }
  }
  return out;
}

QuadraticHamiltonian to_convention(const QuadraticHamiltonian& H,
                                   Convention target) {
  return H.convention() == target ? H : convert_convention(H);
}

void write_polynomial(std::ostream& out, const MultilinearPolynomial& p) {
  out << "# n_vars=" << p.n_vars << '\n';
  auto old = out.precision(17);
  for (const auto& [mask, c] : p.terms) {
    std::ostringstream hex;
    hex << std::hex << mask;
    out << hex.str() << ' ' << c << '\n';
  }
  out.precision(old);
}

MultilinearPolynomial read_polynomial(std::istream& in) {
  MultilinearPolynomial p;
  p.n_vars = 64;
  int declared = -1;
  int highest = 0;
  std::string line;
  std::vector<std::pair<std::uint64_t, double>> entries;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::sscanf(line.c_str(), "# n_vars=%d", &declared);
      continue;
    }
    std::istringstream ls(line);
    std::string hex;
    double c = 0.0;
    if (!(ls >> hex >> c)) {
      throw std::invalid_argument("malformed polynomial line: " + line);
    }
    auto mask = parse_hex_word(hex);
    highest = std::max(highest, 64 - std::countl_zero(mask));
    entries.emplace_back(mask, c);
  }
  p.n_vars = declared >= 0 ? declared : highest;
  for (auto [mask, c] : entries) p.add(mask, c);
  return p;
}

}  // namespace revising
