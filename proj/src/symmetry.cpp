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


#include "revising/symmetry.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace revising {

namespace {

void check_perm(const std::vector<int>& p) {
  std::vector<int> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<int>(i)) throw std::invalid_argument("not a permutation");
  }
}

std::uint64_t apply_perm(const std::vector<int>& perm, std::uint64_t bits) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    out |= ((bits >> perm[i]) & 1u) << i;
  }
  return out;
}

std::vector<int> invert(const std::vector<int>& p) {
  std::vector<int> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

}  // namespace

CoordPermutation CoordPermutation::identity(int n_in, int n_out) {
  CoordPermutation p;
  p.input_perm.resize(n_in);
  p.output_perm.resize(n_out);
  std::iota(p.input_perm.begin(), p.input_perm.end(), 0);
  std::iota(p.output_perm.begin(), p.output_perm.end(), 0);
  return p;
}

std::vector<int> CoordPermutation::spin_perm(int n_aux) const {
  const int N = static_cast<int>(input_perm.size());
  const int M = static_cast<int>(output_perm.size());
  std::vector<int> full(N + M + n_aux);
  for (int i = 0; i < N; ++i) full[i] = input_perm[i];
  for (int k = 0; k < M; ++k) full[N + k] = N + output_perm[k];
  for (int a = 0; a < n_aux; ++a) full[N + M + a] = N + M + a;
  return full;
}

CoordPermutation CoordPermutation::inverse() const {
  return {invert(input_perm), invert(output_perm)};
}

SpinAction compose(const SpinAction& outer, const SpinAction& inner) {
  if (outer.n != inner.n) throw std::invalid_argument("action sizes differ");
  return {outer.flips ^ inner.flips, outer.n};
}

CoordPermutation compose(const CoordPermutation& outer,
                         const CoordPermutation& inner) {
  if (outer.input_perm.size() != inner.input_perm.size() ||
      outer.output_perm.size() != inner.output_perm.size()) {
    throw std::invalid_argument("permutation sizes differ");
  }
  CoordPermutation p = outer;
  for (std::size_t i = 0; i < p.input_perm.size(); ++i) {
    p.input_perm[i] = inner.input_perm[outer.input_perm[i]];
  }
  for (std::size_t i = 0; i < p.output_perm.size(); ++i) {
    p.output_perm[i] = inner.output_perm[outer.output_perm[i]];
  }
  return p;
}

SpinState act_state(const SpinAction& a, const SpinState& s) {
  if (a.n != s.size()) throw std::invalid_argument("action length mismatch");
  return {s.bits() ^ (a.flips & low_mask(a.n)), s.size(), s.convention()};
}

SpinState act_state(const std::vector<int>& perm, const SpinState& s) {
  if (static_cast<int>(perm.size()) != s.size()) {
    throw std::invalid_argument("permutation length mismatch");
  }
  check_perm(perm);
  return {apply_perm(perm, s.bits()), s.size(), s.convention()};
}

Circuit act_function(const SpinAction& a, const Circuit& c) {
  const int N = c.inputs(), M = c.outputs();
  if (a.n < N + M) throw std::invalid_argument("action shorter than N + M");
  const std::uint64_t fin = a.restrict_to(0, N), fout = a.restrict_to(N, M);
  std::vector<std::uint64_t> table(c.table().size());
  for (std::uint64_t s = 0; s < table.size(); ++s) table[s] = c(s ^ fin) ^ fout;
  return {N, M, std::move(table), c.name()};
}

Circuit act_function(const CoordPermutation& p, const Circuit& c) {
  const int N = c.inputs(), M = c.outputs();
  if (static_cast<int>(p.input_perm.size()) != N ||
      static_cast<int>(p.output_perm.size()) != M) {
    throw std::invalid_argument("permutation sizes do not match the circuit");
  }
  check_perm(p.input_perm);
  check_perm(p.output_perm);
  std::vector<std::uint64_t> table(c.table().size());
  for (std::uint64_t s = 0; s < table.size(); ++s) {
    table[apply_perm(p.input_perm, s)] = apply_perm(p.output_perm, c(s));
  }
  return {N, M, std::move(table), c.name()};
}

ThresholdFunction act_threshold(std::uint64_t input_flips, bool negate_output,
                                const ThresholdFunction& t) {
  auto w = t.weights();
  double b = t.bias();
  // x_i -> 1 - x_i turns w_i x_i into w_i - w_i x_i.
  for (int i = 0; i < t.dim(); ++i) {
    if ((input_flips >> i) & 1u) {
      b -= w[i];
      w[i] = -w[i];
    }
  }
  if (negate_output) {
    for (auto& x : w) x = -x;
    b = -b;
  }
  return {std::move(w), b};
}

ThresholdFunction permute_threshold(const std::vector<int>& perm,
                                    const ThresholdFunction& t) {
  if (static_cast<int>(perm.size()) > t.dim()) {
    throw std::invalid_argument("permutation longer than the function");
  }
  check_perm(perm);
  auto w = t.weights();
  for (std::size_t i = 0; i < perm.size(); ++i) w[i] = t.weights()[perm[i]];
  return {std::move(w), t.bias()};
}

AuxiliaryFunction act_aux(const SpinAction& a, const AuxiliaryFunction& g) {
  const int base = g.base_dim();
  if (a.n < base + g.size()) throw std::invalid_argument("action shorter than the spins of g");
  AuxiliaryFunction out(base);
  for (int k = 0; k < g.size(); ++k) {
    const auto& t = g[k];
    out.append(act_threshold(a.flips & low_mask(t.dim()),
                             (a.flips >> (base + k)) & 1u, t));
  }
  return out;
}

AuxiliaryFunction act_aux(const CoordPermutation& p, const AuxiliaryFunction& g) {
  const int base = g.base_dim();
  auto full = p.spin_perm(0);
  if (static_cast<int>(full.size()) != base) {
    throw std::invalid_argument("permutation does not cover the base spins");
  }
  AuxiliaryFunction out(base);
  for (int k = 0; k < g.size(); ++k) {
    const auto& t = g[k];
    if (t.dim() < base) {
      out.append(permute_threshold(full, t.extruded_to(base)));
    } else {
      out.append(permute_threshold(full, t));
    }
  }
  return out;
}

QuadraticHamiltonian act_coefficients(const SpinAction& a,
                                      const QuadraticHamiltonian& H) {
  if (a.n != H.size()) throw std::invalid_argument("action length mismatch");
  if (H.convention() == Convention::ZeroOne) {
    return convert_convention(act_coefficients(a, convert_convention(H)));
  }
  QuadraticHamiltonian out = H;
  const int n = H.size();
  auto sign = [&](int i) { return ((a.flips >> i) & 1u) ? -1.0 : 1.0; };
  for (int i = 0; i < n; ++i) out.bias(i) = sign(i) * H.bias(i);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out.set_coupling(i, j, sign(i) * sign(j) * H.coupling(i, j));
    }
  }
  return out;
}

QuadraticHamiltonian act_coefficients(const CoordPermutation& p,
                                      const QuadraticHamiltonian& H) {
  const int base = static_cast<int>(p.input_perm.size() + p.output_perm.size());
  if (H.size() < base) throw std::invalid_argument("Hamiltonian smaller than N + M");
  check_perm(p.input_perm);
  check_perm(p.output_perm);
  auto full = p.spin_perm(H.size() - base);
  QuadraticHamiltonian out(H.size(), H.convention());
  out.constant() = H.constant();
  for (int i = 0; i < H.size(); ++i) {
    out.bias(i) = H.bias(full[i]);
    for (int j = i + 1; j < H.size(); ++j) {
      out.set_coupling(i, j, H.coupling(full[i], full[j]));
    }
  }
  return out;
}

std::string to_string(SymmetryGroup g) {
  return g == SymmetryGroup::FullGroup ? "FullGroup" : "SpinActionsOnly";
}

SymmetryGroup parse_symmetry_group(const std::string& s) {
  if (s == "FullGroup") return SymmetryGroup::FullGroup;
  if (s == "SpinActionsOnly") return SymmetryGroup::SpinActionsOnly;
  throw std::invalid_argument("unknown symmetry group '" + s + "'");
}

namespace {

// Calls visit(table) for every image of t, possibly with repeats.
template <class Visit>
void for_each_image(const TruthTable& t, SymmetryGroup group, Visit&& visit) {
  const int d = t.dim();
  if (group == SymmetryGroup::FullGroup && d > 8) {
    throw std::invalid_argument("FullGroup orbits limited to d <= 8");
  }
  if (d > 12) throw std::invalid_argument("orbits limited to d <= 12");
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    TruthTable cur = group == SymmetryGroup::FullGroup ? t.permute_inputs(perm) : t;
    // Gray-code walk over input flips.
    for (std::uint64_t step = 0; step < (std::uint64_t{1} << d); ++step) {
      if (step > 0) cur = cur.flip_input(std::countr_zero(step));
      visit(cur);
      visit(cur.negated());
    }
  } while (group == SymmetryGroup::FullGroup &&
           std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

TruthTable canonical_form(const TruthTable& t, SymmetryGroup group) {
  TruthTable best = t;
  for_each_image(t, group, [&](const TruthTable& x) {
    if (x < best) best = x;
  });
  return best;
}

std::vector<TruthTable> orbit(const TruthTable& t, SymmetryGroup group) {
  std::set<TruthTable> seen;
  for_each_image(t, group, [&](const TruthTable& x) { seen.insert(x); });
  return {seen.begin(), seen.end()};
}

}  // namespace revising
