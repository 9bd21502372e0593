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


#include "revising/feasibility.hpp"

#include <algorithm>
#include <stdexcept>

namespace revising {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

RhoKey make_rho_key(const Circuit& c, int radius, int n_aux,
                    std::span<const std::uint64_t> g_values) {
  const std::uint64_t flip = g_values.empty() ? 0 : g_values[0];
  std::uint64_t lo = 0x243f6a8885a308d3ull ^ static_cast<std::uint64_t>(n_aux);
  std::uint64_t hi = 0x13198a2e03707344ull + static_cast<std::uint64_t>(n_aux);
  for (std::size_t z = 0; z < g_values.size(); ++z) {
    const std::uint64_t w = (g_values[z] ^ flip) & low_mask(n_aux);
    lo = mix64(lo ^ (w + 0x9e3779b97f4a7c15ull * (z + 1)));
    hi = mix64(hi + w * 0xc2b2ae3d27d4eb4full + z);
  }
  return {c.id(), radius, lo, hi};
}

RhoCache::RhoCache(std::size_t capacity) : capacity_(std::max<std::size_t>(1, capacity)) {}

std::optional<double> RhoCache::get(const RhoKey& key) {
  std::lock_guard lock(mutex_);
  auto it = index_.find(key);
  if (it == index_.end()) {
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  order_.splice(order_.begin(), order_, it->second);
  return it->second->second;
}

void RhoCache::put(const RhoKey& key, double value) {
  std::lock_guard lock(mutex_);
  auto it = index_.find(key);
  if (it != index_.end()) {
    it->second->second = value;
    order_.splice(order_.begin(), order_, it->second);
    return;
  }
  order_.emplace_front(key, value);
  index_[key] = order_.begin();
  while (order_.size() > capacity_) {
    index_.erase(order_.back().first);
    order_.pop_back();
  }
}

std::size_t RhoCache::size() const {
  std::lock_guard lock(mutex_);
  return order_.size();
}

std::uint64_t RhoCache::hits() const {
  std::lock_guard lock(mutex_);
  return hits_;
}

std::uint64_t RhoCache::misses() const {
  std::lock_guard lock(mutex_);
  return misses_;
}

void RhoCache::clear() {
  std::lock_guard lock(mutex_);
  order_.clear();
  index_.clear();
  hits_ = misses_ = 0;
}

LPResult solve_rho_lp(const ConstraintMatrix& B, const LPOptions& opts) {
  std::vector<double> v(B.rows(), 1.0);
  auto res = solve_artificial({&B, v}, opts);
  if (res.status == LPStatus::Optimal) return res;
  if (B.rows() <= 20000 && B.cols() <= 300) return reference_solve({&B, v});
  throw std::runtime_error("artificial LP failed: " + to_string(res.status));
}

double rho_values(const Circuit& c, int n_aux,
                  std::span<const std::uint64_t> g_values, int radius,
                  const RhoOptions& opts) {
  const int M = c.outputs();
  if (radius < 0 || radius > M) throw std::invalid_argument("radius out of range");
  const int r = radius == kFullRadius ? M : radius;
  std::optional<RhoKey> key;
  if (opts.cache) {
    key = make_rho_key(c, r, n_aux, g_values);
    if (auto hit = opts.cache->get(*key)) return *hit;
  }
  auto B = r == M ? build_augmented(c, n_aux, g_values)
                  : build_local(c, n_aux, g_values, r);
  const double value = std::max(0.0, solve_rho_lp(B, opts.lp).objective);
  if (opts.cache) opts.cache->put(*key, value);
  return value;
}

double rho(const Circuit& c, const AuxiliaryFunction& g, int radius,
           const RhoOptions& opts) {
  if (g.base_dim() != c.inputs() + c.outputs()) {
    throw std::invalid_argument("auxiliary base does not match the circuit");
  }
  auto values = g.evaluate_all();
  return rho_values(c, g.size(), values, radius, opts);
}

FeasibilityResult is_feasible(const Circuit& c, const AuxiliaryFunction& g,
                              const LPOptions& opts) {
  auto B = build_augmented(c, g);
  FeasibilityResult out;
  out.labels = B.labels();
  auto check = [&](const LPResult& res) {
    out.rho = std::max(0.0, res.objective);
    if (res.objective >= 1e-6) return false;
    std::vector<double> bu(B.rows());
    B.multiply(res.u, bu);
    const double lo = *std::min_element(bu.begin(), bu.end());
    if (lo < 1.0 - 1e-6) return false;
    out.u = res.u;
    for (auto& x : out.u) x /= lo;
    return true;
  };
  out.feasible = check(solve_rho_lp(B, opts));
  if (!out.feasible && out.rho < 1e-6 && B.rows() <= 20000 && B.cols() <= 300) {
    // Interior point said zero but its certificate is too loose.
    std::vector<double> v(B.rows(), 1.0);
    out.feasible = check(reference_solve({&B, v}));
  }
  if (!out.feasible) out.u.clear();
  return out;
}

QuadraticHamiltonian hamiltonian_from_columns(std::span<const ColumnLabel> labels,
                                              std::span<const double> u,
                                              int n_spins) {
  if (labels.size() != u.size()) throw std::invalid_argument("label/coefficient mismatch");
  QuadraticHamiltonian H(n_spins, Convention::PlusMinus);
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k].linear()) {
      H.bias(labels[k].i) = u[k];
    } else {
      H.set_coupling(labels[k].i, labels[k].j, u[k]);
    }
  }
  return H;
}

}  // namespace revising
