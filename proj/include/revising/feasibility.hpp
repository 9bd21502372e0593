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
#include <list>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "revising/constraints.hpp"
#include "revising/lp.hpp"
#include "revising/pseudobool.hpp"

namespace revising {

/// Radius value meaning "all wrong outputs".
inline constexpr int kFullRadius = 0;

/// Cache key: circuit fingerprint, radius, and a 128-bit digest of the
/// auxiliary columns after normalizing each column to read 0 at the origin.
/// Negating one auxiliary spin only flips signs of B's columns, so the
/// heuristic is unchanged and the normalized digests coincide.
struct RhoKey {
  std::uint64_t circuit = 0;
  int radius = 0;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  friend bool operator==(const RhoKey&, const RhoKey&) = default;
};

struct RhoKeyHash {
  std::size_t operator()(const RhoKey& k) const {
    return k.lo ^ (k.hi * 0x9e3779b97f4a7c15ull) ^ k.circuit ^
           static_cast<std::size_t>(k.radius);
  }
};

RhoKey make_rho_key(const Circuit& c, int radius, int n_aux,
                    std::span<const std::uint64_t> g_values);

/// Bounded least-recently-used map from RhoKey to heuristic values. All
/// members are safe to call concurrently.
class RhoCache {
 public:
  explicit RhoCache(std::size_t capacity = std::size_t{1} << 20);

  std::optional<double> get(const RhoKey& key);
  void put(const RhoKey& key, double value);

  std::size_t size() const;
  std::size_t capacity() const { return capacity_; }
  std::uint64_t hits() const;
  std::uint64_t misses() const;
  void clear();

 private:
  using Entry = std::pair<RhoKey, double>;
  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::list<Entry> order_;  // front is most recent
  std::unordered_map<RhoKey, std::list<Entry>::iterator, RhoKeyHash> index_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

struct RhoOptions {
  LPOptions lp;
  RhoCache* cache = nullptr;
};

/// Phase-1 objective for the g-augmented constraints restricted to radius
/// `radius` (kFullRadius or M for all rows).
double rho(const Circuit& c, const AuxiliaryFunction& g, int radius = kFullRadius,
           const RhoOptions& opts = {});
double rho_values(const Circuit& c, int n_aux,
                  std::span<const std::uint64_t> g_values, int radius,
                  const RhoOptions& opts = {});

/// Solves the LP for an assembled matrix with right-hand side all ones,
/// falling back to the reference solver when the interior point method does
/// not reach optimality. Throws if neither can.
LPResult solve_rho_lp(const ConstraintMatrix& B, const LPOptions& opts);

struct FeasibilityResult {
  bool feasible = false;
  double rho = 0.0;
  /// Coefficients per column of B, scaled so min (B u) = 1 when feasible.
  std::vector<double> u;
  std::vector<ColumnLabel> labels;
};

/// Full-radius check: rho < 1e-6 and B u >= 1 - 1e-6 for the returned u.
FeasibilityResult is_feasible(const Circuit& c, const AuxiliaryFunction& g,
                              const LPOptions& opts = {});

/// Hamiltonian on n_spins PlusMinus spins with the given column
/// coefficients; coefficients not covered by a column are zero.
QuadraticHamiltonian hamiltonian_from_columns(
    std::span<const ColumnLabel> labels, std::span<const double> u, int n_spins);

}  // namespace revising
