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

#include "revising/truth_table.hpp"

namespace revising {

/// Linear threshold function x -> [<w, x> - b > 0] on the 0/1 cube.
///
/// The truth table is cached up to kCachedDim variables; above that the
/// function is evaluated from its weights, touching only the support.
class ThresholdFunction {
 public:
  static constexpr int kCachedDim = 20;

  ThresholdFunction() = default;
  ThresholdFunction(std::vector<double> weights, double bias);

  /// Pairs a table with a separating certificate. The certificate is checked
  /// against the table when the table is cached; throws on disagreement.
  static ThresholdFunction from_table(const TruthTable& table,
                                      std::vector<double> weights,
                                      double bias);

  /// Constant function of the given dimension (zero weights).
  static ThresholdFunction constant(int dim, bool value);
  /// x_i AND x_j as a weight certificate, w_i = w_j = 2, b = 3.
  static ThresholdFunction and_pair(int dim, int i, int j);

  int dim() const { return static_cast<int>(w_.size()); }
  const std::vector<double>& weights() const { return w_; }
  double bias() const { return b_; }
  /// Indices with nonzero weight.
  const std::vector<int>& support() const { return support_; }

  bool has_table() const { return table_.has_value(); }
  const TruthTable& table() const;

  bool operator()(std::uint64_t x) const {
    if (table_) return table_->get(x);
    return evaluate_weights(x);
  }
  bool evaluate_weights(std::uint64_t x) const;

  /// Smallest |<w, x> - b| over the vertices (enumerates the support).
  double margin() const;
  /// Rescales (w, b) so that the margin is exactly 1.
  void normalize_margin();

  /// Same function on dim + 1 variables, ignoring the new top variable.
  ThresholdFunction extruded() const;
  /// Positional extrusion up to `dim` variables.
  ThresholdFunction extruded_to(int dim) const;

  friend bool operator==(const ThresholdFunction& a,
                         const ThresholdFunction& b) {
    return a.w_ == b.w_ && a.b_ == b.b_;
  }

 private:
  void build();

  std::vector<double> w_;
  double b_ = 0.0;
  std::vector<int> support_;
  std::optional<TruthTable> table_;
};

/// Ordered auxiliary components g_1..g_A over the base spins (sigma, omega).
/// Component k (0-based) reads the first dim(g_k) bits of
/// (sigma, omega, g_1, ..., g_k), so its dimension may not exceed base + k.
class AuxiliaryFunction {
 public:
  AuxiliaryFunction() = default;
  explicit AuxiliaryFunction(int base_dim) : base_(base_dim) {}
  AuxiliaryFunction(int base_dim, std::vector<ThresholdFunction> components);

  int base_dim() const { return base_; }
  int size() const { return static_cast<int>(g_.size()); }
  bool empty() const { return g_.empty(); }
  const std::vector<ThresholdFunction>& components() const { return g_; }
  const ThresholdFunction& operator[](int k) const { return g_[k]; }

  void append(ThresholdFunction t);
  void replace(int k, ThresholdFunction t);
  /// Drops the last component.
  void pop_back() { g_.pop_back(); }

  /// Auxiliary word g(z) for base point z, component k in bit k.
  std::uint64_t operator()(std::uint64_t z) const;

  /// g over every base point; entry z is g(z). Requires base_dim <= 26.
  std::vector<std::uint64_t> evaluate_all() const;

  /// Component k as a table over its own domain (requires a cached table or
  /// a small enough dimension).
  TruthTable component_table(int k) const;

 private:
  void check(const ThresholdFunction& t, int k) const;

  int base_ = 0;
  std::vector<ThresholdFunction> g_;
};

/// Glued product: g1's components followed by g2's. Components of
/// g2 that read auxiliary bits are shifted past g1 so they keep reading
/// their own predecessors.
AuxiliaryFunction glue_aux(const AuxiliaryFunction& g1,
                           const AuxiliaryFunction& g2);

}  // namespace revising
