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
#include <span>
#include <vector>

#include "revising/spin.hpp"
#include "revising/threshold_function.hpp"

namespace revising {

/// Where a constraint row came from: the input sigma, the wrong output omega
/// and the auxiliary word of the compared state (g(sigma, omega) for
/// augmented rows, the free eta for full rows).
struct RowOrigin {
  std::uint64_t sigma = 0;
  std::uint64_t omega = 0;
  std::uint64_t aux = 0;
  friend bool operator==(const RowOrigin&, const RowOrigin&) = default;
  friend auto operator<=>(const RowOrigin&, const RowOrigin&) = default;
};

/// A Hamiltonian coefficient: linear term i (j < 0) or coupling (i, j).
struct ColumnLabel {
  int i = 0;
  int j = -1;
  bool linear() const { return j < 0; }
  friend bool operator==(const ColumnLabel&, const ColumnLabel&) = default;
};

/// Coefficient columns that can differ between states of one input level:
/// non-input linear terms, then every pair except input-input pairs, both in
/// virtual-spin order.
std::vector<ColumnLabel> column_labels(int n_in, int n_out, int n_aux);

std::uint64_t augmented_row_count(int n_in, int n_out);
std::uint64_t full_row_count(int n_in, int n_out, int n_aux);
std::uint64_t local_row_count(int n_in, int n_out, int radius);
std::uint64_t column_count(int n_in, int n_out, int n_aux);

/// Sign matrix of halved virtual-spin differences v(z) - v(z*), stored in
/// compressed sparse column form with entries in {-1, +1}.
class ConstraintMatrix {
 public:
  ConstraintMatrix() = default;

  int n_in() const { return n_in_; }
  int n_out() const { return n_out_; }
  int n_aux() const { return n_aux_; }
  std::uint64_t rows() const { return origins_.size(); }
  std::uint64_t cols() const { return labels_.size(); }
  std::uint64_t nnz() const { return row_idx_.size(); }
  double density() const;

  const std::vector<std::uint64_t>& col_ptr() const { return col_ptr_; }
  const std::vector<std::uint32_t>& row_idx() const { return row_idx_; }
  const std::vector<std::int8_t>& values() const { return values_; }
  const std::vector<RowOrigin>& origins() const { return origins_; }
  const std::vector<ColumnLabel>& labels() const { return labels_; }

  std::span<const std::uint32_t> column_rows(std::uint64_t j) const {
    return {row_idx_.data() + col_ptr_[j], row_idx_.data() + col_ptr_[j + 1]};
  }
  std::span<const std::int8_t> column_values(std::uint64_t j) const {
    return {values_.data() + col_ptr_[j], values_.data() + col_ptr_[j + 1]};
  }

  /// Row r as a dense list of length cols().
  std::vector<int> dense_row(std::uint64_t r) const;
  /// Row-major dense copy.
  std::vector<double> dense() const;

  /// y = B x and y = B^T x.
  void multiply(std::span<const double> x, std::span<double> y) const;
  void multiply_transpose(std::span<const double> x, std::span<double> y) const;

  /// Submatrix on the listed rows, in the given order.
  ConstraintMatrix select_rows(std::span<const std::uint32_t> rows) const;
  /// First `count` rows.
  ConstraintMatrix prefix(std::uint64_t count) const;

  /// Coordinate-list export: header `rows cols nnz`, then `row col val`.
  void write_coo(std::ostream& out) const;

  /// Assembles a matrix from (z, z*) state pairs over n_in + n_out + n_aux
  /// spins. Every pair must share its input bits and differ somewhere.
  /// General sign matrix from a row-major list with entries in {-1, 0, 1}.
  static ConstraintMatrix from_dense(std::uint64_t rows, std::uint64_t cols,
                                     std::span<const int> values);

  static ConstraintMatrix from_pairs(
      int n_in, int n_out, int n_aux,
      std::span<const std::pair<std::uint64_t, std::uint64_t>> pairs,
      std::vector<RowOrigin> origins);

 private:
  int n_in_ = 0;
  int n_out_ = 0;
  int n_aux_ = 0;
  std::vector<std::uint64_t> col_ptr_{0};
  std::vector<std::uint32_t> row_idx_;
  std::vector<std::int8_t> values_;
  std::vector<RowOrigin> origins_;
  std::vector<ColumnLabel> labels_;
};

/// g-augmented constraints: one row per sigma and wrong output omega,
/// comparing (sigma, omega, g(sigma, omega)) against
/// (sigma, f(sigma), g(sigma, f(sigma))). Rows ordered by (sigma, omega).
ConstraintMatrix build_augmented(const Circuit& c, const AuxiliaryFunction& g);

/// As build_augmented, with g already evaluated over every base point.
ConstraintMatrix build_augmented(const Circuit& c, int n_aux,
                                 std::span<const std::uint64_t> g_values);

/// Full weak constraints for an input-only auxiliary map g_in: rows for every
/// wrong output omega and every auxiliary word eta. Requires n_aux <= 12.
ConstraintMatrix build_full(const Circuit& c,
                            std::span<const std::uint64_t> g_in, int n_aux);

/// Local constraints B_radius: augmented rows whose wrong output lies within
/// Hamming distance `radius` of f(sigma), ordered by distance and then
/// (sigma, omega), so B_i is a row prefix of B_{i+1}.
ConstraintMatrix build_local(const Circuit& c, const AuxiliaryFunction& g,
                             int radius);
ConstraintMatrix build_local(const Circuit& c, int n_aux,
                             std::span<const std::uint64_t> g_values,
                             int radius);

}  // namespace revising
