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


#include "revising/constraints.hpp"

#include <bit>
#include <ostream>
#include <stdexcept>

namespace revising {

namespace {

std::uint64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void check_row_budget(std::uint64_t rows) {
  if (rows >= (std::uint64_t{1} << 32)) {
    throw std::length_error("constraint matrix has too many rows");
  }
}

}  // namespace

std::vector<ColumnLabel> column_labels(int n_in, int n_out, int n_aux) {
  const int n = n_in + n_out + n_aux;
  std::vector<ColumnLabel> out;
  out.reserve(column_count(n_in, n_out, n_aux));
  for (int k = n_in; k < n; ++k) out.push_back({k, -1});
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(i + 1, n_in); j < n; ++j) out.push_back({i, j});
  }
  return out;
}

std::uint64_t augmented_row_count(int n_in, int n_out) {
  return (std::uint64_t{1} << n_in) * ((std::uint64_t{1} << n_out) - 1);
}

std::uint64_t full_row_count(int n_in, int n_out, int n_aux) {
  return (std::uint64_t{1} << n_in) *
         ((std::uint64_t{1} << (n_out + n_aux)) - (std::uint64_t{1} << n_aux));
}

std::uint64_t local_row_count(int n_in, int n_out, int radius) {
  std::uint64_t per_level = 0;
  for (int k = 1; k <= radius; ++k) per_level += choose(n_out, k);
  return (std::uint64_t{1} << n_in) * per_level;
}

std::uint64_t column_count(int n_in, int n_out, int n_aux) {
  const int n = n_in + n_out + n_aux;
  return static_cast<std::uint64_t>(n_out + n_aux) + choose(n, 2) - choose(n_in, 2);
}

double ConstraintMatrix::density() const {
  const double cells = static_cast<double>(rows()) * static_cast<double>(cols());
  return cells > 0 ? static_cast<double>(nnz()) / cells : 0.0;
}

std::vector<int> ConstraintMatrix::dense_row(std::uint64_t r) const {
  std::vector<int> out(cols(), 0);
  for (std::uint64_t j = 0; j < cols(); ++j) {
    auto rows_j = column_rows(j);
    auto it = std::lower_bound(rows_j.begin(), rows_j.end(), r);
    if (it != rows_j.end() && *it == r) {
      out[j] = values_[col_ptr_[j] + (it - rows_j.begin())];
    }
  }
  return out;
}

std::vector<double> ConstraintMatrix::dense() const {
  std::vector<double> out(rows() * cols(), 0.0);
  for (std::uint64_t j = 0; j < cols(); ++j) {
    for (auto k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
      out[row_idx_[k] * cols() + j] = values_[k];
    }
  }
  return out;
}

void ConstraintMatrix::multiply(std::span<const double> x,
                                std::span<double> y) const {
  std::fill(y.begin(), y.end(), 0.0);
  for (std::uint64_t j = 0; j < cols(); ++j) {
    const double xj = x[j];
    if (xj == 0.0) continue;
    for (auto k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
      y[row_idx_[k]] += values_[k] * xj;
    }
  }
}

void ConstraintMatrix::multiply_transpose(std::span<const double> x,
                                          std::span<double> y) const {
  for (std::uint64_t j = 0; j < cols(); ++j) {
    double s = 0.0;
    for (auto k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
      s += values_[k] * x[row_idx_[k]];
    }
    y[j] = s;
  }
}

ConstraintMatrix ConstraintMatrix::select_rows(
    std::span<const std::uint32_t> rows) const {
  std::vector<std::int64_t> remap(this->rows(), -1);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] >= this->rows()) throw std::out_of_range("row index out of range");
    remap[rows[k]] = static_cast<std::int64_t>(k);
  }
  ConstraintMatrix out;
  out.n_in_ = n_in_;
  out.n_out_ = n_out_;
  out.n_aux_ = n_aux_;
  out.labels_ = labels_;
  out.origins_.reserve(rows.size());
  for (auto r : rows) out.origins_.push_back(origins_[r]);
  out.col_ptr_.assign(1, 0);
  std::vector<std::pair<std::uint32_t, std::int8_t>> col;
  for (std::uint64_t j = 0; j < cols(); ++j) {
    col.clear();
    for (auto k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
      if (remap[row_idx_[k]] >= 0) {
        col.emplace_back(static_cast<std::uint32_t>(remap[row_idx_[k]]), values_[k]);
      }
    }
    std::sort(col.begin(), col.end());
    for (auto [r, v] : col) {
      out.row_idx_.push_back(r);
      out.values_.push_back(v);
    }
    out.col_ptr_.push_back(out.row_idx_.size());
  }
  return out;
}

ConstraintMatrix ConstraintMatrix::prefix(std::uint64_t count) const {
  if (count > rows()) throw std::out_of_range("prefix longer than matrix");
  ConstraintMatrix out;
  out.n_in_ = n_in_;
  out.n_out_ = n_out_;
  out.n_aux_ = n_aux_;
  out.labels_ = labels_;
  out.origins_.assign(origins_.begin(), origins_.begin() + count);
  out.col_ptr_.assign(1, 0);
  for (std::uint64_t j = 0; j < cols(); ++j) {
    for (auto k = col_ptr_[j]; k < col_ptr_[j + 1] && row_idx_[k] < count; ++k) {
      out.row_idx_.push_back(row_idx_[k]);
      out.values_.push_back(values_[k]);
    }
    out.col_ptr_.push_back(out.row_idx_.size());
  }
  return out;
}

void ConstraintMatrix::write_coo(std::ostream& out) const {
  out << rows() << ' ' << cols() << ' ' << nnz() << '\n';
  for (std::uint64_t j = 0; j < cols(); ++j) {
    for (auto k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
      out << row_idx_[k] << ' ' << j << ' ' << static_cast<int>(values_[k]) << '\n';
    }
  }
}

ConstraintMatrix ConstraintMatrix::from_dense(std::uint64_t rows,
                                              std::uint64_t cols,
                                              std::span<const int> values) {
  if (values.size() != rows * cols) throw std::invalid_argument("dense size mismatch");
  check_row_budget(rows);
  ConstraintMatrix B;
  B.origins_.assign(rows, RowOrigin{});
  for (std::uint64_t r = 0; r < rows; ++r) B.origins_[r].sigma = r;
  for (std::uint64_t j = 0; j < cols; ++j) {
    B.labels_.push_back({static_cast<int>(j), -1});
    for (std::uint64_t r = 0; r < rows; ++r) {
      const int v = values[r * cols + j];
      if (v == 0) continue;
      if (v != 1 && v != -1) throw std::invalid_argument("entries must be signs");
      B.row_idx_.push_back(static_cast<std::uint32_t>(r));
      B.values_.push_back(static_cast<std::int8_t>(v));
    }
    B.col_ptr_.push_back(B.row_idx_.size());
  }
  return B;
}

ConstraintMatrix ConstraintMatrix::from_pairs(
    int n_in, int n_out, int n_aux,
    std::span<const std::pair<std::uint64_t, std::uint64_t>> pairs,
    std::vector<RowOrigin> origins) {
  if (n_in + n_out + n_aux > kMaxSpins) throw std::invalid_argument("too many spins");
  if (origins.size() != pairs.size()) {
    throw std::invalid_argument("one origin per row required");
  }
  check_row_budget(pairs.size());
  const std::uint64_t in_mask = low_mask(n_in);
  std::vector<std::uint64_t> z(pairs.size()), d(pairs.size());
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    z[r] = pairs[r].first;
    d[r] = pairs[r].first ^ pairs[r].second;
    if ((d[r] & in_mask) != 0 || d[r] == 0) {
      throw std::invalid_argument("constraint pair must share inputs and differ");
    }
  }
  ConstraintMatrix B;
  B.n_in_ = n_in;
  B.n_out_ = n_out;
  B.n_aux_ = n_aux;
  B.labels_ = column_labels(n_in, n_out, n_aux);
  B.origins_ = std::move(origins);
  B.col_ptr_.reserve(B.labels_.size() + 1);
  // Halved differences: a linear entry is z_k where spin k flips; a pair
  // entry is z_i z_j where exactly one of the two spins flips.
  for (const auto& label : B.labels_) {
    if (label.linear()) {
      const int k = label.i;
      for (std::size_t r = 0; r < z.size(); ++r) {
        if ((d[r] >> k) & 1u) {
          B.row_idx_.push_back(static_cast<std::uint32_t>(r));
          B.values_.push_back(((z[r] >> k) & 1u) ? 1 : -1);
        }
      }
    } else {
      const int i = label.i, j = label.j;
      for (std::size_t r = 0; r < z.size(); ++r) {
        if (((d[r] >> i) ^ (d[r] >> j)) & 1u) {
          B.row_idx_.push_back(static_cast<std::uint32_t>(r));
          B.values_.push_back((((z[r] >> i) ^ (z[r] >> j)) & 1u) ? -1 : 1);
        }
      }
    }
    B.col_ptr_.push_back(B.row_idx_.size());
  }
  return B;
}

namespace {

void check_aux(const Circuit& c, int n_aux, std::span<const std::uint64_t> g) {
  const int base = c.inputs() + c.outputs();
  if (base > TruthTable::kMaxDim) throw std::invalid_argument("circuit too large");
  if (g.size() != (std::uint64_t{1} << base)) {
    throw std::invalid_argument("auxiliary values must cover every base point");
  }
  if (n_aux < 0 || c.inputs() + c.outputs() + n_aux > kMaxSpins) {
    throw std::invalid_argument("auxiliary count out of range");
  }
}

ConstraintMatrix build_rows(const Circuit& c, int n_aux,
                            std::span<const std::uint64_t> g_values, int radius,
                            bool radius_major) {
  check_aux(c, n_aux, g_values);
  const int N = c.inputs(), M = c.outputs();
  if (radius < 1 || radius > M) throw std::invalid_argument("radius out of range");
  check_row_budget(local_row_count(N, M, radius));
  const int base = N + M;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  std::vector<RowOrigin> origins;
  pairs.reserve(local_row_count(N, M, radius));
  origins.reserve(pairs.capacity());
  auto emit = [&](std::uint64_t sigma, std::uint64_t omega) {
    const std::uint64_t f = c(sigma);
    const std::uint64_t zw = sigma | (omega << N);
    const std::uint64_t zc = sigma | (f << N);
    const std::uint64_t gw = g_values[zw], gc = g_values[zc];
    pairs.emplace_back(zw | (gw << base), zc | (gc << base));
    origins.push_back({sigma, omega, gw});
  };
  const std::uint64_t n_sigma = std::uint64_t{1} << N;
  const std::uint64_t n_omega = std::uint64_t{1} << M;
  if (!radius_major) {
    for (std::uint64_t sigma = 0; sigma < n_sigma; ++sigma) {
      for (std::uint64_t omega = 0; omega < n_omega; ++omega) {
        if (omega != c(sigma)) emit(sigma, omega);
      }
    }
  } else {
    for (int r = 1; r <= radius; ++r) {
      for (std::uint64_t sigma = 0; sigma < n_sigma; ++sigma) {
        for (std::uint64_t omega = 0; omega < n_omega; ++omega) {
          if (hamming_distance(omega, c(sigma)) == r) emit(sigma, omega);
        }
      }
    }
  }
  return ConstraintMatrix::from_pairs(N, M, n_aux, pairs, std::move(origins));
}

}  // namespace

ConstraintMatrix build_augmented(const Circuit& c, const AuxiliaryFunction& g) {
  if (g.base_dim() != c.inputs() + c.outputs()) {
    throw std::invalid_argument("auxiliary base does not match the circuit");
  }
  auto values = g.evaluate_all();
  return build_augmented(c, g.size(), values);
}

ConstraintMatrix build_augmented(const Circuit& c, int n_aux,
                                 std::span<const std::uint64_t> g_values) {
  return build_rows(c, n_aux, g_values, c.outputs(), false);
}

ConstraintMatrix build_local(const Circuit& c, const AuxiliaryFunction& g,
                             int radius) {
  if (g.base_dim() != c.inputs() + c.outputs()) {
    throw std::invalid_argument("auxiliary base does not match the circuit");
  }
  auto values = g.evaluate_all();
  return build_local(c, g.size(), values, radius);
}

ConstraintMatrix build_local(const Circuit& c, int n_aux,
                             std::span<const std::uint64_t> g_values,
                             int radius) {
  return build_rows(c, n_aux, g_values, radius, true);
}

ConstraintMatrix build_full(const Circuit& c, std::span<const std::uint64_t> g_in,
                            int n_aux) {
  const int N = c.inputs(), M = c.outputs();
  if (n_aux < 0 || n_aux > 12) throw std::invalid_argument("full constraints need A <= 12");
  if (g_in.size() != (std::uint64_t{1} << N)) {
    throw std::invalid_argument("input auxiliary map must cover every input");
  }
  check_row_budget(full_row_count(N, M, n_aux));
  const int base = N + M;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  std::vector<RowOrigin> origins;
  pairs.reserve(full_row_count(N, M, n_aux));
  origins.reserve(pairs.capacity());
  for (std::uint64_t sigma = 0; sigma < (std::uint64_t{1} << N); ++sigma) {
    if ((g_in[sigma] & ~low_mask(n_aux)) != 0) {
      throw std::invalid_argument("auxiliary word wider than A bits");
    }
    const std::uint64_t zc = sigma | (c(sigma) << N) | (g_in[sigma] << base);
    for (std::uint64_t omega = 0; omega < (std::uint64_t{1} << M); ++omega) {
      if (omega == c(sigma)) continue;
      for (std::uint64_t eta = 0; eta < (std::uint64_t{1} << n_aux); ++eta) {
        pairs.emplace_back(sigma | (omega << N) | (eta << base), zc);
        origins.push_back({sigma, omega, eta});
      }
    }
  }
  return ConstraintMatrix::from_pairs(N, M, n_aux, pairs, std::move(origins));
}

}  // namespace revising
