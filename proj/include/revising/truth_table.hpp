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
#include <string>
#include <string_view>
#include <vector>

namespace revising {

/// Single-output Boolean function on d variables as a packed bit string.
/// Bit k is the value at the vertex whose binary encoding is k (variable 0 is
/// the least significant bit of k).
class TruthTable {
 public:
  static constexpr int kMaxDim = 26;

  TruthTable() = default;
  explicit TruthTable(int dim);
  static TruthTable from_word(int dim, std::uint64_t word);
  static TruthTable constant(int dim, bool value);
  /// Projection onto variable i.
  static TruthTable variable(int dim, int i);

  int dim() const { return dim_; }
  std::uint64_t size() const { return std::uint64_t{1} << dim_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  bool get(std::uint64_t k) const { return (words_[k >> 6] >> (k & 63)) & 1u; }
  void set(std::uint64_t k, bool v);

  /// Low word; the whole table when dim <= 6.
  std::uint64_t word() const { return words_[0]; }

  std::uint64_t popcount() const;
  bool depends_on(int i) const;

  /// x -> f(x with variable i negated).
  TruthTable flip_input(int i) const;
  /// x -> f(x xor mask).
  TruthTable flip_inputs(std::uint64_t mask) const;
  /// x -> not f(x).
  TruthTable negated() const;
  /// x -> f(y) with y_i = x_{perm[i]}.
  TruthTable permute_inputs(const std::vector<int>& perm) const;
  /// Appends an ignored top variable: the table repeated twice.
  TruthTable extruded() const;
  /// Keeps only the listed variables (ordered), assuming the others are
  /// irrelevant; result variable k is source variable vars[k].
  TruthTable restricted(const std::vector<int>& vars) const;

  std::string to_hex() const;
  static TruthTable from_hex(int dim, std::string_view hex);

  std::uint64_t hash() const;

  friend bool operator==(const TruthTable& a, const TruthTable& b) {
    return a.dim_ == b.dim_ && a.words_ == b.words_;
  }
  /// Lexicographic order of the sequences f(0), f(1), ...
  friend bool operator<(const TruthTable& a, const TruthTable& b);

 private:
  void mask_tail();

  int dim_ = 0;
  std::vector<std::uint64_t> words_{0};
};

struct TruthTableHash {
  std::size_t operator()(const TruthTable& t) const { return t.hash(); }
};

}  // namespace revising
