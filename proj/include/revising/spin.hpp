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
#include <string>
#include <string_view>
#include <vector>

namespace revising {

/// Which binary alphabet a spin state (or Hamiltonian) is written in.
enum class Convention { PlusMinus, ZeroOne };

/// Largest spin count that fits in one packed word.
inline constexpr int kMaxSpins = 63;

std::string to_string(Convention c);

/// A point of the spin space, bit-packed. Spin j is bit j. A set bit means
/// +1 (PlusMinus) or 1 (ZeroOne), so changing convention never touches bits.
class SpinState {
 public:
  SpinState() = default;
  SpinState(std::uint64_t bits, int n, Convention convention);

  int size() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  Convention convention() const { return convention_; }

  bool bit(int j) const { return (bits_ >> j) & 1u; }
  /// Spin value in this state's convention: +-1 or 0/1.
  int value(int j) const;
  std::vector<int> values() const;

  SpinState with_convention(Convention c) const { return {bits_, n_, c}; }

  friend bool operator==(const SpinState& a, const SpinState& b) = default;

 private:
  std::uint64_t bits_ = 0;
  int n_ = 0;
  Convention convention_ = Convention::PlusMinus;
};

std::ostream& operator<<(std::ostream& os, const SpinState& s);

/// Mask with the low `n` bits set.
constexpr std::uint64_t low_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

SpinState encode_state(std::uint64_t index, int n, Convention convention);
std::uint64_t decode_state(const SpinState& s);

/// Builds a state from explicit spin values in the given convention.
SpinState state_from_values(const std::vector<int>& values,
                            Convention convention);

int hamming_distance(std::uint64_t a, std::uint64_t b);
int hamming_distance(const SpinState& a, const SpinState& b);

/// Length of the virtual spin for n spins: n + C(n, 2).
constexpr int virtual_size(int n) { return n + n * (n - 1) / 2; }

/// Offset of the pair (i, j), i < j, in the flattened upper triangle
/// (lexicographic order (0,1), (0,2), ..., (n-2,n-1)).
constexpr int pair_offset(int i, int j, int n) {
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

/// v(s) = (s, s_i s_j for i < j): linear entries first, then pairs in
/// lexicographic order.
struct VirtualSpin {
  std::vector<int> entries;
};

/// Requires a PlusMinus state.
VirtualSpin virtual_spin(const SpinState& s);

/// A Boolean circuit (N, M, f) with f stored as a full truth table.
///
/// Spin layout is fixed: inputs occupy 0..N-1, outputs N..N+M-1 and
/// auxiliaries N+M.. onwards. Table entry k is the output word for input
/// word k.
class Circuit {
 public:
  Circuit(int n_in, int n_out, std::vector<std::uint64_t> table,
          std::string name);

  int inputs() const { return n_in_; }
  int outputs() const { return n_out_; }
  const std::string& name() const { return name_; }
  const std::vector<std::uint64_t>& table() const { return table_; }
  std::uint64_t operator()(std::uint64_t sigma) const { return table_[sigma]; }

  /// Stable 64-bit fingerprint of (N, M, table).
  std::uint64_t id() const { return id_; }

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.n_in_ == b.n_in_ && a.n_out_ == b.n_out_ && a.table_ == b.table_;
  }

 private:
  int n_in_;
  int n_out_;
  std::vector<std::uint64_t> table_;
  std::string name_;
  std::uint64_t id_;
};

/// n x m bit unsigned multiplier. Operand A sits in spins 0..n-1, B in
/// n..n+m-1, both little-endian; the output is the (n+m)-bit product.
Circuit make_mul(int n, int m);
Circuit make_and();
Circuit make_xor();
/// Output is 1 iff the input bit sum is odd.
Circuit make_parity(int n);

/// Truth-table text format: header `N=<n> M=<m>`, then one hex output word
/// per input index in ascending order.
Circuit parse_truth_table(std::istream& in, std::string name = "table");
Circuit read_truth_table(const std::string& path);
void write_truth_table(std::ostream& out, const Circuit& c);

/// Parses `mul:3x3`, `and`, `xor`, `parity:4` or `file:<path>`.
Circuit build_circuit(std::string_view spec);

/// The sigma-input level of a circuit with `aux` auxiliaries: every global
/// state on N+M+A spins whose input component is sigma. Iterates in
/// ascending order of the non-input part.
class InputLevel {
 public:
  class iterator {
   public:
    using value_type = SpinState;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(std::uint64_t rest, const InputLevel* level)
        : rest_(rest), level_(level) {}
    SpinState operator*() const;
    iterator& operator++() {
      ++rest_;
      return *this;
    }
    iterator operator++(int) {
      auto t = *this;
      ++rest_;
      return t;
    }
    bool operator==(const iterator& o) const { return rest_ == o.rest_; }

   private:
    std::uint64_t rest_ = 0;
    const InputLevel* level_ = nullptr;
  };

  InputLevel(const Circuit& c, int aux, const SpinState& sigma);

  iterator begin() const { return {0, this}; }
  iterator end() const { return {count_, this}; }
  std::uint64_t size() const { return count_; }

 private:
  std::uint64_t sigma_;
  int n_in_;
  int total_;
  std::uint64_t count_;
  Convention convention_;
};

InputLevel input_level(const Circuit& c, int aux, const SpinState& sigma);

/// Lowercase hex of `value`, zero padded to hold `bits` bits.
std::string to_hex(std::uint64_t value, int bits);
std::uint64_t parse_hex_word(std::string_view hex);

}  // namespace revising
