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

#include "revising/spin.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace revising {

std::string to_string(Convention c) {
  return c == Convention::PlusMinus ? "PlusMinus" : "ZeroOne";
}

SpinState::SpinState(std::uint64_t bits, int n, Convention convention)
    : bits_(bits), n_(n), convention_(convention) {
  if (n < 0 || n > kMaxSpins) {
    throw std::invalid_argument("spin count out of range: " +
                                std::to_string(n));
  }
  if ((bits & ~low_mask(n)) != 0) {
    throw std::invalid_argument("spin bits exceed state length");
  }
}

int SpinState::value(int j) const {
  if (convention_ == Convention::ZeroOne) return bit(j) ? 1 : 0;
  return bit(j) ? 1 : -1;
}

std::vector<int> SpinState::values() const {
  std::vector<int> out(n_);
  for (int j = 0; j < n_; ++j) out[j] = value(j);
  return out;
}

std::ostream& operator<<(std::ostream& os, const SpinState& s) {
  os << '(';
  for (int j = 0; j < s.size(); ++j) {
    if (j) os << ',';
    os << s.value(j);
  }
  return os << ')';
}

SpinState encode_state(std::uint64_t index, int n, Convention convention) {
  if (n < 0 || n > kMaxSpins) {
    throw std::invalid_argument("spin count out of range");
  }
  if (index > low_mask(n)) {
    throw std::out_of_range("state index " + std::to_string(index) +
                            " out of range for " + std::to_string(n) +
                            " spins");
  }
  return {index, n, convention};
}

std::uint64_t decode_state(const SpinState& s) { return s.bits(); }

SpinState state_from_values(const std::vector<int>& values,
                            Convention convention) {
  std::uint64_t bits = 0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    int v = values[j];
    bool ok = convention == Convention::PlusMinus ? (v == 1 || v == -1)
                                                  : (v == 0 || v == 1);
    if (!ok) throw std::invalid_argument("spin value not in alphabet");
    if (v == 1) bits |= std::uint64_t{1} << j;
  }
  return {bits, static_cast<int>(values.size()), convention};
}

int hamming_distance(std::uint64_t a, std::uint64_t b) {
  return std::popcount(a ^ b);
}

int hamming_distance(const SpinState& a, const SpinState& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("hamming distance of unequal lengths");
  }
  return hamming_distance(a.bits(), b.bits());
}

VirtualSpin virtual_spin(const SpinState& s) {
  if (s.convention() != Convention::PlusMinus) {
    throw std::invalid_argument("virtual spin needs a PlusMinus state");
  }
  const int n = s.size();
  VirtualSpin v;
  v.entries.resize(virtual_size(n));
  for (int i = 0; i < n; ++i) v.entries[i] = s.value(i);
  int k = n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) v.entries[k++] = v.entries[i] * v.entries[j];
  }
  return v;
}

namespace {

std::uint64_t fingerprint(int n_in, int n_out,
                          const std::vector<std::uint64_t>& table) {
  // FNV-1a over the header and words.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t w) {
    for (int b = 0; b < 8; ++b) {
      h ^= (w >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(n_in));
  mix(static_cast<std::uint64_t>(n_out));
  for (auto w : table) mix(w);
  return h;
}

}  // namespace

Circuit::Circuit(int n_in, int n_out, std::vector<std::uint64_t> table,
                 std::string name)
    : n_in_(n_in), n_out_(n_out), table_(std::move(table)),
      name_(std::move(name)) {
  if (n_in < 0 || n_out < 1 || n_in + n_out > kMaxSpins) {
    throw std::invalid_argument("bad circuit dimensions");
  }
  if (n_in > 30 || table_.size() != (std::uint64_t{1} << n_in)) {
    throw std::invalid_argument("truth table length must be 2^N");
  }
  for (auto w : table_) {
    if ((w & ~low_mask(n_out)) != 0) {
      throw std::invalid_argument("truth table entry wider than M bits");
    }
  }
  id_ = fingerprint(n_in_, n_out_, table_);
}

Circuit make_mul(int n, int m) {
  if (n < 1 || m < 1 || 2 * (n + m) > kMaxSpins || n + m > 20) {
    throw std::invalid_argument("mul operand widths out of range");
  }
  std::vector<std::uint64_t> table(std::uint64_t{1} << (n + m));
  for (std::uint64_t k = 0; k < table.size(); ++k) {
    std::uint64_t a = k & low_mask(n);
    std::uint64_t b = k >> n;
    table[k] = a * b;
  }
  return {n + m, n + m, std::move(table),
          "mul:" + std::to_string(n) + "x" + std::to_string(m)};
}

Circuit make_and() { return {2, 1, {0, 0, 0, 1}, "and"}; }

Circuit make_xor() { return {2, 1, {0, 1, 1, 0}, "xor"}; }

Circuit make_parity(int n) {
  if (n < 1 || n > 20) throw std::invalid_argument("parity width out of range");
  std::vector<std::uint64_t> table(std::uint64_t{1} << n);
  for (std::uint64_t k = 0; k < table.size(); ++k) {
    table[k] = static_cast<std::uint64_t>(std::popcount(k) & 1);
  }
  return {n, 1, std::move(table), "parity:" + std::to_string(n)};
}

std::string to_hex(std::uint64_t value, int bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  int digits = bits <= 0 ? 1 : (bits + 3) / 4;
  std::string out(digits, '0');
  for (int d = digits - 1; d >= 0; --d) {
    out[d] = kDigits[value & 0xf];
    value >>= 4;
  }
  return out;
}

std::uint64_t parse_hex_word(std::string_view hex) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), v, 16);
  if (ec != std::errc{} || ptr != hex.data() + hex.size() || hex.empty()) {
    throw std::invalid_argument("malformed hex word '" + std::string(hex) +
                                "'");
  }
  return v;
}

Circuit parse_truth_table(std::istream& in, std::string name) {
  std::string line;
  int n = -1, m = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (std::sscanf(line.c_str(), "N=%d M=%d", &n, &m) != 2) {
      throw std::invalid_argument("truth table header must be 'N=<n> M=<m>'");
    }
    break;
  }
  if (n < 0 || m < 1 || n > 30) {
    throw std::invalid_argument("truth table header missing or invalid");
  }
  std::vector<std::uint64_t> table;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    table.push_back(parse_hex_word(
        std::string_view(line).substr(first, last - first + 1)));
  }
  if (table.size() != (std::uint64_t{1} << n)) {
    throw std::invalid_argument("truth table has " +
                                std::to_string(table.size()) +
                                " rows, expected 2^" + std::to_string(n));
  }
  return {n, m, std::move(table), std::move(name)};
}

Circuit read_truth_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open truth table " + path);
  return parse_truth_table(in, "file:" + path);
}

void write_truth_table(std::ostream& out, const Circuit& c) {
  out << "N=" << c.inputs() << " M=" << c.outputs() << '\n';
  for (auto w : c.table()) out << to_hex(w, c.outputs()) << '\n';
}

Circuit build_circuit(std::string_view spec) {
  auto colon = spec.find(':');
  std::string_view kind = spec.substr(0, colon);
  std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto to_int = [&](std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
      throw std::invalid_argument("bad circuit spec '" + std::string(spec) + "'");
    }
    return v;
  };
  if (kind == "and") return make_and();
  if (kind == "xor") return make_xor();
  if (kind == "parity") return make_parity(to_int(arg));
  if (kind == "mul") {
    auto x = arg.find('x');
    if (x == std::string_view::npos) {
      throw std::invalid_argument("mul spec must look like mul:3x3");
    }
    return make_mul(to_int(arg.substr(0, x)), to_int(arg.substr(x + 1)));
  }
  if (kind == "file") return read_truth_table(std::string(arg));
  throw std::invalid_argument("unknown circuit kind '" + std::string(kind) + "'");
}

InputLevel::InputLevel(const Circuit& c, int aux, const SpinState& sigma)
    : sigma_(sigma.bits()), n_in_(c.inputs()),
      total_(c.inputs() + c.outputs() + aux),
      convention_(sigma.convention()) {
  if (sigma.size() != c.inputs()) {
    throw std::invalid_argument("input state has wrong length");
  }
  if (aux < 0 || total_ > kMaxSpins) {
    throw std::invalid_argument("auxiliary count out of range");
  }
  count_ = std::uint64_t{1} << (c.outputs() + aux);
}

SpinState InputLevel::iterator::operator*() const {
  return {level_->sigma_ | (rest_ << level_->n_in_), level_->total_,
          level_->convention_};
}

InputLevel input_level(const Circuit& c, int aux, const SpinState& sigma) {
  return {c, aux, sigma};
}

}  // namespace revising
