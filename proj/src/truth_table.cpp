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

#include "revising/truth_table.hpp"

#include <bit>
#include <stdexcept>

#include "revising/spin.hpp"

namespace revising {

namespace {

constexpr std::uint64_t kLowHalf[6] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
    0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull};

std::size_t word_count(int dim) {
  return dim <= 6 ? 1 : std::size_t{1} << (dim - 6);
}

}  // namespace

TruthTable::TruthTable(int dim) : dim_(dim) {
  if (dim < 0 || dim > kMaxDim) {
    throw std::invalid_argument("truth table dimension out of range");
  }
  words_.assign(word_count(dim), 0);
}

TruthTable TruthTable::from_word(int dim, std::uint64_t word) {
  if (dim > 6) throw std::invalid_argument("from_word needs dim <= 6");
  TruthTable t(dim);
  t.words_[0] = word;
  t.mask_tail();
  return t;
}

TruthTable TruthTable::constant(int dim, bool value) {
  TruthTable t(dim);
  if (value) {
    for (auto& w : t.words_) w = ~std::uint64_t{0};
    t.mask_tail();
  }
  return t;
}

TruthTable TruthTable::variable(int dim, int i) {
  if (i < 0 || i >= dim) throw std::invalid_argument("variable out of range");
  TruthTable t(dim);
  for (std::uint64_t k = 0; k < t.size(); ++k) t.set(k, (k >> i) & 1u);
  return t;
}

void TruthTable::mask_tail() {
  if (dim_ < 6) words_[0] &= low_mask(1 << dim_);
}

void TruthTable::set(std::uint64_t k, bool v) {
  const std::uint64_t bit = std::uint64_t{1} << (k & 63);
  if (v) {
    words_[k >> 6] |= bit;
  } else {
    words_[k >> 6] &= ~bit;
  }
}

std::uint64_t TruthTable::popcount() const {
  std::uint64_t c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool TruthTable::depends_on(int i) const { return !(flip_input(i) == *this); }

TruthTable TruthTable::flip_input(int i) const {
  if (i < 0 || i >= dim_) throw std::invalid_argument("variable out of range");
  TruthTable t(*this);
  if (i < 6) {
    const int s = 1 << i;
    const std::uint64_t m = kLowHalf[i];
    for (auto& w : t.words_) w = ((w & m) << s) | ((w >> s) & m);
    t.mask_tail();
  } else {
    const std::size_t stride = std::size_t{1} << (i - 6);
    for (std::size_t k = 0; k < t.words_.size(); ++k) {
      if (!(k & stride)) std::swap(t.words_[k], t.words_[k | stride]);
    }
  }
  return t;
}

TruthTable TruthTable::flip_inputs(std::uint64_t mask) const {
  TruthTable t(*this);
  for (int i = 0; i < dim_; ++i) {
    if ((mask >> i) & 1u) t = t.flip_input(i);
  }
  return t;
}

TruthTable TruthTable::negated() const {
  TruthTable t(*this);
  for (auto& w : t.words_) w = ~w;
  t.mask_tail();
  return t;
}

TruthTable TruthTable::permute_inputs(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != dim_) {
    throw std::invalid_argument("permutation size mismatch");
  }
  TruthTable t(dim_);
  for (std::uint64_t x = 0; x < size(); ++x) {
    std::uint64_t y = 0;
    for (int i = 0; i < dim_; ++i) y |= ((x >> perm[i]) & 1u) << i;
    t.set(x, get(y));
  }
  return t;
}

TruthTable TruthTable::extruded() const {
  TruthTable t(dim_ + 1);
  if (dim_ < 6) {
    const int half = 1 << dim_;
    t.words_[0] = words_[0] | (words_[0] << half);
    t.mask_tail();
  } else {
    std::copy(words_.begin(), words_.end(), t.words_.begin());
    std::copy(words_.begin(), words_.end(), t.words_.begin() + words_.size());
  }
  return t;
}

TruthTable TruthTable::restricted(const std::vector<int>& vars) const {
  TruthTable t(static_cast<int>(vars.size()));
  for (std::uint64_t y = 0; y < t.size(); ++y) {
    std::uint64_t x = 0;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      x |= ((y >> k) & 1u) << vars[k];
    }
    t.set(y, get(x));
  }
  return t;
}

std::string TruthTable::to_hex() const {
  // Big-endian hex of the integer sum_k f(k) 2^k.
  if (dim_ <= 6) return revising::to_hex(words_[0], 1 << dim_);
  std::string out;
  out.reserve(words_.size() * 16);
  for (auto it = words_.rbegin(); it != words_.rend(); ++it) {
    out += revising::to_hex(*it, 64);
  }
  return out;
}

TruthTable TruthTable::from_hex(int dim, std::string_view hex) {
  TruthTable t(dim);
  const std::size_t digits = dim <= 2 ? 1 : (std::size_t{1} << dim) / 4;
  if (hex.size() != digits) {
    throw std::invalid_argument("truth table hex has wrong length for dim " +
                                std::to_string(dim));
  }
  for (std::size_t w = 0; w < t.words_.size(); ++w) {
    const std::size_t take = std::min<std::size_t>(16, digits);
    const std::size_t end = hex.size() - w * 16;
    t.words_[w] = parse_hex_word(hex.substr(end - take, take));
  }
  if (dim < 6 && (t.words_[0] & ~low_mask(1 << dim)) != 0) {
    throw std::invalid_argument("truth table hex has bits beyond its length");
  }
  return t;
}

std::uint64_t TruthTable::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(dim_);
  for (auto w : words_) {
    std::uint64_t z = w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    h ^= z ^ (z >> 31);
  }
  return h;
}

bool operator<(const TruthTable& a, const TruthTable& b) {
  if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
  for (std::size_t k = 0; k < a.words_.size(); ++k) {
    const std::uint64_t diff = a.words_[k] ^ b.words_[k];
    if (diff == 0) continue;
    const int bit = std::countr_zero(diff);
    return ((a.words_[k] >> bit) & 1u) == 0;
  }
  return false;
}

}  // namespace revising
