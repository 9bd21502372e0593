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


#include "revising/threshold_function.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "revising/spin.hpp"

namespace revising {

ThresholdFunction::ThresholdFunction(std::vector<double> weights, double bias)
    : w_(std::move(weights)), b_(bias) {
  build();
}

void ThresholdFunction::build() {
  if (w_.size() > 63) throw std::invalid_argument("threshold dimension too large");
  support_.clear();
  for (int i = 0; i < dim(); ++i) {
    if (!std::isfinite(w_[i])) throw std::invalid_argument("non-finite weight");
    if (w_[i] != 0.0) support_.push_back(i);
  }
  if (!std::isfinite(b_)) throw std::invalid_argument("non-finite bias");
  table_.reset();
  if (dim() <= kCachedDim) {
    TruthTable t(dim());
    for (std::uint64_t x = 0; x < t.size(); ++x) t.set(x, evaluate_weights(x));
    table_ = std::move(t);
  }
}

ThresholdFunction ThresholdFunction::from_table(const TruthTable& table,
                                                std::vector<double> weights,
                                                double bias) {
  if (static_cast<int>(weights.size()) != table.dim()) {
    throw std::invalid_argument("weight count does not match table dimension");
  }
  ThresholdFunction t(std::move(weights), bias);
  if (t.has_table() && !(t.table() == table)) {
    throw std::invalid_argument("weights do not realize the given table");
  }
  return t;
}

ThresholdFunction ThresholdFunction::constant(int dim, bool value) {
  return {std::vector<double>(dim, 0.0), value ? -1.0 : 1.0};
}

ThresholdFunction ThresholdFunction::and_pair(int dim, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= dim || j >= dim) {
    throw std::invalid_argument("bad AND pair");
  }
  std::vector<double> w(dim, 0.0);
  w[i] = 2.0;
  w[j] = 2.0;
  return {std::move(w), 3.0};
}

const TruthTable& ThresholdFunction::table() const {
  if (!table_) {
    throw std::logic_error("threshold table not cached at dimension " +
                           std::to_string(dim()));
  }
  return *table_;
}

bool ThresholdFunction::evaluate_weights(std::uint64_t x) const {
  double s = -b_;
  for (int i : support_) {
    if ((x >> i) & 1u) s += w_[i];
  }
  return s > 0.0;
}

double ThresholdFunction::margin() const {
  if (support_.size() > 26) throw std::invalid_argument("support too large");
  double best = std::numeric_limits<double>::infinity();
  const std::uint64_t count = std::uint64_t{1} << support_.size();
  for (std::uint64_t y = 0; y < count; ++y) {
    double s = -b_;
    for (std::size_t k = 0; k < support_.size(); ++k) {
      if ((y >> k) & 1u) s += w_[support_[k]];
    }
    best = std::min(best, std::abs(s));
  }
  return best;
}

void ThresholdFunction::normalize_margin() {
  const double m = margin();
  if (!(m > 0.0)) throw std::runtime_error("a vertex lies on the threshold plane");
  for (auto& w : w_) w /= m;
  b_ /= m;
  build();
}

ThresholdFunction ThresholdFunction::extruded() const {
  auto w = w_;
  w.push_back(0.0);
  return {std::move(w), b_};
}

ThresholdFunction ThresholdFunction::extruded_to(int d) const {
  if (d < dim()) throw std::invalid_argument("cannot extrude to a smaller dimension");
  auto w = w_;
  w.resize(d, 0.0);
  return {std::move(w), b_};
}

AuxiliaryFunction::AuxiliaryFunction(int base_dim,
                                     std::vector<ThresholdFunction> components)
    : base_(base_dim) {
  for (auto& t : components) append(std::move(t));
}

void AuxiliaryFunction::check(const ThresholdFunction& t, int k) const {
  if (t.dim() > base_ + k) {
    throw std::invalid_argument("auxiliary component " + std::to_string(k) +
                                " has dimension " + std::to_string(t.dim()) +
                                " > " + std::to_string(base_ + k));
  }
}

void AuxiliaryFunction::append(ThresholdFunction t) {
  check(t, size());
  g_.push_back(std::move(t));
}

void AuxiliaryFunction::replace(int k, ThresholdFunction t) {
  if (k < 0 || k >= size()) throw std::out_of_range("component index out of range");
  check(t, k);
  g_[k] = std::move(t);
}

std::uint64_t AuxiliaryFunction::operator()(std::uint64_t z) const {
  std::uint64_t full = z;
  std::uint64_t out = 0;
  for (int k = 0; k < size(); ++k) {
    if (g_[k](full & low_mask(g_[k].dim()))) {
      out |= std::uint64_t{1} << k;
      full |= std::uint64_t{1} << (base_ + k);
    }
  }
  return out;
}

std::vector<std::uint64_t> AuxiliaryFunction::evaluate_all() const {
  if (base_ > TruthTable::kMaxDim) throw std::invalid_argument("base too large");
  std::vector<std::uint64_t> out(std::uint64_t{1} << base_);
  for (std::uint64_t z = 0; z < out.size(); ++z) out[z] = (*this)(z);
  return out;
}

TruthTable AuxiliaryFunction::component_table(int k) const {
  const auto& t = g_.at(k);
  if (t.has_table()) return t.table();
  TruthTable out(t.dim());
  for (std::uint64_t x = 0; x < out.size(); ++x) out.set(x, t(x));
  return out;
}

AuxiliaryFunction glue_aux(const AuxiliaryFunction& g1,
                           const AuxiliaryFunction& g2) {
  if (g1.base_dim() != g2.base_dim()) {
    throw std::invalid_argument("glued auxiliary functions need the same base");
  }
  const int base = g1.base_dim();
  const int shift = g1.size();
  AuxiliaryFunction out = g1;
  for (const auto& t : g2.components()) {
    if (t.dim() <= base) {
      out.append(t);
      continue;
    }
    std::vector<double> w(t.weights().begin(), t.weights().begin() + base);
    w.insert(w.end(), shift, 0.0);
    w.insert(w.end(), t.weights().begin() + base, t.weights().end());
    out.append(ThresholdFunction(std::move(w), t.bias()));
  }
  return out;
}

}  // namespace revising
