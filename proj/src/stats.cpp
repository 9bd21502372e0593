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


#include "revising/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "revising/constraints.hpp"

namespace revising {

namespace {

constexpr double kZero = 1e-6;
constexpr int kMaxDraws = 1000;

// Draws until the predicate accepts; bounded so degenerate circuits fail
// loudly instead of spinning.
template <class Accept>
AuxiliaryFunction draw(int base, int count, std::mt19937_64& rng, Accept&& accept) {
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    auto g = random_aux(base, count, rng);
    if (accept(g)) return g;
  }
  throw std::runtime_error("no random auxiliary function with positive rho");
}

}  // namespace

AuxiliaryFunction random_aux(int base, int count, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  AuxiliaryFunction g(base);
  for (int k = 0; k < count; ++k) {
    std::vector<double> w(base + k);
    double l1 = 0.0;
    for (auto& x : w) {
      x = normal(rng);
      l1 += std::abs(x);
    }
    const double b = std::uniform_real_distribution<double>(-l1 / 2, l1 / 2)(rng);
    g.append(ThresholdFunction(std::move(w), b));
  }
  return g;
}

std::vector<ProfileRow> rho_profile(const Circuit& c, int n_aux, int runs,
                                    std::uint64_t seed, const RhoOptions& opts) {
  std::mt19937_64 rng(seed);
  const int base = c.inputs() + c.outputs();
  std::vector<ProfileRow> rows;
  for (int run = 0; run < runs; ++run) {
    double full = 0.0;
    auto g = draw(base, n_aux, rng, [&](const AuxiliaryFunction& h) {
      full = rho(c, h, kFullRadius, opts);
      return full > kZero;
    });
    for (int r = 1; r <= c.outputs(); ++r) {
      const double v = r == c.outputs() ? full : rho(c, g, r, opts);
      rows.push_back({run, r, v, full, v / full});
    }
  }
  return rows;
}

std::vector<MinConstraintRow> min_constraints(const Circuit& c, int n_aux, int runs,
                                              std::uint64_t seed, int radius,
                                              const RhoOptions& opts) {
  if (radius < 1 || radius > c.outputs()) throw std::invalid_argument("radius out of range");
  std::mt19937_64 rng(seed);
  const int base = c.inputs() + c.outputs();
  std::vector<MinConstraintRow> rows;
  for (int run = 0; run < runs; ++run) {
    auto g = draw(base, n_aux, rng, [&](const AuxiliaryFunction& h) {
      return rho(c, h, radius, opts) > kZero;
    });
    const auto B = build_local(c, g, radius);
    std::vector<std::uint32_t> order(B.rows());
    std::iota(order.begin(), order.end(), 0u);
    std::shuffle(order.begin(), order.end(), rng);
    const auto shuffled = B.select_rows(order);
    // rho of a prefix only grows with its length.
    std::uint64_t lo = 1, hi = shuffled.rows();
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      const double v = solve_rho_lp(shuffled.prefix(mid), opts.lp).objective;
      if (v > kZero) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    rows.push_back({run, shuffled.rows(), lo,
                    static_cast<double>(lo) / static_cast<double>(shuffled.rows())});
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ProfileRow>& rows) {
  const auto old = out.precision(9);
  out << "run,radius,rho_radius,rho_full,ratio\n";
  for (const auto& r : rows) {
    out << r.run << ',' << r.radius << ',' << r.rho_radius << ',' << r.rho_full << ','
        << r.ratio << '\n';
  }
  out.precision(old);
}

void write_csv(std::ostream& out, const std::vector<MinConstraintRow>& rows) {
  const auto old = out.precision(9);
  out << "run,rows_total,min_rows,fraction\n";
  for (const auto& r : rows) {
    out << r.run << ',' << r.rows_total << ',' << r.min_rows << ',' << r.fraction << '\n';
  }
  out.precision(old);
}

}  // namespace revising
