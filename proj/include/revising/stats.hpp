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
#include <random>
#include <vector>

#include "revising/feasibility.hpp"
#include "revising/threshold_function.hpp"

namespace revising {

/// Random sequential auxiliary function: component k has dimension
/// base + k, weights ~ N(0, 1) and bias ~ U[-sum|w|/2, sum|w|/2].
AuxiliaryFunction random_aux(int base, int count, std::mt19937_64& rng);

struct ProfileRow {
  int run = 0;
  int radius = 0;
  double rho_radius = 0.0;
  double rho_full = 0.0;
  double ratio = 0.0;  // rho_radius / rho_full
};

/// rho_i / rho for i = 1..M over `runs` random auxiliary functions with
/// positive rho (draws with rho = 0 are replaced).
std::vector<ProfileRow> rho_profile(const Circuit& c, int n_aux, int runs,
                                    std::uint64_t seed, const RhoOptions& opts = {});

struct MinConstraintRow {
  int run = 0;
  std::uint64_t rows_total = 0;
  std::uint64_t min_rows = 0;
  double fraction = 0.0;
};

/// For random auxiliary functions with rho_radius > 0, shuffles the rows of
/// B_radius and binary-searches the shortest prefix whose rho is positive.
std::vector<MinConstraintRow> min_constraints(const Circuit& c, int n_aux, int runs,
                                              std::uint64_t seed, int radius = 2,
                                              const RhoOptions& opts = {});

/// CSV with a header line; reals printed with 9 significant digits.
void write_csv(std::ostream& out, const std::vector<ProfileRow>& rows);
void write_csv(std::ostream& out, const std::vector<MinConstraintRow>& rows);

}  // namespace revising
