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
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "revising/feasibility.hpp"
#include "revising/threshold_function.hpp"
#include "revising/thresholds.hpp"

namespace revising {

/// Every strongly neutralizable shape on the base spins up to output
/// negation: the four sign patterns of x_i AND x_j and the four
/// complement classes of MAJ(x_i, x_j, x_k), lifted onto every subset.
ThresholdLibrary lifted_library(int base_dim);

/// x_i AND x_j for i < j < n (the termination set of both searches).
std::vector<ThresholdFunction> and_pairs(int n);

enum class SearchStatus { Solved, Budget };
std::string to_string(SearchStatus s);

struct TraceEntry;

struct SearchOptions {
  RhoOptions rho;  // LP options and shared cache
  int threads = 0;  // candidate evaluations in flight; 0 resolves via RI_THREADS
  /// Increasing radii ending at M (0 stands for M). Empty means {M}.
  std::vector<int> radius_schedule;
  int max_aux = 16;
  double max_seconds = 0.0;  // 0 = unlimited
  /// 0 keeps library order; otherwise the candidate list is shuffled once
  /// with this seed.
  std::uint64_t seed = 0;
  /// Starting point for restarts.
  AuxiliaryFunction initial;
  bool has_initial = false;
  /// rho below this counts as zero.
  double zero_tol = 1e-6;
  /// Accepted replacements must lower rho by more than this.
  double improve_tol = 1e-6;
  /// Accept only candidates whose components carry a strong or weak
  /// neutralizability certificate (checked lazily, best rho first).
  bool certify = true;
  /// Called after every trace entry (progress reporting).
  std::function<void(const TraceEntry&)> on_step;
};

struct TraceEntry {
  int size = 0;      // |g| after the step
  int radius = 0;    // radius the value was measured at
  double rho = 0.0;
  std::string event;  // start, append, replace, advance, solved
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::Budget;
  AuxiliaryFunction g;
  FeasibilityResult certificate;  // full-radius augmented certificate
  std::vector<TraceEntry> trace;
  std::uint64_t seed = 0;
  double wall_time = 0.0;
  std::uint64_t lp_solves = 0;
};

/// Appends the rho-minimizing candidate until rho vanishes. Candidates for
/// slot k are the library functions of dimension <= N + M + k plus the AND
/// pairs over N + M + k variables.
SearchOutcome greedy(const Circuit& c, const std::vector<ThresholdLibrary>& libs,
                     const SearchOptions& opts = {});

/// Working-set coordinate descent with replacement from the library plus
/// the AND pairs over the slot's inputs; appends a component when the
/// working set runs dry.
SearchOutcome descent(const Circuit& c, const ThresholdLibrary& lib,
                      const SearchOptions& opts = {});

/// rho(g with component j replaced by the constant 0) - rho(g).
double contribution(const Circuit& c, const AuxiliaryFunction& g, int j,
                    int radius = kFullRadius, const RhoOptions& opts = {});

/// Descent driven through an explicit radius schedule starting from g.
SearchOutcome escalate(const Circuit& c, const AuxiliaryFunction& g,
                       const std::vector<int>& schedule, const ThresholdLibrary& lib,
                       SearchOptions opts = {});

/// Outcome serialization (JSON) for restarts.
void write_outcome(std::ostream& out, const SearchOutcome& o);
SearchOutcome read_outcome(std::istream& in, int base_dim);

}  // namespace revising
