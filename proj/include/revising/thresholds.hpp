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
#include <optional>
#include <string>
#include <vector>

#include "revising/lp.hpp"
#include "revising/pseudobool.hpp"
#include "revising/spin.hpp"
#include "revising/symmetry.hpp"
#include "revising/threshold_function.hpp"

namespace revising {

/// Separating certificate for a table, rescaled to vertex margin 1, or none
/// when the separation LP is infeasible. Requires d <= 12.
std::optional<ThresholdFunction> is_threshold(const TruthTable& table,
                                              const LPOptions& opts = {});

enum class NeutralizabilityKind { Strong, Weak };

/// Auxiliary-circuit Hamiltonian R (PlusMinus). For Strong, R lives on the
/// d inputs plus the auxiliary spin at index d and satisfies R(z, g(z)) = 0,
/// R(z, not g(z)) >= 1. For Weak, R lives on N + M + prefix + 1 spins.
struct NeutralizabilityCertificate {
  QuadraticHamiltonian R;
  NeutralizabilityKind kind = NeutralizabilityKind::Strong;
  std::uint64_t circuit_id = 0;
  double gap = 0.0;
};

/// LP feasibility of the strong conditions for t (d + 1 <= 16).
std::optional<NeutralizabilityCertificate> check_strong_neutralizable(
    const ThresholdFunction& t, const LPOptions& opts = {});

/// Exhaustive re-check of a strong certificate; returns the smallest
/// off-graph value when the on-graph values vanish within tol, else nullopt.
std::optional<double> validate_strong(const ThresholdFunction& t,
                                      const QuadraticHamiltonian& R,
                                      double tol = 1e-6);

/// Weak conditions for t as the next auxiliary component after `prefix` on
/// circuit c: R(z, not t) >= R(z, t) + 1 on every base point, and the
/// g-augmented comparisons R(sigma, omega, .) >= R(sigma, f(sigma), .).
std::optional<NeutralizabilityCertificate> check_weak_neutralizable(
    const ThresholdFunction& t, const Circuit& c,
    const AuxiliaryFunction& prefix, const LPOptions& opts = {});

/// f^sd(x, s) = f(x) if s = 1, not f(not x) if s = 0; the new variable s is
/// placed at index d. Weights (w, sum w - 2b), bias sum w - b.
ThresholdFunction self_dualize(const ThresholdFunction& t);
/// Same function with an ignored new variable at index d.
ThresholdFunction extrude(const ThresholdFunction& t);

enum class LibraryMode { Exhaustive, Sampled };

/// Dedup key choice for libraries; None keeps every distinct table and
/// OutputNegation identifies t with not t.
enum class LibraryGroup { None, OutputNegation, SpinActionsOnly, FullGroup };

std::string to_string(LibraryMode m);
std::string to_string(LibraryGroup g);
/// Inverse of to_string; throws on unknown names.
LibraryGroup parse_library_group(const std::string& s);

struct LibraryEntry {
  ThresholdFunction fn;
  bool strong = false;
};

struct ThresholdLibrary {
  int dim = 0;
  LibraryMode mode = LibraryMode::Exhaustive;
  LibraryGroup group = LibraryGroup::None;
  std::vector<LibraryEntry> entries;

  std::size_t size() const { return entries.size(); }
};

/// Canonical key of a table under a library group.
TruthTable library_key(const TruthTable& t, LibraryGroup group);

/// Every threshold function of dimension d, built from comparable pairs of
/// (d-1)-dimensional cofactors and confirmed by LP. d <= 4 unless
/// allow_long is set (then d <= 5). Entries sorted by table.
ThresholdLibrary enumerate_thresholds(int d, bool allow_long = false,
                                      const LPOptions& opts = {});

/// Random hyperplanes: weights ~ N(0, 1), bias ~ U[-sum|w|, sum|w|],
/// resampled when a vertex lies within 1e-9 of the plane. Dedup under
/// `group`; entries sorted by key. Deterministic for a fixed seed.
ThresholdLibrary sample_thresholds(int d, std::uint64_t n_samples,
                                   std::uint64_t seed,
                                   LibraryGroup group = LibraryGroup::SpinActionsOnly);

/// Runs the strong check on every entry and sets the flag.
void certify_strong(ThresholdLibrary& lib, const LPOptions& opts = {});

void write_library(std::ostream& out, const ThresholdLibrary& lib);
ThresholdLibrary read_library(std::istream& in);
void save_library(const std::string& path, const ThresholdLibrary& lib);
ThresholdLibrary load_library(const std::string& path);

struct ScanOrbit {
  ThresholdFunction representative;  // canonical table under FullGroup
  std::size_t orbit_size = 0;
};

struct ScanLevel {
  int dim = 0;
  std::size_t threshold_count = 0;
  std::size_t strong_count = 0;
  std::vector<ScanOrbit> nonredundant;  // depend on every variable
};

struct ScanReport {
  std::vector<ScanLevel> levels;
  /// The non-redundant orbits are exactly the AND orbit at d = 2, the
  /// self-dualized AND orbit at d = 3, and nothing at other d > 1.
  bool supports_conjecture = false;
};

/// Strongly neutralizable threshold functions up to FullGroup symmetry that
/// are not extrusions, for d = 1..dmax (dmax <= 5).
ScanReport scan_nonredundant(int dmax, const LPOptions& opts = {});

}  // namespace revising
