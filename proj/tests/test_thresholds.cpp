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


#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "revising/thresholds.hpp"

using namespace revising;

namespace {

// Tables realized by small integer weights and half-integer biases; for
// d <= 4 this already covers every threshold function.
std::set<TruthTable> brute_force_thresholds(int d, int wmax) {
  std::set<TruthTable> out;
  std::vector<int> w(d, -wmax);
  const std::uint64_t points = std::uint64_t{1} << d;
  for (;;) {
    for (int b2 = -2 * wmax * d - 1; b2 <= 2 * wmax * d + 1; b2 += 2) {
      TruthTable t(d);
      for (std::uint64_t x = 0; x < points; ++x) {
        int dot = 0;
        for (int i = 0; i < d; ++i) {
          if ((x >> i) & 1u) dot += 2 * w[i];
        }
        t.set(x, dot > b2);
      }
      out.insert(t);
    }
    int i = 0;
    while (i < d && w[i] == wmax) w[i++] = -wmax;
    if (i == d) break;
    ++w[i];
  }
  return out;
}

std::set<TruthTable> tables(const ThresholdLibrary& lib) {
  std::set<TruthTable> out;
  for (const auto& e : lib.entries) out.insert(e.fn.table());
  return out;
}

}  // namespace

TEST_CASE("threshold counts for small dimensions") {
  const std::size_t expected[] = {2, 4, 14, 104, 1882};
  for (int d = 0; d <= 4; ++d) CHECK(enumerate_thresholds(d).size() == expected[d]);
  CHECK_THROWS(enumerate_thresholds(5));
}

TEST_CASE("enumeration matches integer-weight brute force") {
  for (int d = 1; d <= 4; ++d) {
    CHECK(tables(enumerate_thresholds(d)) == brute_force_thresholds(d, 3));
  }
}

TEST_CASE("enumerated certificates reproduce their tables with unit margin") {
  auto lib = enumerate_thresholds(4);
  CHECK(std::is_sorted(lib.entries.begin(), lib.entries.end(),
                       [](const auto& a, const auto& b) {
                         return a.fn.table() < b.fn.table();
                       }));
  for (const auto& e : lib.entries) {
    ThresholdFunction raw(e.fn.weights(), e.fn.bias());
    CHECK(raw.table() == e.fn.table());
    CHECK(e.fn.margin() == doctest::Approx(1.0));
  }
}

TEST_CASE("is_threshold rejects parities and accepts their relatives") {
  auto xor2 = TruthTable::from_word(2, 0b0110);
  CHECK_FALSE(is_threshold(xor2).has_value());
  CHECK_FALSE(is_threshold(xor2.negated()).has_value());
  CHECK_FALSE(is_threshold(TruthTable::from_word(3, 0x96)).has_value());
  auto and3 = is_threshold(TruthTable::from_word(3, 0x80));
  REQUIRE(and3.has_value());
  CHECK(and3->table().word() == 0x80);
  CHECK(is_threshold(TruthTable::constant(5, true)).has_value());
  CHECK_THROWS(is_threshold(TruthTable(13)));
}

TEST_CASE("sampling recovers every three-variable function") {
  auto sampled = sample_thresholds(3, 100000, 7, LibraryGroup::None);
  CHECK(tables(sampled) == tables(enumerate_thresholds(3)));
  for (const auto& e : sampled.entries) CHECK(is_threshold(e.fn.table()).has_value());
}

TEST_CASE("sampling dedups by orbit and is deterministic") {
  std::set<TruthTable> keys;
  for (const auto& e : enumerate_thresholds(4).entries) {
    keys.insert(library_key(e.fn.table(), LibraryGroup::SpinActionsOnly));
  }
  auto a = sample_thresholds(4, 200000, 42);
  auto b = sample_thresholds(4, 200000, 42);
  std::ostringstream sa, sb;
  write_library(sa, a);
  write_library(sb, b);
  CHECK(sa.str() == sb.str());
  std::set<TruthTable> got;
  for (const auto& e : a.entries) {
    got.insert(library_key(e.fn.table(), LibraryGroup::SpinActionsOnly));
  }
  CHECK(got.size() == a.size());
  for (const auto& k : got) CHECK(keys.count(k) == 1);
  CHECK(a.size() <= keys.size());
  MESSAGE("orbits sampled " << a.size() << " of " << keys.size());
}

TEST_CASE("self-dualization") {
  const auto and2 = ThresholdFunction::and_pair(2, 0, 1);
  const auto sd = self_dualize(and2);
  REQUIRE(sd.dim() == 3);
  // New variable at index 2: s = 1 keeps AND, s = 0 gives OR.
  CHECK(sd(0b011 | 0b100) == 1);
  CHECK(sd(0b001 | 0b100) == 0);
  CHECK(sd(0b010) == 1);
  CHECK(sd(0b000) == 0);
  CHECK(sd.table().word() == 0x8e);  // majority with the new input negated

  for (const auto& e : enumerate_thresholds(3).entries) {
    const auto f = self_dualize(e.fn);
    const std::uint64_t top = 1u << 3;
    for (std::uint64_t x = 0; x < 8; ++x) {
      CHECK(f(x | top) == e.fn(x));
      CHECK(f(x) == !e.fn(x ^ 7u));
      // Self-dual: complementing every input complements the output.
      CHECK(f(x) == !f(x ^ 0xfu));
    }
  }
}

TEST_CASE("extrusion ignores the new variable") {
  for (const auto& e : enumerate_thresholds(3).entries) {
    auto x = extrude(e.fn);
    CHECK(x.dim() == 4);
    CHECK(x.table() == e.fn.table().extruded());
    CHECK_FALSE(x.table().depends_on(3));
  }
}

TEST_CASE("strong neutralizability of AND and its certificate") {
  const auto and2 = ThresholdFunction::and_pair(2, 0, 1);
  auto cert = check_strong_neutralizable(and2);
  REQUIRE(cert.has_value());
  CHECK(cert->kind == NeutralizabilityKind::Strong);
  for (std::uint64_t x = 0; x < 4; ++x) {
    const std::uint64_t a = and2(x);
    CHECK(std::abs(cert->R.energy(x | (a << 2))) < 1e-6);
    CHECK(cert->R.energy(x | ((a ^ 1u) << 2)) >= 1.0 - 1e-6);
  }
  CHECK(validate_strong(and2, cert->R).has_value());
  CHECK_FALSE(validate_strong(ThresholdFunction({2.0, 2.0}, 1.0), cert->R).has_value());
}

TEST_CASE("strong neutralizability is a symmetry invariant") {
  for (int d = 2; d <= 3; ++d) {
    for (const auto& e : enumerate_thresholds(d).entries) {
      const bool s = check_strong_neutralizable(e.fn).has_value();
      auto rep = is_threshold(canonical_form(e.fn.table(), SymmetryGroup::FullGroup));
      REQUIRE(rep.has_value());
      CHECK(check_strong_neutralizable(*rep).has_value() == s);
    }
  }
  // AND of three inputs needs more than one auxiliary spin.
  CHECK_FALSE(check_strong_neutralizable(ThresholdFunction({1, 1, 1}, 2.5)).has_value());
  CHECK(check_strong_neutralizable(self_dualize(ThresholdFunction::and_pair(2, 0, 1)))
            .has_value());
}

TEST_CASE("weak neutralizability is strictly weaker") {
  const auto c = make_mul(2, 2);
  AuxiliaryFunction empty(8);
  const ThresholdFunction and4({1, 1, 1, 1}, 3.5);
  CHECK_FALSE(check_strong_neutralizable(and4).has_value());
  auto weak = check_weak_neutralizable(and4, c, empty);
  REQUIRE(weak.has_value());
  CHECK(weak->kind == NeutralizabilityKind::Weak);
  CHECK(weak->R.size() == 9);
  for (std::uint64_t z = 0; z < 256; ++z) {
    const std::uint64_t a = and4(z & 0xf);
    CHECK(weak->R.energy(z | ((a ^ 1u) << 8)) - weak->R.energy(z | (a << 8)) >=
          1.0 - 1e-6);
  }
  // Strong implies weak.
  for (const auto& e : enumerate_thresholds(2).entries) {
    if (!check_strong_neutralizable(e.fn)) continue;
    CHECK(check_weak_neutralizable(e.fn, make_xor(), AuxiliaryFunction(3)).has_value());
  }
  CHECK_THROWS(check_weak_neutralizable(ThresholdFunction(std::vector<double>(9, 1.0), 0.5),
                                        c, empty));
}

TEST_CASE("library files round trip") {
  auto lib = enumerate_thresholds(3);
  certify_strong(lib);
  std::stringstream ss;
  write_library(ss, lib);
  auto back = read_library(ss);
  CHECK(back.dim == 3);
  CHECK(back.mode == LibraryMode::Exhaustive);
  CHECK(back.group == LibraryGroup::None);
  REQUIRE(back.size() == lib.size());
  std::size_t strong = 0;
  for (std::size_t k = 0; k < lib.size(); ++k) {
    CHECK(back.entries[k].fn == lib.entries[k].fn);
    CHECK(back.entries[k].strong == lib.entries[k].strong);
    strong += lib.entries[k].strong;
  }
  CHECK(strong == 40);
  std::stringstream again;
  write_library(again, back);
  std::stringstream first;
  write_library(first, lib);
  CHECK(again.str() == first.str());
}

TEST_CASE("malformed libraries are rejected") {
  std::istringstream missing("dim=2 count=1 mode=Sampled\n");
  CHECK_THROWS(read_library(missing));
  std::istringstream count("dim=2 count=2 mode=Sampled group=None\ntt=8 w=2,2 b=3 strong=1\n");
  CHECK_THROWS(read_library(count));
  std::istringstream wrong("dim=2 count=1 mode=Sampled group=None\ntt=e w=2,2 b=3 strong=1\n");
  CHECK_THROWS(read_library(wrong));
  std::istringstream ok("dim=2 count=1 mode=Sampled group=None\ntt=8 w=2,2 b=3 strong=1\n");
  CHECK(read_library(ok).size() == 1);
}

TEST_CASE("non-redundant scan up to four variables") {
  auto report = scan_nonredundant(4);
  REQUIRE(report.levels.size() == 4);
  CHECK(report.supports_conjecture);
  CHECK(report.levels[1].nonredundant.size() == 1);
  CHECK(report.levels[1].nonredundant[0].representative.table() ==
        canonical_form(ThresholdFunction::and_pair(2, 0, 1).table(),
                       SymmetryGroup::FullGroup));
  CHECK(report.levels[2].nonredundant.size() == 1);
  CHECK(report.levels[2].nonredundant[0].orbit_size == 8);
  CHECK(report.levels[3].nonredundant.empty());
  CHECK(report.levels[3].threshold_count == 1882);
}
