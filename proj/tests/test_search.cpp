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


#include <set>
#include <sstream>

#include "doctest.h"
#include "revising/compose.hpp"
#include "revising/oracle.hpp"
#include "revising/search.hpp"
#include "revising/thresholds.hpp"

using namespace revising;

namespace {

bool same_trace(const SearchOutcome& a, const SearchOutcome& b) {
  if (a.trace.size() != b.trace.size()) return false;
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    const auto &x = a.trace[i], &y = b.trace[i];
    if (x.size != y.size || x.radius != y.radius || x.rho != y.rho || x.event != y.event) {
      return false;
    }
  }
  return a.g.components() == b.g.components();
}

}  // namespace

TEST_CASE("lifted library shapes") {
  for (int n : {3, 5, 8}) {
    auto lib = lifted_library(n);
    CHECK(lib.size() == static_cast<std::size_t>(4 * n * (n - 1) / 2 +
                                                  4 * n * (n - 1) * (n - 2) / 6));
    std::set<TruthTable> keys;
    for (const auto& e : lib.entries) {
      keys.insert(library_key(e.fn.table(), LibraryGroup::OutputNegation));
    }
    CHECK(keys.size() == lib.size());
  }
  for (const auto& e : lifted_library(4).entries) {
    CHECK(check_strong_neutralizable(e.fn).has_value());
  }
  CHECK(and_pairs(5).size() == 10);
}

TEST_CASE("greedy on the basic gates") {
  auto x = greedy(make_xor(), {lifted_library(3)});
  CHECK(x.status == SearchStatus::Solved);
  CHECK(x.g.size() == 1);
  auto a = greedy(make_and(), {lifted_library(3)});
  CHECK(a.status == SearchStatus::Solved);
  CHECK(a.g.size() == 0);
}

TEST_CASE("accepted components always carry a certificate") {
  // The full d = 3 library contains rho-optimal picks for xor that read the
  // output spin and admit no certificate; the lazy check skips them.
  const auto lib = enumerate_thresholds(3);
  const auto c = make_xor();
  auto checked = greedy(c, {lib});
  REQUIRE(checked.status == SearchStatus::Solved);
  for (int k = 0; k < checked.g.size(); ++k) CHECK(certify_component(c, checked.g, k));
  CHECK(compose_solution(c, checked.g).record.has_value());

  SearchOptions loose;
  loose.certify = false;
  auto unchecked = greedy(c, {lib}, loose);
  REQUIRE(unchecked.status == SearchStatus::Solved);
  CHECK_FALSE(certify_component(c, unchecked.g, 0));
  CHECK_FALSE(compose_solution(c, unchecked.g).record.has_value());
}

TEST_CASE("greedy with AND pairs only has a non-increasing trace") {
  auto out = greedy(make_parity(3), {});
  CHECK(out.status == SearchStatus::Solved);
  for (std::size_t i = 1; i < out.trace.size(); ++i) {
    if (out.trace[i].event == "append") {
      CHECK(out.trace[i].rho <= out.trace[i - 1].rho + 1e-6);
    }
  }
  auto res = compose_solution(make_parity(3), out.g);
  CHECK(res.record.has_value());
}

TEST_CASE("descent solves small multipliers and the result composes") {
  const auto c = make_mul(2, 2);
  auto out = descent(c, lifted_library(8));
  REQUIRE(out.status == SearchStatus::Solved);
  CHECK(out.g.size() <= 4);
  CHECK(out.certificate.feasible);
  auto res = compose_solution(c, out.g);
  REQUIRE(res.record.has_value());
  CHECK(res.verification.gap > 0.0);
}

TEST_CASE("contribution semantics") {
  const auto c = make_mul(2, 2);
  AuxiliaryFunction g(8);
  g.append(ThresholdFunction::and_pair(8, 0, 2));
  const double single = contribution(c, g, 0);
  CHECK(single == doctest::Approx(rho(c, AuxiliaryFunction(8)) - rho(c, g)).epsilon(1e-6));
  CHECK(single >= -1e-6);

  // Suppressing the last component equals deleting it.
  g.append(ThresholdFunction::and_pair(8, 1, 3));
  auto shorter = g;
  shorter.pop_back();
  CHECK(contribution(c, g, 1) ==
        doctest::Approx(rho(c, shorter) - rho(c, g)).epsilon(1e-6));

  // A duplicated component contributes nothing.
  auto dup = g;
  dup.append(g[0].extruded_to(10));
  CHECK(std::abs(contribution(c, dup, 2)) < 1e-6);
  CHECK_THROWS(contribution(c, g, 5));
}

TEST_CASE("searches are deterministic across runs and thread counts") {
  const auto c = make_mul(2, 2);
  SearchOptions o1;
  o1.seed = 3;
  o1.threads = 1;
  o1.radius_schedule = {1, 2, 4};
  SearchOptions o2 = o1;
  o2.threads = 2;
  auto a = descent(c, lifted_library(8), o1);
  auto b = descent(c, lifted_library(8), o1);
  auto d = descent(c, lifted_library(8), o2);
  CHECK(same_trace(a, b));
  CHECK(same_trace(a, d));
}

TEST_CASE("single-radius schedule equals plain descent") {
  const auto c = make_mul(2, 2);
  SearchOptions plain;
  SearchOptions full;
  full.radius_schedule = {4};
  CHECK(same_trace(descent(c, lifted_library(8), plain),
                   descent(c, lifted_library(8), full)));
}

TEST_CASE("escalation reaches full feasibility in order") {
  const auto c = make_mul(2, 2);
  auto out = escalate(c, AuxiliaryFunction(8), {1, 2, 4}, lifted_library(8));
  REQUIRE(out.status == SearchStatus::Solved);
  int last_radius = 0;
  for (std::size_t i = 0; i < out.trace.size(); ++i) {
    const auto& e = out.trace[i];
    CHECK(e.radius >= last_radius);
    if (e.event == "advance") CHECK(out.trace[i - 1].rho <= 1e-6);
    last_radius = e.radius;
  }
  CHECK(out.trace.back().radius == 4);
  CHECK_THROWS(escalate(c, AuxiliaryFunction(8), {2, 1, 4}, lifted_library(8)));
  CHECK_THROWS(escalate(c, AuxiliaryFunction(8), {1, 2}, lifted_library(8)));
}

TEST_CASE("budgets stop the search") {
  SearchOptions o;
  o.max_aux = 0;
  auto out = descent(make_xor(), lifted_library(3), o);
  CHECK(out.status == SearchStatus::Budget);
  CHECK(out.g.size() == 0);
}

TEST_CASE("outcomes serialize and restart") {
  const auto c = make_mul(2, 2);
  auto out = descent(c, lifted_library(8));
  std::stringstream ss;
  write_outcome(ss, out);
  auto back = read_outcome(ss, 8);
  CHECK(same_trace(out, back));
  CHECK(back.status == out.status);
  SearchOptions o;
  o.initial = back.g;
  o.has_initial = true;
  auto again = descent(c, lifted_library(8), o);
  CHECK(again.status == SearchStatus::Solved);
  CHECK(again.g.components() == out.g.components());
  std::stringstream wrong;
  write_outcome(wrong, out);
  CHECK_THROWS(read_outcome(wrong, 9));
}

TEST_CASE("descent matches exhaustive search on toy circuits") {
  for (const auto& c : {make_xor(), make_and(), make_parity(2)}) {
    int naive = -1;
    for (int A = 0; A <= 2 && naive < 0; ++A) {
      if (A << c.inputs() <= 20 && exhaustive_aux_search(c, A)) naive = A;
    }
    REQUIRE(naive >= 0);
    auto out = descent(c, lifted_library(c.inputs() + c.outputs()));
    REQUIRE(out.status == SearchStatus::Solved);
    CHECK(out.g.size() <= naive + 1);
    CHECK(compose_solution(c, out.g).record.has_value());
  }
}
