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


// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any gated criterion fails.
//
// Criterion 9 (mul 3x3) is too slow to search inside a test run. It checks a
// stored solution and its search outcome from results/ instead, or from
// REVISING_MUL33_SOLUTION / REVISING_MUL33_OUTCOME. The solution is
// re-verified exhaustively here.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "revising/compose.hpp"
#include "revising/constraints.hpp"
#include "revising/feasibility.hpp"
#include "revising/lp.hpp"
#include "revising/oracle.hpp"
#include "revising/pseudobool.hpp"
#include "revising/search.hpp"
#include "revising/spin.hpp"
#include "revising/stats.hpp"
#include "revising/symmetry.hpp"
#include "revising/thresholds.hpp"

using namespace revising;

namespace {

// Pinned tolerances.
constexpr double kRhoZero = 1e-6;         // rho treated as zero (criteria 3, 4, 5)
constexpr double kLpAgree = 1e-6;         // IPM vs reference objective (7)
constexpr double kNormalResidual = 1e-7;  // relative normal-equation residual (7)
constexpr double kEnumSeconds = 600;      // criterion 1
constexpr double kMul22Seconds = 600;     // criterion 8
constexpr double kMul33Seconds = 8 * 3600;  // criterion 9
constexpr int kMul33MaxAux = 12;          // criterion 9

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Verdict {
  bool pass = false;
  std::string detail;
  bool gated = true;  // false: reported, never fails the run
};

int failures = 0;

void report(int id, const char* title, const std::function<Verdict()>& body) {
  const auto start = Clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  std::ostringstream line;
  line.precision(6);
  line << "criterion " << id << ": " << (v.pass ? "PASS" : (v.gated ? "FAIL" : "REPORT"))
       << "  " << title << "  [" << v.detail << "; " << seconds_since(start) << " s]";
  std::cout << line.str() << std::endl;
  if (!v.pass && v.gated) ++failures;
}

std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

AuxiliaryFunction gaussian_aux(std::mt19937_64& rng, int base, int count) {
  return random_aux(base, count, rng);
}

Circuit random_circuit(std::mt19937_64& rng, int n_in, int n_out) {
  std::vector<std::uint64_t> table(std::uint64_t{1} << n_in);
  for (auto& t : table) t = rng() & low_mask(n_out);
  return {n_in, n_out, std::move(table), "random"};
}

std::set<std::string> tables_of(const ThresholdLibrary& lib) {
  std::set<std::string> out;
  for (const auto& e : lib.entries) out.insert(e.fn.table().to_hex());
  return out;
}

// 1. Exhaustive threshold counts and sampling recovery.
Verdict threshold_enumeration() {
  const auto start = Clock::now();
  const std::size_t expect[] = {14, 104, 1882};
  std::ostringstream d;
  bool ok = true;
  for (int dim = 2; dim <= 4; ++dim) {
    const auto lib = enumerate_thresholds(dim);
    d << "d=" << dim << ":" << lib.size() << " ";
    ok = ok && lib.size() == expect[dim - 2];
  }
  const auto exact = tables_of(enumerate_thresholds(3));
  const auto sampled = tables_of(sample_thresholds(3, 100000, 1, LibraryGroup::None));
  d << "sampled d=3:" << sampled.size();
  ok = ok && sampled == exact;
  const double t = seconds_since(start);
  return {ok && t <= kEnumSeconds, d.str()};
}

// 2. Rosenberg reduction is exact on random polynomials.
Verdict rosenberg() {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> coef(-5, 5);
  int exact = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    MultilinearPolynomial p;
    p.n_vars = n;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      if (rng() % 2) p.add(mask, coef(rng));
    }
    const auto red = rosenberg_reduce(p);
    const int aux = red.q.n_vars - n;
    bool ok = red.q.degree() <= 2;
    for (std::uint64_t x = 0; ok && x < (std::uint64_t{1} << n); ++x) {
      double best = std::numeric_limits<double>::infinity();
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << aux); ++a) {
        best = std::min(best, evaluate(red.q, SpinState(x | (a << n), red.q.n_vars,
                                                        Convention::ZeroOne)));
      }
      ok = best == evaluate(p, SpinState(x, n, Convention::ZeroOne));
    }
    exact += ok ? 1 : 0;
  }
  return {exact == 100, std::to_string(exact) + "/100 exact"};
}

// 3. rho(f, no auxiliaries) vanishes exactly on threshold functions.
Verdict threshold_equivalence() {
  int agree = 0, total = 0, thresholds = 0;
  for (int n = 2; n <= 3; ++n) {
    const std::uint64_t count = std::uint64_t{1} << (1u << n);
    for (std::uint64_t word = 0; word < count; ++word) {
      std::vector<std::uint64_t> table(std::uint64_t{1} << n);
      for (std::uint64_t k = 0; k < table.size(); ++k) table[k] = (word >> k) & 1;
      const Circuit c(n, 1, table, "f");
      const bool zero = rho(c, AuxiliaryFunction(n + 1)) <= kRhoZero;
      const bool thr = is_threshold(TruthTable::from_word(n, word)).has_value();
      thresholds += thr ? 1 : 0;
      agree += zero == thr ? 1 : 0;
      ++total;
    }
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) +
                              " agree, " + std::to_string(thresholds) + " thresholds"};
}

// 4. rho is invariant under spin actions.
Verdict symmetry_invariance() {
  std::mt19937_64 rng(4);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n_in = 2 + static_cast<int>(rng() % 2);
    const int n_out = 1 + static_cast<int>(rng() % 2);
    const int n_aux = 1 + static_cast<int>(rng() % 2);
    const auto c = random_circuit(rng, n_in, n_out);
    const auto g = gaussian_aux(rng, n_in + n_out, n_aux);
    const int bits = n_in + n_out + n_aux;
    // Even trials act on every spin jointly, odd trials on auxiliaries only.
    const std::uint64_t flips = trial % 2 == 0
                                    ? rng() & low_mask(bits)
                                    : (rng() & low_mask(n_aux)) << (n_in + n_out);
    const SpinAction a{flips, bits};
    const double before = rho(c, g);
    const double after = rho(act_function(a, c), act_aux(a, g));
    worst = std::max(worst, std::abs(before - after));
  }
  std::ostringstream d;
  d << "max |drho|=" << worst;
  return {worst <= kRhoZero, d.str()};
}

// 5. Radius filtration on mul(3,3) and the emitted profile.
Verdict filtration() {
  const auto c = make_mul(3, 3);
  std::mt19937_64 rng(5);
  bool ok = true;
  std::ostringstream d;
  for (int run = 0; run < 2; ++run) {
    const auto g = gaussian_aux(rng, 12, 4);
    double prev = -1;
    for (int r = 1; r <= c.outputs(); ++r) {
      const double v = rho(c, g, r);
      ok = ok && v >= prev - kRhoZero;
      prev = v;
    }
    const double full = rho(c, g, kFullRadius);
    ok = ok && std::abs(prev - full) <= kRhoZero;
    d << "run " << run << " rho_M=" << prev << " rho=" << full << "; ";
  }
  std::ostringstream csv;
  write_csv(csv, rho_profile(c, 4, 2, 55));
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  double prev_ratio = -1;
  int prev_run = -1, rows = 0;
  while (std::getline(in, line)) {
    int run, radius;
    double rr, rf, ratio;
    char sep;
    std::istringstream ls(line);
    ls >> run >> sep >> radius >> sep >> rr >> sep >> rf >> sep >> ratio;
    if (run != prev_run) prev_ratio = -1;
    ok = ok && ratio >= prev_ratio - kRhoZero;
    if (radius == c.outputs()) ok = ok && std::abs(ratio - 1.0) <= kRhoZero;
    prev_ratio = ratio;
    prev_run = run;
    ++rows;
  }
  d << "csv rows=" << rows;
  return {ok && rows == 2 * c.outputs(), d.str()};
}

// 6. Row and column counts against closed forms.
Verdict constraint_counts() {
  bool ok = true;
  struct Case {
    int n, m, a;
  };
  std::mt19937_64 rng(6);
  for (const auto& cs : {Case{1, 1, 0}, Case{1, 1, 1}, Case{2, 2, 2}, Case{3, 3, 3}}) {
    const auto c = make_mul(cs.n, cs.m);
    const int N = c.inputs(), M = c.outputs(), A = cs.a;
    const auto g = gaussian_aux(rng, N + M, A);
    const std::uint64_t levels = std::uint64_t{1} << N;
    const std::uint64_t aug = levels * ((std::uint64_t{1} << M) - 1);
    const std::uint64_t cols =
        (M + A) + binom(N + M + A, 2) - binom(N, 2);
    const auto B = build_augmented(c, g);
    ok = ok && B.rows() == aug && augmented_row_count(N, M) == aug;
    ok = ok && B.cols() == cols && column_count(N, M, A) == cols;
    for (int r = 1; r <= M; ++r) {
      std::uint64_t per = 0;
      for (int k = 1; k <= r; ++k) per += binom(M, k);
      ok = ok && build_local(c, g, r).rows() == levels * per &&
           local_row_count(N, M, r) == levels * per;
    }
  }
  const auto mul44 = make_mul(4, 4);
  const AuxiliaryFunction none(16);
  const auto local = build_local(mul44, none, 2).rows();
  const auto full = build_augmented(mul44, none).rows();
  std::ostringstream d;
  d << "mul(4,4) radius 2: " << local << "/" << full << " = "
    << static_cast<double>(local) / static_cast<double>(full);
  return {ok && local == 9216 && full == 65280, d.str()};
}

// 7. Interior point vs reference simplex, and normal-equation residuals.
Verdict lp_differential() {
  std::mt19937_64 rng(7);
  double worst_obj = 0, worst_res = 0;
  int optimal = 0;
  auto sign_matrix = [&](int m, int n, double density) {
    std::vector<int> vals(static_cast<std::size_t>(m) * n, 0);
    std::bernoulli_distribution nz(density), sign(0.5);
    for (auto& v : vals) {
      if (nz(rng)) v = sign(rng) ? 1 : -1;
    }
    return ConstraintMatrix::from_dense(m, n, vals);
  };
  for (int trial = 0; trial < 200; ++trial) {
    // A fifth of the instances at the full size bound, the rest spread out.
    const bool big = trial % 5 == 0;
    const int m = big ? 5000 : 1 + static_cast<int>(rng() % 1500);
    const int n = big ? 100 : 1 + static_cast<int>(rng() % 100);
    const auto B = sign_matrix(m, n, 0.1 + 0.8 * static_cast<double>(rng() % 100) / 100.0);
    const std::vector<double> v(m, 1.0);
    const auto ipm = solve_artificial({&B, v});
    const auto ref = reference_solve({&B, v});
    optimal += ipm.status == LPStatus::Optimal ? 1 : 0;
    worst_obj = std::max(worst_obj, std::abs(ipm.objective - ref.objective));
  }
  std::uniform_real_distribution<double> pos(0.1, 10.0);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 50 + static_cast<int>(rng() % 150);
    const int n = 1 + static_cast<int>(rng() % 20);
    const auto B = sign_matrix(m, n, 0.5);
    ColumnPairPlan plan(B);
    std::vector<double> k1(m), k2(m);
    for (auto& x : k1) x = pos(rng);
    for (auto& x : k2) x = pos(rng);
    Eigen::VectorXd q(n + m);
    for (auto& x : q) x = nd(rng);
    const auto p = solve_normal_equations(plan, B, k1, k2, q);
    // Dense A K A^T with A^T = [[-B, -I], [0, -I]].
    const auto d = B.dense();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + m, 2 * m);
    for (int r = 0; r < m; ++r) {
      for (int j = 0; j < n; ++j) A(j, r) = -d[static_cast<std::size_t>(r) * n + j];
      A(n + r, r) = -1;
      A(n + r, m + r) = -1;
    }
    Eigen::VectorXd K(2 * m);
    for (int r = 0; r < m; ++r) {
      K[r] = k1[r];
      K[m + r] = k2[r];
    }
    const Eigen::VectorXd res = A * K.asDiagonal() * A.transpose() * p - q;
    worst_res = std::max(worst_res, res.lpNorm<Eigen::Infinity>() /
                                        (1 + q.lpNorm<Eigen::Infinity>()));
  }
  std::ostringstream d;
  d << optimal << "/200 optimal, max |dobj|=" << worst_obj << ", max residual=" << worst_res;
  return {optimal == 200 && worst_obj <= kLpAgree && worst_res <= kNormalResidual, d.str()};
}

// 8. mul(2,2) end to end through a solution file.
Verdict mul22() {
  const auto start = Clock::now();
  const auto c = make_mul(2, 2);
  const auto out = descent(c, lifted_library(8));
  if (out.status != SearchStatus::Solved) return {false, "search hit its budget"};
  const auto comp = compose_solution(c, out.g);
  if (!comp.record) return {false, comp.failure};
  const auto path = std::filesystem::temp_directory_path() / "revising_accept_mul22.json";
  save_solution(path.string(), *comp.record);
  const auto rec = load_solution(path.string());
  std::filesystem::remove(path);
  const int aux = rec.H.size() - 8;
  const auto v = verify_hamiltonian(rec.circuit(), rec.H, aux);
  const double t = seconds_since(start);
  std::ostringstream d;
  d << "|g|=" << aux << " states=2^" << 8 + aux << " gap=" << v.gap;
  return {v.pass && v.gap > 0 && t <= kMul22Seconds, d.str()};
}

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : fallback;
}

// 9. mul(3,3): stored solution re-verified.
Verdict mul33() {
  const auto sol = env_or("REVISING_MUL33_SOLUTION", REVISING_RESULTS_DIR "/mul3x3_solution.json");
  const auto outc = env_or("REVISING_MUL33_OUTCOME", REVISING_RESULTS_DIR "/mul3x3_outcome.json");
  if (!std::filesystem::exists(sol)) return {false, "no stored solution at " + sol};
  const auto rec = load_solution(sol);
  const auto c = rec.circuit();
  if (!(c == make_mul(3, 3))) return {false, "stored solution is not mul(3,3)"};
  const int aux = rec.H.size() - 12;
  const auto v = verify_hamiltonian(c, rec.H, aux, 1);
  std::ostringstream d;
  d << "|g|=" << aux << " gap=" << v.gap;
  double wall = std::numeric_limits<double>::infinity();
  if (std::filesystem::exists(outc)) {
    std::ifstream in(outc);
    const auto o = read_outcome(in, 12);
    wall = o.wall_time;
    d << " search=" << wall << " s";
  } else {
    d << " (no outcome file, search time unknown)";
  }
  return {v.pass && v.gap > 0 && aux <= kMul33MaxAux && wall <= kMul33Seconds, d.str()};
}

// 10. Composition verifies at lambda and at 10 lambda.
Verdict composition() {
  bool ok = true;
  std::ostringstream d;
  for (const auto& c : {make_xor(), make_mul(2, 2)}) {
    const auto out = descent(c, lifted_library(c.inputs() + c.outputs()));
    if (out.status != SearchStatus::Solved) return {false, c.name() + ": search failed"};
    const auto comp = compose_solution(c, out.g);
    if (!comp.record) return {false, c.name() + ": " + comp.failure};
    const auto& r = *comp.record;
    const auto& l = r.lambda;
    ok = ok && std::abs(l.lambda - (std::max(l.beta, 0.0) / l.alpha + 1)) <= 1e-12;
    const int aux = out.g.size();
    const auto v1 = verify_hamiltonian(c, compose_hamiltonian(r.S, r.R, l.lambda), aux);
    const auto v10 = verify_hamiltonian(c, compose_hamiltonian(r.S, r.R, 10 * l.lambda), aux);
    ok = ok && v1.pass && v10.pass;
    d << c.name() << ": alpha=" << l.alpha << " beta=" << l.beta << " lambda=" << l.lambda
      << " gap=" << v1.gap << "/" << v10.gap << "; ";
  }
  return {ok, d.str()};
}

// 11. Calibrated parity quadratization.
Verdict parity() {
  bool ok = true;
  std::ostringstream d;
  for (int n = 3; n <= 4; ++n) {
    const auto form = parity_quadratization(n);
    const auto v = verify_hamiltonian(make_parity(n), form.hamiltonian, form.aux);
    const int bound = static_cast<int>(std::ceil(std::log2(n + 2.0)));
    ok = ok && v.pass && form.aux <= bound;
    d << "n=" << n << " aux=" << form.aux << "<=" << bound << " gap=" << v.gap << "; ";
  }
  return {ok, d.str()};
}

// 12. Conjecture scan (evidence only).
Verdict conjecture() {
  const auto rep = scan_nonredundant(4);
  std::ostringstream d;
  const auto and_key = canonical_form(TruthTable::from_word(2, 0x8), SymmetryGroup::FullGroup);
  const auto sd_key = canonical_form(TruthTable::from_word(3, 0x8e), SymmetryGroup::FullGroup);
  bool exact = true;
  for (const auto& lvl : rep.levels) {
    d << "d=" << lvl.dim << ":";
    for (const auto& o : lvl.nonredundant) d << " " << o.representative.table().to_hex();
    d << "; ";
    if (lvl.dim == 2) {
      exact = exact && lvl.nonredundant.size() == 1 &&
              lvl.nonredundant[0].representative.table() == and_key;
    } else if (lvl.dim == 3) {
      exact = exact && lvl.nonredundant.size() == 1 &&
              lvl.nonredundant[0].representative.table() == sd_key;
    } else if (lvl.dim == 4) {
      exact = exact && lvl.nonredundant.empty();
    }
  }
  return {exact && rep.supports_conjecture, d.str(), false};
}

}  // namespace

int main() {
  report(1, "threshold enumeration", threshold_enumeration);
  report(2, "Rosenberg soundness", rosenberg);
  report(3, "rho(f, none) = 0 iff threshold", threshold_equivalence);
  report(4, "symmetry invariance of rho", symmetry_invariance);
  report(5, "radius filtration on mul(3,3)", filtration);
  report(6, "constraint counting", constraint_counts);
  report(7, "LP differential test", lp_differential);
  report(8, "end-to-end mul(2,2)", mul22);
  report(9, "end-to-end mul(3,3)", mul33);
  report(10, "composition at lambda and 10 lambda", composition);
  report(11, "parity pipeline", parity);
  report(12, "conjecture scan", conjecture);
  std::cout << (failures == 0 ? "all gated criteria pass" : std::to_string(failures) + " gated criteria fail")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
