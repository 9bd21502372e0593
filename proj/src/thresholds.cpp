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


#include "revising/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "revising/constraints.hpp"
#include "revising/feasibility.hpp"

namespace revising {

namespace {

constexpr double kZeroTol = 1e-6;

// Artificial LP with an arbitrary right-hand side; small instances fall
// back to the simplex reference when the interior point method stalls.
LPResult solve_general(const ConstraintMatrix& B, std::span<const double> rhs,
                       const LPOptions& opts) {
  auto res = solve_artificial({&B, rhs}, opts);
  if (res.status == LPStatus::Optimal) return res;
  if (B.rows() <= 20000 && B.cols() <= 300) return reference_solve({&B, rhs});
  throw std::runtime_error("LP failed: " + to_string(res.status));
}

// Virtual spin of a packed PlusMinus state on n spins.
void fill_virtual(std::uint64_t bits, int n, int* out) {
  int k = 0;
  for (int i = 0; i < n; ++i) out[k++] = ((bits >> i) & 1u) ? 1 : -1;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) out[k++] = out[i] * out[j];
  }
}

TruthTable join_cofactors(const TruthTable& lo, const TruthTable& hi) {
  const int d = lo.dim() + 1;
  TruthTable t(d);
  const std::uint64_t half = lo.size();
  for (std::uint64_t x = 0; x < half; ++x) {
    t.set(x, lo.get(x));
    t.set(x + half, hi.get(x));
  }
  return t;
}

// a <= b pointwise.
bool below(const TruthTable& a, const TruthTable& b) {
  for (std::size_t k = 0; k < a.words().size(); ++k) {
    if (a.words()[k] & ~b.words()[k]) return false;
  }
  return true;
}

bool depends_on_all(const TruthTable& t) {
  for (int i = 0; i < t.dim(); ++i) {
    if (!t.depends_on(i)) return false;
  }
  return true;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::optional<ThresholdFunction> is_threshold(const TruthTable& table,
                                              const LPOptions& opts) {
  const int d = table.dim();
  if (d > 12) throw std::invalid_argument("is_threshold limited to d <= 12");
  const std::uint64_t rows = table.size();
  const int cols = d + 1;
  std::vector<int> dense(rows * cols);
  for (std::uint64_t x = 0; x < rows; ++x) {
    const int s = table.get(x) ? 1 : -1;
    int* row = dense.data() + x * cols;
    for (int i = 0; i < d; ++i) row[i] = s * (((x >> i) & 1u) ? 1 : -1);
    row[d] = s;
  }
  auto B = ConstraintMatrix::from_dense(rows, cols, dense);
  std::vector<double> rhs(rows, 1.0);

  auto certificate = [&](const LPResult& res) -> std::optional<ThresholdFunction> {
    if (res.objective > kZeroTol) return std::nullopt;
    // s (sum_i w'_i (2 x_i - 1) + c) >= 1  ->  w = 2 w', b = sum w' - c.
    std::vector<double> w(d);
    double sum = 0.0;
    for (int i = 0; i < d; ++i) {
      w[i] = 2.0 * res.u[i];
      sum += res.u[i];
    }
    try {
      auto t = ThresholdFunction::from_table(table, std::move(w), sum - res.u[d]);
      t.normalize_margin();
      return t;
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  };

  auto res = solve_general(B, rhs, opts);
  if (auto t = certificate(res)) return t;
  if (res.objective > 1e-3) return std::nullopt;
  // Borderline objective: settle it with the exact vertex solver.
  return certificate(reference_solve({&B, rhs}));
}

std::optional<double> validate_strong(const ThresholdFunction& t,
                                      const QuadraticHamiltonian& R,
                                      double tol) {
  const int d = t.dim();
  if (R.size() != d + 1) return std::nullopt;
  const double scale = 1.0 + R.max_abs_coefficient() + std::abs(R.constant());
  double off_min = std::numeric_limits<double>::infinity();
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << d); ++x) {
    const std::uint64_t a = t(x) ? 1u : 0u;
    const double on = R.energy(x | (a << d));
    if (std::abs(on) > tol * scale) return std::nullopt;
    off_min = std::min(off_min, R.energy(x | ((a ^ 1u) << d)));
  }
  if (off_min < 1.0 - tol) return std::nullopt;
  return off_min;
}

std::optional<NeutralizabilityCertificate> check_strong_neutralizable(
    const ThresholdFunction& t, const LPOptions& opts) {
  const int d = t.dim();
  const int n = d + 1;
  if (n > 16) throw std::invalid_argument("strong check limited to d <= 15");
  const int V = virtual_size(n);
  const int cols = V + 1;
  const std::uint64_t points = std::uint64_t{1} << d;
  std::vector<int> dense(3 * points * cols);
  std::vector<double> rhs(3 * points);
  for (std::uint64_t x = 0; x < points; ++x) {
    const std::uint64_t a = t(x) ? 1u : 0u;
    int* on = dense.data() + (3 * x) * cols;
    int* neg = on + cols;
    int* off = neg + cols;
    fill_virtual(x | (a << d), n, on);
    on[V] = 1;
    for (int k = 0; k < cols; ++k) neg[k] = -on[k];
    fill_virtual(x | ((a ^ 1u) << d), n, off);
    off[V] = 1;
    rhs[3 * x + 2] = 1.0;
  }
  auto B = ConstraintMatrix::from_dense(3 * points, cols, dense);

  auto extract = [&](const LPResult& res)
      -> std::optional<NeutralizabilityCertificate> {
    if (res.objective > kZeroTol) return std::nullopt;
    auto R = QuadraticHamiltonian::from_coefficients(
        std::span<const double>(res.u.data(), V), n, res.u[V]);
    auto off_min = validate_strong(t, R);
    if (!off_min) return std::nullopt;
    R *= 1.0 / *off_min;
    NeutralizabilityCertificate cert;
    cert.R = std::move(R);
    cert.kind = NeutralizabilityKind::Strong;
    cert.gap = 1.0;
    return cert;
  };

  auto res = solve_general(B, rhs, opts);
  if (auto c = extract(res)) return c;
  if (res.objective > 1e-3 || B.cols() > 300) return std::nullopt;
  return extract(reference_solve({&B, rhs}));
}

std::optional<NeutralizabilityCertificate> check_weak_neutralizable(
    const ThresholdFunction& t, const Circuit& c,
    const AuxiliaryFunction& prefix, const LPOptions& opts) {
  const int N = c.inputs();
  const int M = c.outputs();
  const int base = N + M;
  const int p = prefix.size();
  if (prefix.base_dim() != base) {
    throw std::invalid_argument("prefix base does not match the circuit");
  }
  if (t.dim() > base + p) {
    throw std::invalid_argument("component reads beyond its predecessors");
  }
  if (base + p + 1 > 26) throw std::invalid_argument("weak check too large");
  const std::uint64_t inputs = std::uint64_t{1} << N;
  const std::uint64_t outputs = std::uint64_t{1} << M;

  // Full state of base point z with the component value a.
  auto state = [&](std::uint64_t z, std::uint64_t a) {
    return z | (prefix(z) << base) | (a << (base + p));
  };
  auto value = [&](std::uint64_t z) -> std::uint64_t {
    const std::uint64_t low = z | (prefix(z) << base);
    return t(low & low_mask(t.dim())) ? 1u : 0u;
  };

  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  std::vector<RowOrigin> origins;
  std::vector<double> rhs;
  for (std::uint64_t sigma = 0; sigma < inputs; ++sigma) {
    for (std::uint64_t omega = 0; omega < outputs; ++omega) {
      const std::uint64_t z = sigma | (omega << N);
      const std::uint64_t a = value(z);
      pairs.emplace_back(state(z, a ^ 1u), state(z, a));
      origins.push_back({sigma, omega, a ^ 1u});
      rhs.push_back(1.0);
    }
  }
  for (std::uint64_t sigma = 0; sigma < inputs; ++sigma) {
    const std::uint64_t right = sigma | (c(sigma) << N);
    for (std::uint64_t omega = 0; omega < outputs; ++omega) {
      if (omega == c(sigma)) continue;
      const std::uint64_t z = sigma | (omega << N);
      pairs.emplace_back(state(z, value(z)), state(right, value(right)));
      origins.push_back({sigma, omega, value(z)});
      rhs.push_back(0.0);
    }
  }
  auto B = ConstraintMatrix::from_pairs(N, M, p + 1, pairs, std::move(origins));
  auto res = solve_general(B, rhs, opts);
  if (res.objective > kZeroTol) return std::nullopt;

  // Validate by direct evaluation and rescale the neutralizing gap to 1.
  auto R = hamiltonian_from_columns(B.labels(), res.u, base + p + 1);
  const double slack = kZeroTol * (1.0 + R.max_abs_coefficient());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const double diff = R.energy(pairs[r].first) - R.energy(pairs[r].second);
    if (diff < rhs[r] - slack) return std::nullopt;
    if (rhs[r] > 0.0) gap = std::min(gap, diff);
  }
  if (!(gap > 0.0)) return std::nullopt;
  R *= 1.0 / gap;
  NeutralizabilityCertificate cert;
  cert.R = std::move(R);
  cert.kind = NeutralizabilityKind::Weak;
  cert.circuit_id = c.id();
  cert.gap = 1.0;
  return cert;
}

ThresholdFunction self_dualize(const ThresholdFunction& t) {
  std::vector<double> w = t.weights();
  double sum = 0.0;
  for (double x : w) sum += x;
  w.push_back(sum - 2.0 * t.bias());
  return ThresholdFunction(std::move(w), sum - t.bias());
}

ThresholdFunction extrude(const ThresholdFunction& t) { return t.extruded(); }

std::string to_string(LibraryMode m) {
  return m == LibraryMode::Exhaustive ? "Exhaustive" : "Sampled";
}

std::string to_string(LibraryGroup g) {
  switch (g) {
    case LibraryGroup::None: return "None";
    case LibraryGroup::OutputNegation: return "OutputNegation";
    case LibraryGroup::SpinActionsOnly: return "SpinActionsOnly";
    case LibraryGroup::FullGroup: return "FullGroup";
  }
  return "None";
}

LibraryGroup parse_library_group(const std::string& s) {
  if (s == "None") return LibraryGroup::None;
  if (s == "OutputNegation") return LibraryGroup::OutputNegation;
  if (s == "SpinActionsOnly") return LibraryGroup::SpinActionsOnly;
  if (s == "FullGroup") return LibraryGroup::FullGroup;
  throw std::invalid_argument("unknown library group: " + s);
}

namespace {

LibraryMode parse_mode(const std::string& s) {
  if (s == "Exhaustive") return LibraryMode::Exhaustive;
  if (s == "Sampled") return LibraryMode::Sampled;
  throw std::invalid_argument("unknown library mode: " + s);
}

}  // namespace

TruthTable library_key(const TruthTable& t, LibraryGroup group) {
  switch (group) {
    case LibraryGroup::None: return t;
    case LibraryGroup::OutputNegation: {
      auto n = t.negated();
      return n < t ? n : t;
    }
    case LibraryGroup::SpinActionsOnly:
      return canonical_form(t, SymmetryGroup::SpinActionsOnly);
    case LibraryGroup::FullGroup:
      return canonical_form(t, SymmetryGroup::FullGroup);
  }
  return t;
}

ThresholdLibrary enumerate_thresholds(int d, bool allow_long,
                                      const LPOptions& opts) {
  if (d < 0 || d > (allow_long ? 5 : 4)) {
    throw std::invalid_argument("enumeration limited to d <= 4 (5 when long runs are allowed)");
  }
  std::vector<TruthTable> level = {TruthTable::constant(0, false),
                                   TruthTable::constant(0, true)};
  std::vector<ThresholdFunction> fns = {ThresholdFunction::constant(0, false),
                                        ThresholdFunction::constant(0, true)};
  for (int k = 1; k <= d; ++k) {
    std::vector<ThresholdFunction> next;
    // Both cofactors of a threshold function are threshold and comparable.
    for (const auto& lo : level) {
      for (const auto& hi : level) {
        if (!below(lo, hi) && !below(hi, lo)) continue;
        auto t = is_threshold(join_cofactors(lo, hi), opts);
        if (t) next.push_back(std::move(*t));
      }
    }
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) {
      return a.table() < b.table();
    });
    level.clear();
    for (const auto& t : next) level.push_back(t.table());
    fns = std::move(next);
  }
  ThresholdLibrary lib;
  lib.dim = d;
  lib.mode = LibraryMode::Exhaustive;
  lib.group = LibraryGroup::None;
  for (auto& f : fns) lib.entries.push_back({std::move(f), false});
  return lib;
}

ThresholdLibrary sample_thresholds(int d, std::uint64_t n_samples,
                                   std::uint64_t seed, LibraryGroup group) {
  if (d < 1 || d > 12) throw std::invalid_argument("sampling limited to 1 <= d <= 12");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::uint64_t points = std::uint64_t{1} << d;
  std::map<TruthTable, ThresholdFunction> found;
  std::unordered_set<TruthTable, TruthTableHash> seen_tables;
  std::vector<double> w(d);
  for (std::uint64_t s = 0; s < n_samples; ++s) {
    double b = 0.0;
    TruthTable table(d);
    for (;;) {
      double l1 = 0.0;
      for (auto& x : w) {
        x = normal(rng);
        l1 += std::abs(x);
      }
      b = std::uniform_real_distribution<double>(-l1, l1)(rng);
      bool degenerate = false;
      for (std::uint64_t x = 0; x < points && !degenerate; ++x) {
        double dot = -b;
        for (int i = 0; i < d; ++i) {
          if ((x >> i) & 1u) dot += w[i];
        }
        degenerate = std::abs(dot) < 1e-9;
        table.set(x, dot > 0.0);
      }
      if (!degenerate) break;
    }
    if (!seen_tables.insert(table).second) continue;
    auto key = library_key(table, group);
    if (found.count(key)) continue;
    ThresholdFunction t(w, b);
    t.normalize_margin();
    found.emplace(std::move(key), std::move(t));
  }
  ThresholdLibrary lib;
  lib.dim = d;
  lib.mode = LibraryMode::Sampled;
  lib.group = group;
  for (auto& [key, t] : found) {
    if (!is_threshold(t.table())) {
      throw std::logic_error("sampled function failed threshold validation");
    }
    lib.entries.push_back({std::move(t), false});
  }
  return lib;
}

void certify_strong(ThresholdLibrary& lib, const LPOptions& opts) {
  for (auto& e : lib.entries) {
    e.strong = check_strong_neutralizable(e.fn, opts).has_value();
  }
}

void write_library(std::ostream& out, const ThresholdLibrary& lib) {
  out << "dim=" << lib.dim << " count=" << lib.entries.size()
      << " mode=" << to_string(lib.mode) << " group=" << to_string(lib.group)
      << '\n';
  for (const auto& e : lib.entries) {
    out << "tt=" << e.fn.table().to_hex() << " w=";
    for (int i = 0; i < e.fn.dim(); ++i) {
      if (i) out << ',';
      out << format_double(e.fn.weights()[i]);
    }
    out << " b=" << format_double(e.fn.bias()) << " strong=" << (e.strong ? 1 : 0)
        << '\n';
  }
}

ThresholdLibrary read_library(std::istream& in) {
  auto fields = [](const std::string& line) {
    std::map<std::string, std::string> kv;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("malformed library token: " + tok);
      }
      kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return kv;
  };
  auto need = [](const std::map<std::string, std::string>& kv, const char* k) {
    auto it = kv.find(k);
    if (it == kv.end()) throw std::invalid_argument(std::string("library missing ") + k);
    return it->second;
  };

  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty library");
  auto head = fields(line);
  ThresholdLibrary lib;
  lib.dim = std::stoi(need(head, "dim"));
  const auto count = std::stoull(need(head, "count"));
  lib.mode = parse_mode(need(head, "mode"));
  lib.group = parse_library_group(need(head, "group"));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto kv = fields(line);
    std::vector<double> w;
    std::istringstream ws(need(kv, "w"));
    std::string tok;
    while (std::getline(ws, tok, ',')) w.push_back(std::stod(tok));
    if (static_cast<int>(w.size()) != lib.dim) {
      throw std::invalid_argument("library weight count does not match dim");
    }
    auto table = TruthTable::from_hex(lib.dim, need(kv, "tt"));
    auto fn = ThresholdFunction::from_table(table, std::move(w),
                                            std::stod(need(kv, "b")));
    lib.entries.push_back({std::move(fn), need(kv, "strong") == "1"});
  }
  if (lib.entries.size() != count) {
    throw std::invalid_argument("library count does not match its entries");
  }
  return lib;
}

void save_library(const std::string& path, const ThresholdLibrary& lib) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_library(out, lib);
}

ThresholdLibrary load_library(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return read_library(in);
}

ScanReport scan_nonredundant(int dmax, const LPOptions& opts) {
  if (dmax < 1 || dmax > 5) throw std::invalid_argument("scan limited to 1 <= d <= 5");
  ScanReport report;
  report.supports_conjecture = true;
  const auto and2 = ThresholdFunction::and_pair(2, 0, 1);
  const auto and_sd = self_dualize(and2);

  for (int d = 1; d <= dmax; ++d) {
    auto lib = enumerate_thresholds(d, true, opts);
    ScanLevel level;
    level.dim = d;
    level.threshold_count = lib.size();
    // Strong neutralizability is constant on FullGroup orbits, so one LP
    // per orbit suffices.
    std::unordered_set<TruthTable, TruthTableHash> seen;
    for (const auto& e : lib.entries) {
      if (seen.count(e.fn.table())) continue;
      auto members = orbit(e.fn.table(), SymmetryGroup::FullGroup);
      seen.insert(members.begin(), members.end());
      if (!check_strong_neutralizable(e.fn, opts)) continue;
      level.strong_count += members.size();
      if (!depends_on_all(members.front())) continue;
      auto rep = is_threshold(members.front(), opts);
      if (!rep) throw std::logic_error("orbit representative is not threshold");
      level.nonredundant.push_back({std::move(*rep), members.size()});
    }
    std::sort(level.nonredundant.begin(), level.nonredundant.end(),
              [](const auto& a, const auto& b) {
                return a.representative.table() < b.representative.table();
              });

    if (d >= 2) {
      std::optional<TruthTable> expected;
      if (d == 2) expected = canonical_form(and2.table(), SymmetryGroup::FullGroup);
      if (d == 3) expected = canonical_form(and_sd.table(), SymmetryGroup::FullGroup);
      const bool ok = expected
                          ? level.nonredundant.size() == 1 &&
                                level.nonredundant[0].representative.table() == *expected
                          : level.nonredundant.empty();
      report.supports_conjecture = report.supports_conjecture && ok;
    }
    report.levels.push_back(std::move(level));
  }
  return report;
}

}  // namespace revising
