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


#include "revising/compose.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "revising/feasibility.hpp"
#include "revising/parallel.hpp"

namespace revising {

namespace {

using nlohmann::json;

QuadraticHamiltonian plus_minus(const QuadraticHamiltonian& H) {
  return H.convention() == Convention::PlusMinus ? H : convert_convention(H);
}

// Dense symmetric coupling matrix for fast local-field updates.
std::vector<double> dense_couplings(const QuadraticHamiltonian& H) {
  const int n = H.size();
  std::vector<double> J(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      J[i * n + j] = J[j * n + i] = H.coupling(i, j);
    }
  }
  return J;
}

// Energies of (z, eta) for every auxiliary word eta, walked in Gray order.
// Calls visit(eta, energy) once per eta.
class AuxScanner {
 public:
  AuxScanner(const QuadraticHamiltonian& H, int base)
      : H_(H), J_(dense_couplings(H)), base_(base), n_aux_(H.size() - base) {}

  template <class Visit>
  void scan(std::uint64_t z, Visit&& visit) const {
    const int n = H_.size();
    double energy = H_.energy(z);  // eta = 0
    std::vector<double> field(n_aux_);
    std::vector<int> spin(n);
    for (int i = 0; i < n; ++i) spin[i] = ((z >> i) & 1u) ? 1 : -1;
    for (int k = 0; k < n_aux_; ++k) {
      const int a = base_ + k;
      double f = H_.bias(a);
      for (int j = 0; j < n; ++j) {
        if (j != a) f += J_[a * n + j] * spin[j];
      }
      field[k] = f;
    }
    std::uint64_t eta = 0;
    visit(eta, energy);
    const std::uint64_t count = std::uint64_t{1} << n_aux_;
    for (std::uint64_t step = 1; step < count; ++step) {
      const int k = std::countr_zero(step);
      const int a = base_ + k;
      const int s_old = spin[a];
      energy -= 2.0 * s_old * field[k];
      spin[a] = -s_old;
      for (int l = 0; l < n_aux_; ++l) {
        if (l != k) field[l] -= 2.0 * s_old * J_[(base_ + l) * n + a];
      }
      eta ^= std::uint64_t{1} << k;
      visit(eta, energy);
    }
  }

 private:
  const QuadraticHamiltonian& H_;
  std::vector<double> J_;
  int base_;
  int n_aux_;
};

json hamiltonian_json(const QuadraticHamiltonian& H) {
  const auto P = plus_minus(H);
  return {{"spins", P.size()},
          {"convention", "PlusMinus"},
          {"h", std::vector<double>(P.biases().begin(), P.biases().end())},
          {"J", std::vector<double>(P.couplings().begin(), P.couplings().end())},
          {"constant", P.constant()}};
}

QuadraticHamiltonian hamiltonian_from_json(const json& j) {
  if (j.at("convention").get<std::string>() != "PlusMinus") {
    throw std::invalid_argument("solution Hamiltonians are stored as PlusMinus");
  }
  const int n = j.at("spins").get<int>();
  auto h = j.at("h").get<std::vector<double>>();
  auto J = j.at("J").get<std::vector<double>>();
  if (static_cast<int>(h.size()) != n ||
      static_cast<int>(J.size()) != n * (n - 1) / 2) {
    throw std::invalid_argument("Hamiltonian coefficient count mismatch");
  }
  std::vector<double> u = h;
  u.insert(u.end(), J.begin(), J.end());
  return QuadraticHamiltonian::from_coefficients(u, n, j.at("constant").get<double>());
}

}  // namespace

std::optional<ComponentCertificate> certify_component(const Circuit& c,
                                                      const AuxiliaryFunction& g,
                                                      int k, const LPOptions& opts) {
  if (k < 0 || k >= g.size()) throw std::out_of_range("component index out of range");
  const int base = g.base_dim();
  const auto& t = g[k];

  // Strong neutralizability does not see ignored variables, so certify the
  // restriction to the support and lift it back.
  const auto& support = t.support();
  std::vector<double> w;
  for (int i : support) w.push_back(t.weights()[i]);
  ThresholdFunction reduced(std::move(w), t.bias());
  if (auto strong = check_strong_neutralizable(reduced, opts)) {
    ComponentCertificate cert;
    cert.component = k;
    cert.kind = NeutralizabilityKind::Strong;
    cert.spins = support;
    cert.spins.push_back(base + k);
    cert.R = std::move(strong->R);
    return cert;
  }

  AuxiliaryFunction prefix(base);
  for (int i = 0; i < k; ++i) prefix.append(g[i]);
  if (auto weak = check_weak_neutralizable(t, c, prefix, opts)) {
    ComponentCertificate cert;
    cert.component = k;
    cert.kind = NeutralizabilityKind::Weak;
    cert.spins.resize(base + k + 1);
    for (int i = 0; i <= base + k; ++i) cert.spins[i] = i;
    cert.R = std::move(weak->R);
    return cert;
  }
  return std::nullopt;
}

QuadraticHamiltonian glue_certificates(const std::vector<ComponentCertificate>& certs,
                                       int n_spins) {
  QuadraticHamiltonian R(n_spins);
  std::vector<bool> claimed(n_spins, false);
  for (const auto& cert : certs) {
    const int local = cert.R.size();
    if (static_cast<int>(cert.spins.size()) != local || local == 0) {
      throw std::invalid_argument("certificate spin map does not match its Hamiltonian");
    }
    const int aux = cert.spins.back();
    if (aux >= n_spins) throw std::invalid_argument("certificate spin out of range");
    if (claimed[aux]) throw std::invalid_argument("two certificates claim one auxiliary spin");
    claimed[aux] = true;
    const auto P = plus_minus(cert.R);
    for (int i = 0; i < local; ++i) {
      R.bias(cert.spins[i]) += P.bias(i);
      for (int j = i + 1; j < local; ++j) {
        R.add_coupling(cert.spins[i], cert.spins[j], P.coupling(i, j));
      }
    }
    R.constant() += P.constant();
  }
  return R;
}

LambdaChoice choose_lambda(const QuadraticHamiltonian& S_in,
                           const QuadraticHamiltonian& R_in, const Circuit& c,
                           const AuxiliaryFunction& g, int threads) {
  const int N = c.inputs(), M = c.outputs(), A = g.size();
  const int n = N + M + A;
  if (n > 26) throw std::invalid_argument("choose_lambda limited to 2^26 states");
  if (S_in.size() != n || R_in.size() != n) {
    throw std::invalid_argument("Hamiltonian size does not match N + M + A");
  }
  const auto S = plus_minus(S_in);
  const auto R = plus_minus(R_in);
  const AuxScanner scan_s(S, N + M), scan_r(R, N + M);
  const std::uint64_t inputs = std::uint64_t{1} << N;
  const std::uint64_t outputs = std::uint64_t{1} << M;

  std::vector<double> alpha(inputs, std::numeric_limits<double>::infinity());
  std::vector<double> beta(inputs, -std::numeric_limits<double>::infinity());
  parallel_for(0, static_cast<std::int64_t>(inputs), resolve_threads(threads),
               [&](std::int64_t si) {
    const auto sigma = static_cast<std::uint64_t>(si);
    const std::uint64_t right = sigma | (c(sigma) << N);
    const std::uint64_t star = right | (g(right) << (N + M));
    const double s_star = S.energy(star);
    const double r_star = R.energy(star);
    std::vector<double> s_vals(std::uint64_t{1} << A);
    double a_min = std::numeric_limits<double>::infinity();
    double b_max = -std::numeric_limits<double>::infinity();
    for (std::uint64_t omega = 0; omega < outputs; ++omega) {
      const std::uint64_t z = sigma | (omega << N);
      const std::uint64_t on_graph = g(z);
      scan_s.scan(z, [&](std::uint64_t eta, double e) { s_vals[eta] = e; });
      scan_r.scan(z, [&](std::uint64_t eta, double e) {
        if (eta == on_graph) return;
        a_min = std::min(a_min, e - r_star);
        b_max = std::max(b_max, s_star - s_vals[eta]);
      });
    }
    alpha[sigma] = a_min;
    beta[sigma] = b_max;
  });

  LambdaChoice out;
  out.alpha = *std::min_element(alpha.begin(), alpha.end());
  out.beta = *std::max_element(beta.begin(), beta.end());
  if (A == 0) {
    // No auxiliary states to neutralize.
    out.alpha = 1.0;
    out.beta = 0.0;
    out.lambda = 0.0;
    return out;
  }
  if (!(out.alpha > 1e-9)) {
    throw std::runtime_error("auxiliary certificate has non-positive gap alpha");
  }
  out.lambda = std::max(out.beta, 0.0) / out.alpha + 1.0;
  return out;
}

QuadraticHamiltonian compose_hamiltonian(const QuadraticHamiltonian& S,
                                         const QuadraticHamiltonian& R,
                                         double lambda) {
  if (S.size() != R.size()) throw std::invalid_argument("spin counts differ");
  auto H = plus_minus(S);
  auto scaled = plus_minus(R);
  scaled *= lambda;
  H += scaled;
  return H;
}

Circuit SolutionRecord::circuit() const {
  return Circuit(n_in, n_out, table, circuit_name);
}

ComposeResult compose_solution(const Circuit& c, const AuxiliaryFunction& g,
                               std::uint64_t seed, const LPOptions& opts,
                               int threads) {
  ComposeResult out;
  const int N = c.inputs(), M = c.outputs(), A = g.size();
  const int n = N + M + A;
  if (n > 26) {
    out.failure = "state space too large for exhaustive verification";
    return out;
  }
  auto fr = is_feasible(c, g, opts);
  if (!fr.feasible) {
    out.failure = "auxiliary function is not feasible (rho = " +
                  std::to_string(fr.rho) + ")";
    return out;
  }
  SolutionRecord rec;
  rec.S = hamiltonian_from_columns(fr.labels, fr.u, n);
  std::vector<ComponentCertificate> certs;
  for (int k = 0; k < A; ++k) {
    auto cert = certify_component(c, g, k, opts);
    if (!cert) {
      out.failure = "component " + std::to_string(k) + " is not neutralizable";
      return out;
    }
    certs.push_back(std::move(*cert));
  }
  rec.R = glue_certificates(certs, n);
  rec.lambda = choose_lambda(rec.S, rec.R, c, g, threads);
  rec.H = compose_hamiltonian(rec.S, rec.R, rec.lambda.lambda);
  out.verification = verify_hamiltonian(c, rec.H, A, threads);
  if (!out.verification.pass) {
    out.failure = "composed Hamiltonian failed verification";
    return out;
  }
  rec.circuit_name = c.name();
  rec.n_in = N;
  rec.n_out = M;
  rec.table = c.table();
  rec.g = g;
  rec.verified = true;
  rec.gap = out.verification.gap;
  rec.seed = seed;
  rec.version = REVISING_VERSION;
  out.record = std::move(rec);
  return out;
}

void write_solution(std::ostream& out, const SolutionRecord& rec) {
  json comps = json::array();
  for (const auto& t : rec.g.components()) {
    comps.push_back({{"w", t.weights()}, {"b", t.bias()}});
  }
  json j = {
      {"version", rec.version},
      {"circuit",
       {{"name", rec.circuit_name},
        {"inputs", rec.n_in},
        {"outputs", rec.n_out},
        {"table", rec.table}}},
      {"aux", {{"count", rec.g.size()}, {"components", comps}}},
      {"S", hamiltonian_json(rec.S)},
      {"R", hamiltonian_json(rec.R)},
      {"lambda",
       {{"alpha", rec.lambda.alpha},
        {"beta", rec.lambda.beta},
        {"lambda", rec.lambda.lambda}}},
      {"H", hamiltonian_json(rec.H)},
      {"verified", rec.verified},
      {"gap", rec.gap},
      {"seed", rec.seed},
  };
  out << j.dump(1) << '\n';
}

SolutionRecord read_solution(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed solution file: ") + e.what());
  }
  SolutionRecord rec;
  try {
    const auto& cj = j.at("circuit");
    rec.circuit_name = cj.at("name").get<std::string>();
    rec.n_in = cj.at("inputs").get<int>();
    rec.n_out = cj.at("outputs").get<int>();
    rec.table = cj.at("table").get<std::vector<std::uint64_t>>();
    if (rec.table.size() != (std::uint64_t{1} << rec.n_in)) {
      throw std::invalid_argument("circuit table has the wrong length");
    }
    rec.g = AuxiliaryFunction(rec.n_in + rec.n_out);
    for (const auto& comp : j.at("aux").at("components")) {
      rec.g.append(ThresholdFunction(comp.at("w").get<std::vector<double>>(),
                                     comp.at("b").get<double>()));
    }
    rec.S = hamiltonian_from_json(j.at("S"));
    rec.R = hamiltonian_from_json(j.at("R"));
    rec.H = hamiltonian_from_json(j.at("H"));
    rec.lambda.alpha = j.at("lambda").at("alpha").get<double>();
    rec.lambda.beta = j.at("lambda").at("beta").get<double>();
    rec.lambda.lambda = j.at("lambda").at("lambda").get<double>();
    rec.verified = j.at("verified").get<bool>();
    rec.gap = j.at("gap").get<double>();
    rec.seed = j.at("seed").get<std::uint64_t>();
    rec.version = j.at("version").get<std::string>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed solution file: ") + e.what());
  }
  return rec;
}

void save_solution(const std::string& path, const SolutionRecord& rec) {
  if (!rec.verified) throw std::logic_error("refusing to write an unverified solution");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_solution(out, rec);
}

SolutionRecord load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return read_solution(in);
}

}  // namespace revising
