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


// Command-line front end: threshold libraries, solving, verification,
// composition and the rho experiments.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "revising/compose.hpp"
#include "revising/feasibility.hpp"
#include "revising/oracle.hpp"
#include "revising/parallel.hpp"
#include "revising/search.hpp"
#include "revising/spin.hpp"
#include "revising/stats.hpp"
#include "revising/thresholds.hpp"

namespace {

using namespace revising;
using nlohmann::json;

struct Globals {
  int threads = 0;
  double lp_tol = 1e-9;
  int lp_max_iter = 200;
  bool verbose = false;
};

LPOptions lp_options(const Globals& g, int threads = 1) {
  LPOptions o;
  o.tol = g.lp_tol;
  o.max_iter = g.lp_max_iter;
  o.threads = threads;
  return o;
}

// "full" or an integer in [1, M].
int parse_radius(const std::string& s, int m) {
  if (s == "full") return m;
  std::size_t pos = 0;
  const int r = std::stoi(s, &pos);
  if (pos != s.size() || r < 1 || r > m) {
    throw std::invalid_argument("radius must be 1.." + std::to_string(m) + " or 'full': " + s);
  }
  return r;
}

std::vector<int> parse_schedule(const std::string& s, int m) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_radius(item, m));
  if (out.empty()) throw std::invalid_argument("empty radius schedule");
  return out;
}

// Accepts "1000000" as well as "1e6".
std::uint64_t parse_count(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size() || !(v >= 1) || v != std::floor(v) || v > 1e15) {
    throw std::invalid_argument("expected a positive integer count: " + s);
  }
  return static_cast<std::uint64_t>(v);
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  fn(f);
  if (!f) throw std::runtime_error("write failed: " + path);
}

SearchOutcome load_outcome(const std::string& path, int base) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  return read_outcome(f, base);
}

json resolved_options(const CLI::App* app) {
  json j = json::object();
  for (const CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name == "--help" || name == "-h") continue;
    const auto key = opt->get_lnames().empty() ? name : opt->get_lnames().front();
    if (opt->count() > 0) {
      const auto& r = opt->results();
      if (r.size() == 1) {
        j[key] = r.front();
      } else if (r.empty()) {
        j[key] = true;
      } else {
        j[key] = r;
      }
    } else {
      j[key] = opt->get_default_str();
    }
  }
  for (const CLI::App* sub : app->get_subcommands()) {
    if (sub->parsed()) j[sub->get_name()] = resolved_options(sub);
  }
  return j;
}

void print_trace_entry(const TraceEntry& e) {
  std::cerr << "  " << e.event << " aux=" << e.size << " radius=" << e.radius
            << " rho=" << e.rho << '\n';
}

// Subcommand bodies return the process exit status.

struct ThresholdsArgs {
  int dim = 3;
  bool exhaustive = false;
  std::string sample;
  std::uint64_t seed = 0;
  std::string group;
  std::string certify;
  bool allow_long = false;
  std::string out;
};

int run_thresholds(const ThresholdsArgs& a, const Globals& g) {
  ThresholdLibrary lib;
  const auto lp = lp_options(g);
  if (a.exhaustive) {
    lib = enumerate_thresholds(a.dim, a.allow_long, lp);
  } else {
    const auto group = a.group.empty() ? LibraryGroup::SpinActionsOnly : parse_library_group(a.group);
    lib = sample_thresholds(a.dim, parse_count(a.sample), a.seed, group);
  }
  if (a.certify == "strong") certify_strong(lib, lp);
  with_output(a.out, [&](std::ostream& o) { write_library(o, lib); });
  std::size_t strong = 0;
  for (const auto& e : lib.entries) strong += e.strong ? 1 : 0;
  std::cerr << "dim=" << lib.dim << " entries=" << lib.size() << " mode=" << to_string(lib.mode)
            << " group=" << to_string(lib.group);
  if (a.certify == "strong") std::cerr << " strong=" << strong;
  std::cerr << '\n';
  return 0;
}

struct SolveArgs {
  std::string circuit;
  std::string algorithm = "descent";
  std::vector<std::string> libs;
  std::string schedule = "full";
  std::uint64_t seed = 0;
  int budget_aux = 16;
  double budget_secs = 0.0;
  std::size_t cache_size = std::size_t{1} << 20;
  std::string restart;
  std::string outcome;
  std::string out;
};

int run_solve(const SolveArgs& a, const Globals& g) {
  const Circuit c = build_circuit(a.circuit);
  const int base = c.inputs() + c.outputs();
  const int threads = resolve_threads(g.threads);

  std::vector<ThresholdLibrary> libs;
  for (const auto& path : a.libs) libs.push_back(load_library(path));
  if (libs.empty()) libs.push_back(lifted_library(base));

  RhoCache cache(a.cache_size);
  SearchOptions opts;
  opts.rho.lp = lp_options(g);
  opts.rho.cache = &cache;
  opts.threads = threads;
  opts.radius_schedule = parse_schedule(a.schedule, c.outputs());
  opts.max_aux = a.budget_aux;
  opts.max_seconds = a.budget_secs;
  opts.seed = a.seed;
  if (g.verbose) opts.on_step = print_trace_entry;
  if (!a.restart.empty()) {
    opts.initial = load_outcome(a.restart, base).g;
    opts.has_initial = true;
  }

  SearchOutcome res;
  if (a.algorithm == "greedy") {
    res = greedy(c, libs, opts);
  } else {
    ThresholdLibrary merged = libs.front();
    for (std::size_t i = 1; i < libs.size(); ++i) {
      merged.dim = std::max(merged.dim, libs[i].dim);
      merged.entries.insert(merged.entries.end(), libs[i].entries.begin(), libs[i].entries.end());
    }
    res = descent(c, merged, opts);
  }
  if (!a.outcome.empty()) with_output(a.outcome, [&](std::ostream& o) { write_outcome(o, res); });
  std::cerr << "status=" << to_string(res.status) << " aux=" << res.g.size()
            << " lp_solves=" << res.lp_solves << " search_time=" << res.wall_time << "s\n";
  if (res.status != SearchStatus::Solved) return 1;

  const auto comp = compose_solution(c, res.g, a.seed, lp_options(g), threads);
  if (!comp.record) {
    std::cerr << "composition failed: " << comp.failure << '\n';
    return 1;
  }
  std::cerr << "verified gap=" << comp.record->gap << " lambda=" << comp.record->lambda.lambda
            << '\n';
  if (a.out.empty() || a.out == "-") {
    write_solution(std::cout, *comp.record);
  } else {
    save_solution(a.out, *comp.record);
  }
  return 0;
}

int run_verify(const std::string& path, const Globals& g) {
  const auto rec = load_solution(path);
  const Circuit c = rec.circuit();
  const int n_aux = rec.H.size() - c.inputs() - c.outputs();
  const auto v = verify_hamiltonian(c, rec.H, n_aux, resolve_threads(g.threads));
  std::cout.precision(9);
  if (v.pass) {
    std::cout << "PASS gap=" << v.gap << '\n';
    return 0;
  }
  std::cout << "FAIL gap=" << v.gap << " witness_sigma=" << v.witness_sigma
            << " witness_state=" << v.witness_state << '\n';
  return 1;
}

int run_compose(const std::string& circuit, const std::string& outcome, std::uint64_t seed,
                const std::string& out, const Globals& g) {
  const Circuit c = build_circuit(circuit);
  const auto res = load_outcome(outcome, c.inputs() + c.outputs());
  const auto comp = compose_solution(c, res.g, seed, lp_options(g), resolve_threads(g.threads));
  if (!comp.record) {
    std::cerr << "composition failed: " << comp.failure << '\n';
    return 1;
  }
  std::cerr << "verified gap=" << comp.record->gap << " lambda=" << comp.record->lambda.lambda
            << '\n';
  if (out.empty() || out == "-") {
    write_solution(std::cout, *comp.record);
  } else {
    save_solution(out, *comp.record);
  }
  return 0;
}

int run_rho(const std::string& circuit, const std::string& outcome, const std::string& radius,
            std::size_t cache_size, const Globals& g) {
  const Circuit c = build_circuit(circuit);
  const auto res = load_outcome(outcome, c.inputs() + c.outputs());
  RhoCache cache(cache_size);
  RhoOptions o;
  o.lp = lp_options(g, resolve_threads(g.threads));
  o.cache = &cache;
  std::cout.precision(9);
  std::cout << rho(c, res.g, parse_radius(radius, c.outputs()), o) << '\n';
  return 0;
}

int run_scan(int dmax, const Globals& g) {
  const auto rep = scan_nonredundant(dmax, lp_options(g));
  for (const auto& lvl : rep.levels) {
    std::cout << "d=" << lvl.dim << " threshold=" << lvl.threshold_count
              << " strong=" << lvl.strong_count << " nonredundant_orbits=" << lvl.nonredundant.size()
              << '\n';
    for (const auto& orb : lvl.nonredundant) {
      std::cout << "  tt=" << orb.representative.table().to_hex() << " orbit_size=" << orb.orbit_size
                << '\n';
    }
  }
  std::cout << "supports_conjecture=" << (rep.supports_conjecture ? "true" : "false") << '\n';
  return rep.supports_conjecture ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app{"Reverse Ising problem toolkit"};
  app.set_version_flag("--version", std::string(REVISING_VERSION));
  app.require_subcommand(1);

  Globals g;
  app.add_option("--threads", g.threads, "Worker threads (0: RI_THREADS or hardware)")
      ->capture_default_str();
  app.add_option("--lp-tol", g.lp_tol, "LP relative duality-gap tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--lp-max-iter", g.lp_max_iter, "LP iteration cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("-v,--verbose", g.verbose, "Progress on stderr");

  std::uint64_t seed_for_log = 0;

  ThresholdsArgs ta;
  auto* thr = app.add_subcommand("thresholds", "Build a threshold-function library");
  thr->add_option("--dim", ta.dim, "Input dimension")->required()->check(CLI::Range(1, 12));
  auto* exh = thr->add_flag("--exhaustive", ta.exhaustive, "Enumerate all functions");
  auto* smp = thr->add_option("--sample", ta.sample, "Number of random weight draws");
  exh->excludes(smp);
  thr->add_option("--seed", ta.seed, "Sampling seed")->capture_default_str();
  thr->add_option("--group", ta.group, "Deduplication: None, OutputNegation, SpinActionsOnly, FullGroup");
  thr->add_option("--certify", ta.certify, "Certification")->check(CLI::IsMember({"strong"}));
  thr->add_flag("--allow-long", ta.allow_long, "Permit exhaustive d = 5");
  thr->add_option("--out", ta.out, "Output file (default stdout)");

  SolveArgs sa;
  auto* sol = app.add_subcommand("solve", "Search auxiliary functions and compose a Hamiltonian");
  sol->add_option("--circuit", sa.circuit, "mul:NxM, and, xor, parity:N, file:PATH")->required();
  sol->add_option("--algorithm", sa.algorithm)
      ->check(CLI::IsMember({"greedy", "descent"}))
      ->capture_default_str();
  sol->add_option("--lib", sa.libs, "Threshold library files")->check(CLI::ExistingFile);
  sol->add_option("--radius-schedule", sa.schedule, "e.g. 1,2,full")->capture_default_str();
  sol->add_option("--seed", sa.seed)->capture_default_str();
  sol->add_option("--budget-aux", sa.budget_aux, "Maximum auxiliary spins")->capture_default_str();
  sol->add_option("--budget-secs", sa.budget_secs, "Wall-time cap (0: none)")->capture_default_str();
  sol->add_option("--cache-size", sa.cache_size, "rho cache entries")->capture_default_str();
  sol->add_option("--restart", sa.restart, "Resume from an outcome file")->check(CLI::ExistingFile);
  sol->add_option("--outcome", sa.outcome, "Write the search outcome here");
  sol->add_option("--out", sa.out, "Solution file (default stdout)");

  std::string ver_path;
  auto* ver = app.add_subcommand("verify", "Exhaustively verify a solution file");
  ver->add_option("--solution", ver_path)->required()->check(CLI::ExistingFile);

  std::string co_circuit, co_outcome, co_out;
  std::uint64_t co_seed = 0;
  auto* com = app.add_subcommand("compose", "Compose a Hamiltonian from a search outcome");
  com->add_option("--circuit", co_circuit)->required();
  com->add_option("--outcome", co_outcome)->required()->check(CLI::ExistingFile);
  com->add_option("--seed", co_seed)->capture_default_str();
  com->add_option("--out", co_out, "Solution file (default stdout)");

  std::string rh_circuit, rh_outcome, rh_radius = "full";
  std::size_t rh_cache = std::size_t{1} << 20;
  auto* rh = app.add_subcommand("rho", "Evaluate rho for a stored auxiliary function");
  rh->add_option("--circuit", rh_circuit)->required();
  rh->add_option("--outcome", rh_outcome)->required()->check(CLI::ExistingFile);
  rh->add_option("--radius", rh_radius, "1..M or full")->capture_default_str();
  rh->add_option("--cache-size", rh_cache)->capture_default_str();

  std::string st_circuit, st_out;
  int st_aux = 1, st_runs = 10, st_radius = 2;
  std::uint64_t st_seed = 0;
  auto* st = app.add_subcommand("stats", "rho experiments (CSV)");
  st->require_subcommand(1);
  auto add_common = [&](CLI::App* s) {
    s->add_option("--circuit", st_circuit)->required();
    s->add_option("--aux", st_aux, "Auxiliary spins")->check(CLI::NonNegativeNumber)->capture_default_str();
    s->add_option("--runs", st_runs)->check(CLI::PositiveNumber)->capture_default_str();
    s->add_option("--seed", st_seed)->capture_default_str();
    s->add_option("--out", st_out, "CSV file (default stdout)");
  };
  auto* prof = st->add_subcommand("rho-profile", "rho_i / rho over radii");
  add_common(prof);
  prof->footer(
      "CSV: run,radius,rho_radius,rho_full,ratio\n"
      "  one row per (run, radius 1..M); ratio = rho_radius / rho_full, ending at 1.\n"
      "  Draws with rho_full = 0 are replaced. Reals have 9 significant digits.");
  auto* minc = st->add_subcommand("min-constraints", "Smallest infeasible row prefix of B_r");
  add_common(minc);
  minc->footer(
      "CSV: run,rows_total,min_rows,fraction\n"
      "  rows_total = rows of B_radius; min_rows = shortest prefix of a random row\n"
      "  order with positive rho; fraction = min_rows / rows_total.");
  minc->add_option("--radius", st_radius)->check(CLI::PositiveNumber)->capture_default_str();

  int sc_dmax = 4;
  auto* scan = app.add_subcommand("scan-conjecture", "Strong neutralizability of non-redundant thresholds");
  scan->add_option("--dmax", sc_dmax)->check(CLI::Range(1, 5))->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  int status = 0;
  try {
    if (thr->parsed()) {
      if (!ta.exhaustive && ta.sample.empty()) throw std::invalid_argument("give --exhaustive or --sample N");
      seed_for_log = ta.seed;
      status = run_thresholds(ta, g);
    } else if (sol->parsed()) {
      seed_for_log = sa.seed;
      status = run_solve(sa, g);
    } else if (ver->parsed()) {
      status = run_verify(ver_path, g);
    } else if (com->parsed()) {
      seed_for_log = co_seed;
      status = run_compose(co_circuit, co_outcome, co_seed, co_out, g);
    } else if (rh->parsed()) {
      status = run_rho(rh_circuit, rh_outcome, rh_radius, rh_cache, g);
    } else if (st->parsed()) {
      seed_for_log = st_seed;
      const Circuit c = build_circuit(st_circuit);
      RhoOptions o;
      o.lp = lp_options(g, resolve_threads(g.threads));
      if (prof->parsed()) {
        const auto rows = rho_profile(c, st_aux, st_runs, st_seed, o);
        with_output(st_out, [&](std::ostream& out) { write_csv(out, rows); });
      } else {
        const auto rows = min_constraints(c, st_aux, st_runs, st_seed, st_radius, o);
        with_output(st_out, [&](std::ostream& out) { write_csv(out, rows); });
      }
    } else if (scan->parsed()) {
      status = run_scan(sc_dmax, g);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    status = 2;
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json opts = resolved_options(&app);
  opts["threads_resolved"] = resolve_threads(g.threads);
  std::cerr << "revising " << REVISING_VERSION << " options=" << opts.dump()
            << " seed=" << seed_for_log << " wall=" << wall << "s\n";
  return status;
}
