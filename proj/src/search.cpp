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


#include "revising/search.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "revising/compose.hpp"
#include "revising/parallel.hpp"
#include "revising/symmetry.hpp"

namespace revising {

namespace {

using Clock = std::chrono::steady_clock;

// rho evaluation with a cache snapshot per batch: lookups only see values
// stored by earlier batches and new values are stored in index order, so
// results do not depend on the thread count.
class Evaluator {
 public:
  Evaluator(const Circuit& c, const SearchOptions& opts)
      : c_(c), lp_(opts.rho.lp), threads_(resolve_threads(opts.threads)) {
    if (opts.rho.cache) {
      cache_ = opts.rho.cache;
    } else {
      own_ = std::make_unique<RhoCache>();
      cache_ = own_.get();
    }
    lp_.threads = 1;
  }

  std::vector<double> batch(const std::vector<AuxiliaryFunction>& gs, int radius) {
    const std::size_t n = gs.size();
    std::vector<double> out(n);
    std::vector<std::optional<RhoKey>> fresh(n);
    parallel_for(0, static_cast<std::int64_t>(n), threads_, [&](std::int64_t i) {
      const auto values = gs[i].evaluate_all();
      auto key = make_rho_key(c_, radius, gs[i].size(), values);
      if (auto hit = cache_->get(key)) {
        out[i] = *hit;
        return;
      }
      RhoOptions ro;
      ro.lp = lp_;
      out[i] = rho_values(c_, gs[i].size(), values, radius, ro);
      fresh[i] = key;
    });
    for (std::size_t i = 0; i < n; ++i) {
      if (fresh[i]) {
        cache_->put(*fresh[i], out[i]);
        ++solves_;
      }
    }
    return out;
  }

  double one(const AuxiliaryFunction& g, int radius) { return batch({g}, radius)[0]; }

  std::uint64_t solves() const { return solves_; }

 private:
  const Circuit& c_;
  LPOptions lp_;
  int threads_;
  RhoCache* cache_ = nullptr;
  std::unique_ptr<RhoCache> own_;
  std::uint64_t solves_ = 0;
};

std::vector<int> normalized_schedule(const Circuit& c, const std::vector<int>& s) {
  const int M = c.outputs();
  std::vector<int> out;
  for (int r : s) out.push_back(r == kFullRadius ? M : r);
  if (out.empty()) out.push_back(M);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 1 || out[i] > M || (i && out[i] <= out[i - 1])) {
      throw std::invalid_argument("radius schedule must increase within [1, M]");
    }
  }
  if (out.back() != M) throw std::invalid_argument("radius schedule must end at M");
  return out;
}

// Index of the smallest value; ties go to the smallest index.
std::size_t argmin(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[best]) best = i;
  }
  return best;
}

class Search {
 public:
  Search(const Circuit& c, std::vector<ThresholdFunction> library,
         const SearchOptions& opts)
      : c_(c), opts_(opts), eval_(c, opts), base_(c.inputs() + c.outputs()),
        schedule_(normalized_schedule(c, opts.radius_schedule)),
        start_(Clock::now()) {
    if (opts.seed != 0) {
      std::mt19937_64 rng(opts.seed);
      std::shuffle(library.begin(), library.end(), rng);
    }
    library_ = std::move(library);
    out_.seed = opts.seed;
    out_.g = opts.has_initial ? opts.initial : AuxiliaryFunction(base_);
    if (out_.g.base_dim() != base_) {
      throw std::invalid_argument("initial auxiliary base does not match the circuit");
    }
  }

  SearchOutcome greedy() {
    begin();
    for (;;) {
      if (settle()) return finish(SearchStatus::Solved);
      if (over_time() || g().size() >= opts_.max_aux) return finish(SearchStatus::Budget);
      append_best();
    }
  }

  SearchOutcome descent() {
    begin();
    reset_working_set();
    for (;;) {
      if (settle()) return finish(SearchStatus::Solved);
      if (over_time()) return finish(SearchStatus::Budget);
      if (working_.empty()) {
        if (g().size() >= opts_.max_aux) return finish(SearchStatus::Budget);
        append_best();
        reset_working_set();
        continue;
      }
      // Least contributing component in the working set.
      std::vector<AuxiliaryFunction> suppressed;
      for (int i : working_) {
        auto h = g();
        h.replace(i, ThresholdFunction::constant(h[i].dim(), false));
        suppressed.push_back(std::move(h));
      }
      auto vals = eval_.batch(suppressed, radius());
      const int j = working_[argmin(vals)];

      auto cands = candidates(j);
      std::vector<AuxiliaryFunction> trial;
      trial.reserve(cands.size());
      for (const auto& t : cands) {
        auto h = g();
        h.replace(j, t);
        trial.push_back(std::move(h));
      }
      auto tv = eval_.batch(trial, radius());
      const auto best = first_certified(trial, tv, j, rho_ - opts_.improve_tol);
      if (best) {
        out_.g = std::move(trial[*best]);
        rho_ = tv[*best];
        log("replace");
        reset_working_set();
      } else {
        working_.erase(std::find(working_.begin(), working_.end(), j));
      }
    }
  }

 private:
  AuxiliaryFunction& g() { return out_.g; }
  int radius() const { return schedule_[level_]; }

  void begin() {
    rho_ = eval_.one(g(), radius());
    log("start");
  }

  void log(const char* event) {
    out_.trace.push_back({g().size(), radius(), rho_, event});
    if (opts_.on_step) opts_.on_step(out_.trace.back());
  }

  bool over_time() const {
    if (opts_.max_seconds <= 0.0) return false;
    return std::chrono::duration<double>(Clock::now() - start_).count() > opts_.max_seconds;
  }

  void reset_working_set() {
    working_.resize(g().size());
    for (int i = 0; i < g().size(); ++i) working_[i] = i;
  }

  // Advances through the schedule while rho vanishes; true once the full
  // radius is certified feasible.
  bool settle() {
    while (rho_ <= opts_.zero_tol) {
      if (level_ + 1 < schedule_.size()) {
        ++level_;
        rho_ = eval_.one(g(), radius());
        log("advance");
        reset_working_set();
        continue;
      }
      auto fr = is_feasible(c_, g(), opts_.rho.lp);
      if (fr.feasible) {
        out_.certificate = std::move(fr);
        log("solved");
        return true;
      }
      // The LP value rounded to zero but the certificate did not hold;
      // keep searching at the full radius.
      rho_ = std::max(fr.rho, 2.0 * opts_.zero_tol);
      return false;
    }
    return false;
  }

  std::vector<ThresholdFunction> candidates(int slot) const {
    const int dim = base_ + slot;
    std::vector<ThresholdFunction> out;
    for (const auto& t : library_) {
      if (t.dim() <= dim) out.push_back(t);
    }
    auto ands = and_pairs(dim);
    out.insert(out.end(), ands.begin(), ands.end());
    return out;
  }

  void append_best() {
    auto cands = candidates(g().size());
    std::vector<AuxiliaryFunction> trial;
    trial.reserve(cands.size());
    for (const auto& t : cands) {
      auto h = g();
      h.append(t);
      trial.push_back(std::move(h));
    }
    auto vals = eval_.batch(trial, radius());
    // Input-only AND pairs always certify, so this falls back only for
    // circuits with a single input.
    const std::size_t best =
        first_certified(trial, vals, g().size(), std::numeric_limits<double>::infinity())
            .value_or(argmin(vals));
    out_.g = std::move(trial[best]);
    rho_ = vals[best];
    log("append");
  }

  // Smallest-value trial (ties to the lower index) below `bound` whose
  // components from `slot` on all carry a certificate.
  std::optional<std::size_t> first_certified(const std::vector<AuxiliaryFunction>& trial,
                                             const std::vector<double>& vals, int slot,
                                             double bound) {
    std::vector<std::size_t> order(vals.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    for (std::size_t i : order) {
      if (!(vals[i] < bound)) break;
      if (!opts_.certify || certified(trial[i], slot)) return i;
    }
    return std::nullopt;
  }

  bool certified(const AuxiliaryFunction& h, int from) {
    for (int k = from; k < h.size(); ++k) {
      const auto key = std::make_pair(h[k].weights(), h[k].bias());
      if (strong_.count(key)) continue;
      const auto cert = certify_component(c_, h, k, opts_.rho.lp);
      if (!cert) return false;
      // Strong certificates depend on the component alone.
      if (cert->kind == NeutralizabilityKind::Strong) strong_.insert(key);
    }
    return true;
  }

  SearchOutcome finish(SearchStatus s) {
    out_.status = s;
    out_.wall_time = std::chrono::duration<double>(Clock::now() - start_).count();
    out_.lp_solves = eval_.solves();
    return std::move(out_);
  }

  const Circuit& c_;
  const SearchOptions& opts_;
  Evaluator eval_;
  int base_;
  std::vector<int> schedule_;
  std::size_t level_ = 0;
  std::vector<ThresholdFunction> library_;
  std::vector<int> working_;
  double rho_ = 0.0;
  std::set<std::pair<std::vector<double>, double>> strong_;
  SearchOutcome out_;
  Clock::time_point start_;
};

std::vector<ThresholdFunction> entries_of(const ThresholdLibrary& lib) {
  std::vector<ThresholdFunction> out;
  for (const auto& e : lib.entries) out.push_back(e.fn);
  return out;
}

}  // namespace

ThresholdLibrary lifted_library(int n) {
  if (n < 2) throw std::invalid_argument("lifted library needs at least two spins");
  ThresholdLibrary lib;
  lib.dim = n;
  lib.mode = LibraryMode::Exhaustive;
  lib.group = LibraryGroup::OutputNegation;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto base = ThresholdFunction::and_pair(n, i, j);
      for (std::uint64_t f : {std::uint64_t{0}, std::uint64_t{1} << i,
                              std::uint64_t{1} << j, (std::uint64_t{1} << i) | (std::uint64_t{1} << j)}) {
        auto t = act_threshold(f, false, base);
        t.normalize_margin();
        lib.entries.push_back({std::move(t), true});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        std::vector<double> w(n, 0.0);
        w[i] = w[j] = w[k] = 2.0;
        const ThresholdFunction maj(w, 3.0);
        // Flipping all three inputs complements MAJ, so at most one flip.
        for (std::uint64_t f : {std::uint64_t{0}, std::uint64_t{1} << i,
                                std::uint64_t{1} << j, std::uint64_t{1} << k}) {
          auto t = act_threshold(f, false, maj);
          t.normalize_margin();
          lib.entries.push_back({std::move(t), true});
        }
      }
    }
  }
  return lib;
}

std::vector<ThresholdFunction> and_pairs(int n) {
  std::vector<ThresholdFunction> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) out.push_back(ThresholdFunction::and_pair(n, i, j));
  }
  return out;
}

std::string to_string(SearchStatus s) {
  return s == SearchStatus::Solved ? "Solved" : "Budget";
}

SearchOutcome greedy(const Circuit& c, const std::vector<ThresholdLibrary>& libs,
                     const SearchOptions& opts) {
  std::vector<ThresholdFunction> all;
  for (const auto& lib : libs) {
    auto e = entries_of(lib);
    all.insert(all.end(), e.begin(), e.end());
  }
  return Search(c, std::move(all), opts).greedy();
}

SearchOutcome descent(const Circuit& c, const ThresholdLibrary& lib,
                      const SearchOptions& opts) {
  return Search(c, entries_of(lib), opts).descent();
}

double contribution(const Circuit& c, const AuxiliaryFunction& g, int j, int radius,
                    const RhoOptions& opts) {
  if (j < 0 || j >= g.size()) throw std::out_of_range("component index out of range");
  auto h = g;
  h.replace(j, ThresholdFunction::constant(g[j].dim(), false));
  return rho(c, h, radius, opts) - rho(c, g, radius, opts);
}

SearchOutcome escalate(const Circuit& c, const AuxiliaryFunction& g,
                       const std::vector<int>& schedule, const ThresholdLibrary& lib,
                       SearchOptions opts) {
  opts.initial = g;
  opts.has_initial = true;
  opts.radius_schedule = schedule;
  return descent(c, lib, opts);
}

void write_outcome(std::ostream& out, const SearchOutcome& o) {
  using nlohmann::json;
  json comps = json::array();
  for (const auto& t : o.g.components()) comps.push_back({{"w", t.weights()}, {"b", t.bias()}});
  json trace = json::array();
  for (const auto& e : o.trace) {
    trace.push_back({{"size", e.size}, {"radius", e.radius}, {"rho", e.rho}, {"event", e.event}});
  }
  json j = {{"status", to_string(o.status)},
            {"seed", o.seed},
            {"wall_time", o.wall_time},
            {"lp_solves", o.lp_solves},
            {"base", o.g.base_dim()},
            {"components", comps},
            {"trace", trace}};
  out << j.dump(1) << '\n';
}

SearchOutcome read_outcome(std::istream& in, int base_dim) {
  using nlohmann::json;
  SearchOutcome o;
  try {
    json j;
    in >> j;
    if (j.at("base").get<int>() != base_dim) {
      throw std::invalid_argument("outcome base does not match the circuit");
    }
    const auto status = j.at("status").get<std::string>();
    if (status != "Solved" && status != "Budget") {
      throw std::invalid_argument("unknown search status " + status);
    }
    o.status = status == "Solved" ? SearchStatus::Solved : SearchStatus::Budget;
    o.seed = j.at("seed").get<std::uint64_t>();
    o.wall_time = j.at("wall_time").get<double>();
    o.lp_solves = j.at("lp_solves").get<std::uint64_t>();
    o.g = AuxiliaryFunction(base_dim);
    for (const auto& comp : j.at("components")) {
      o.g.append(ThresholdFunction(comp.at("w").get<std::vector<double>>(),
                                   comp.at("b").get<double>()));
    }
    for (const auto& e : j.at("trace")) {
      o.trace.push_back({e.at("size").get<int>(), e.at("radius").get<int>(),
                         e.at("rho").get<double>(), e.at("event").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed outcome: ") + e.what());
  }
  return o;
}

}  // namespace revising
