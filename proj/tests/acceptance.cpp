// Copyright 2026 The beliefsg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
//
//   acceptance                 all criteria, tournament at desk scale
//   acceptance --smoke         tournament at 50 matches/pair, K=200
//   acceptance --criteria 1,6  a subset

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "beliefsg/bp.hpp"
#include "beliefsg/determinizer.hpp"
#include "beliefsg/oracle.hpp"
#include "beliefsg/tournament.hpp"
#include "support.hpp"

namespace beliefsg {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// The instance set shared by criteria 1 and 2.
std::vector<BeliefState> feasible_instances(int n) {
  Rng rng(derive_seed(0xacce, {1}));
  std::vector<BeliefState> out;
  for (int i = 0; i < n; ++i) out.push_back(testing::random_instance(rng).belief);
  return out;
}

// ---------------------------------------------------------------------------
// 1. BP marginals against the enumeration oracle.

Outcome bp_versus_oracle() {
  Outcome o;
  int non_converged = 0, over = 0, vars = 0;
  double worst = 0.0;
  const auto instances = feasible_instances(500);
  for (auto bel : instances) {
    bel = propagate_counts(bel);
    const auto exact = marginals_exact(bel, 0);
    const auto r = run_bp(build_graph(bel, 0));
    if (!r.converged) {
      ++non_converged;
      continue;
    }
    for (PieceId p = 0; p < bel.num_pieces(); ++p) {
      const double tv = total_variation(r.marginals.of(p), exact.of(p));
      worst = std::max(worst, tv);
      over += tv > 0.1;
      ++vars;
    }
  }
  const double rate = non_converged / 500.0;

  // Instances where only one identity's count is constrained.
  Rng rng(derive_seed(0xacce, {2}));
  double single_worst = 0.0;
  int single_failed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + uniform_index(rng, 7);
    const int k = 2 + uniform_index(rng, 3);
    std::vector<std::string> labels;
    for (int v = 0; v < k; ++v) labels.push_back(std::to_string(v));
    std::vector<CountBounds> bounds(k, CountBounds{0, n});
    const int lb = uniform_index(rng, n + 1);
    bounds[uniform_index(rng, k)] = {lb, lb + uniform_index(rng, n - lb + 1)};
    const auto bel = testing::make_belief(n, labels, bounds);
    const auto r = run_bp(build_graph(bel, 0));
    if (!r.converged) {
      ++single_failed;
      continue;
    }
    const auto exact = testing::brute_force_marginals(bel, 0);
    for (PieceId p = 0; p < n; ++p) {
      for (int v = 0; v < k; ++v) {
        single_worst = std::max(single_worst, std::abs(r.marginals.of(p)[v] - exact[p][v]));
      }
    }
  }

  o.pass = over == 0 && rate < 0.10 && single_failed == 0 && single_worst <= 1e-6;
  o.detail = "non-converged " + std::to_string(non_converged) + "/500 (" +
             fmt("%.1f%%", 100.0 * rate) + "), converged variables over TV 0.1: " +
             std::to_string(over) + "/" + std::to_string(vars) + ", worst TV " +
             fmt("%.4f", worst) + ", single-factor worst |diff| " + fmt("%.2e", single_worst);
  return o;
}

// ---------------------------------------------------------------------------
// 2. Propagation soundness and Contradiction iff empty support.

Outcome propagation_soundness() {
  Outcome o;
  int unsound = 0, mismatched = 0, empty = 0;
  auto check = [&](const BeliefState& bel) {
    const auto support = enumerate_support(bel, 0);
    BeliefState after = bel;
    const bool ok = after.try_propagate();
    if (ok == support.empty()) ++mismatched;
    empty += support.empty();
    if (!ok) return;
    for (const auto& s : support) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(after.domain(static_cast<PieceId>(i)) & bit(s[i]))) ++unsound;
      }
    }
  };
  for (const auto& bel : feasible_instances(500)) check(bel);
  // The feasible set never contradicts, so the converse is exercised on
  // instances generated without a planted solution.
  Rng rng(derive_seed(0xacce, {3}));
  for (int i = 0; i < 500; ++i) check(testing::random_instance(rng, false).belief);

  o.pass = unsound == 0 && mismatched == 0;
  o.detail = "pruned values found in a solution: " + std::to_string(unsound) +
             ", contradiction/empty-support mismatches: " + std::to_string(mismatched) +
             " (1000 instances, " + std::to_string(empty) + " with empty support)";
  return o;
}

// ---------------------------------------------------------------------------
// 3. Sampler membership, coverage and symmetry.

Outcome sampler_membership() {
  Outcome o;
  constexpr int kSamples = 10000;
  const std::array<SamplerKind, 2> kinds{SamplerKind::ConstraintUniform, SamplerKind::BpGuided};

  // "Small" means at most 100 solutions.
  Rng rng(derive_seed(0xacce, {4}));
  std::vector<BeliefState> small;
  while (small.size() < 50) {
    auto bel = testing::random_instance(rng).belief;
    if (enumerate_support(bel, 0).size() <= 100) small.push_back(std::move(bel));
  }
  int outside = 0, missed = 0, solutions = 0;
  for (std::size_t i = 0; i < small.size(); ++i) {
    const auto sols = enumerate_support(small[i], 0);
    const std::set<std::vector<int>> support(sols.begin(), sols.end());
    for (const auto kind : kinds) {
      solutions += static_cast<int>(support.size());
      std::set<std::vector<int>> seen;
      for (int s = 0; s < kSamples; ++s) {
        const auto d = sample(kind, small[i], {},
                              derive_seed(0xacce, {5, i, static_cast<std::uint64_t>(s)}));
        if (!support.count(d.assignment)) ++outside;
        seen.insert(d.assignment);
      }
      missed += static_cast<int>(support.size() - seen.size());
    }
  }

  // Symmetric instances; every listed piece should be 50/50 between a and b.
  struct Sym {
    BeliefState belief;
    std::vector<PieceId> pieces;
  };
  const std::vector<Sym> symmetric = {
      {testing::make_belief(2, {"a", "b"}, {{1, 1}, {1, 1}}), {0, 1}},
      {testing::make_belief(4, {"a", "b"}, {{2, 2}, {2, 2}}), {0, 1, 2, 3}},
      {testing::make_belief(3, {"a", "b"}, {{0, 3}, {0, 3}}), {0, 1, 2}},
  };
  double worst = 0.0;
  for (std::size_t i = 0; i < symmetric.size(); ++i) {
    for (const auto kind : kinds) {
      std::vector<int> got_a(symmetric[i].belief.num_pieces(), 0);
      for (int s = 0; s < kSamples; ++s) {
        const auto d = sample(kind, symmetric[i].belief, {},
                              derive_seed(0xacce, {6, i, static_cast<std::uint64_t>(s)}));
        for (PieceId p : symmetric[i].pieces) got_a[p] += d.assignment[p] == 0;
      }
      for (PieceId p : symmetric[i].pieces) {
        worst = std::max(worst, std::abs(static_cast<double>(got_a[p]) / kSamples - 0.5));
      }
    }
  }

  o.pass = outside == 0 && missed == 0 && worst <= 0.02;
  o.detail = "samples outside support: " + std::to_string(outside) +
             ", solutions never drawn: " + std::to_string(missed) + "/" +
             std::to_string(solutions) + ", worst symmetric deviation from 50%: " +
             fmt("%.2f", 100.0 * worst) + " points";
  return o;
}

// ---------------------------------------------------------------------------
// 4. Round-robin tournaments.

struct TournamentScale {
  bool smoke = false;
  int matches = 200;
  int determinizations = 10;
  int simulations = 1000;
  std::uint64_t seed = 2026;
};

const std::vector<std::string> kAgents = {"random", "pmc-c", "pmc-p", "duct-c", "duct-p"};

TournamentConfig tournament_config(const std::string& game, const TournamentScale& scale) {
  TournamentConfig c;
  c.game = game;
  c.agents = kAgents;
  c.matches = scale.matches;
  c.seed = scale.seed;
  c.base.determinizations = scale.determinizations;
  c.base.simulations = scale.simulations;
  return c;
}

Outcome tournament_reproduction(const TournamentScale& scale) {
  Outcome o;
  const double vs_random = scale.smoke ? 0.60 : 0.70;
  std::ostringstream detail;
  for (const std::string game : {"goofspiel", "mini-stratego"}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto c = tournament_config(game, scale);
    const auto r = run_tournament(c);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << matrix_to_text(r.matrix, game);
    std::cout << "  (" << fmt("%.0f", secs) << " s, " << r.errors << " errors)" << std::endl;
    if (r.errors) {
      o.pass = false;
      detail << game << ": " << r.errors << " failed matches; ";
    }
    const auto cell = [&](const char* a, const char* b) { return r.matrix.at(a, b)->mean; };

    // (a) every searching agent beats random.
    for (std::size_t i = 1; i < kAgents.size(); ++i) {
      const double w = cell(kAgents[i].c_str(), "random");
      if (w < vs_random) {
        o.pass = false;
        detail << game << " 4a " << kAgents[i] << " vs random " << fmt("%.1f%%", 100 * w)
               << "; ";
      }
    }
    if (scale.smoke) continue;

    // (b) in Goofspiel, DUCT beats PMC.
    if (game == "goofspiel") {
      for (const char* d : {"duct-c", "duct-p"}) {
        for (const char* p : {"pmc-c", "pmc-p"}) {
          const double w = cell(d, p);
          if (w < 0.65) {
            o.pass = false;
            detail << "goofspiel 4b " << d << " vs " << p << " " << fmt("%.1f%%", 100 * w)
                   << "; ";
          }
        }
      }
    }
    // (c) constraint and probabilistic sampling are on par.
    for (const auto& [x, y] : {std::pair{"pmc-c", "pmc-p"}, std::pair{"duct-c", "duct-p"}}) {
      const double w = cell(x, y);
      if (std::abs(w - 0.5) > 0.10) {
        o.pass = false;
        detail << game << " 4c " << x << " vs " << y << " " << fmt("%.1f%%", 100 * w) << "; ";
      }
    }
  }
  std::string d = detail.str();
  o.detail = (scale.smoke ? std::string("smoke preset, 4a at >= 60%") : "4a, 4b and 4c") +
             (d.empty() ? std::string(", all thresholds met") : ": " + d);
  return o;
}

// ---------------------------------------------------------------------------
// 5. Determinism.

Outcome determinism() {
  Outcome o;
  std::vector<std::string> broken;

  for (const std::string game : {"goofspiel", "mini-stratego"}) {
    TournamentScale s;
    s.matches = 2;
    s.determinizations = 4;
    s.simulations = 100;
    auto c = tournament_config(game, s);
    const auto first = report(c, run_tournament(c), ReportFormat::Json);
    if (report(c, run_tournament(c), ReportFormat::Json) != first) {
      broken.push_back(game + " tournament rerun");
    }
    c.threads = 2;
    if (report(c, run_tournament(c), ReportFormat::Json) != first) {
      broken.push_back(game + " tournament with two threads");
    }
  }

  auto digest = [](const std::vector<BeliefState>& instances) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < instances.size(); ++i) {
      auto bel = instances[i];
      bel = propagate_counts(bel);
      for (const auto& row : run_bp(build_graph(bel, 0)).marginals.probabilities) {
        for (double x : row) os << x << ' ';
      }
      for (const auto kind : {SamplerKind::ConstraintUniform, SamplerKind::BpGuided}) {
        for (int v : sample(kind, bel, {}, derive_seed(7, {i})).assignment) os << v;
      }
      os << '\n';
    }
    return os.str();
  };
  const auto instances = feasible_instances(200);
  if (digest(instances) != digest(instances)) broken.push_back("BP and sampler outputs");

  o.pass = broken.empty();
  o.detail = broken.empty()
                 ? std::string("tournament JSON (rerun and 1 vs 2 threads), BP marginals and "
                               "determinizations identical")
                 : "differences in:";
  for (const auto& b : broken) o.detail += " " + b + ";";
  return o;
}

// ---------------------------------------------------------------------------
// 6. Random full games keep the truth in every player's support.

template <class G>
JointAction random_joint(const G& game, const GameState<G>& s, Rng& rng) {
  JointAction j{kNoAction, kNoAction};
  for (PlayerId p = 0; p < kNumPlayers; ++p) {
    const auto legal = legal_actions(game, s, p);
    if (!legal.empty()) j[p] = legal[uniform_index(rng, static_cast<int>(legal.size()))];
  }
  return j;
}

template <class G>
std::string fuzz(const G& game, int games) {
  Rng rng(derive_seed(0xacce, {8}));
  std::int64_t steps = 0;
  for (int n = 0; n < games; ++n) {
    try {
      auto s = initial_state(game, derive_seed(0xacce, {9, static_cast<std::uint64_t>(n)}));
      while (!is_terminal(game, s)) {
        s = apply(game, s, random_joint(game, s, rng)).state;
        ++steps;
        for (PlayerId p = 0; p < kNumPlayers; ++p) {
          if (!in_support(belief(s, p), game.hidden_truth(s.truth, p))) {
            return "game " + std::to_string(n) + ": truth left player " + std::to_string(p) +
                   "'s support";
          }
        }
      }
    } catch (const std::exception& e) {
      return "game " + std::to_string(n) + ": " + e.what();
    }
  }
  return "ok (" + std::to_string(steps) + " steps)";
}

Outcome fuzz_integrity() {
  Outcome o;
  const auto g = fuzz(Goofspiel{}, 10000);
  const auto m = fuzz(MiniStratego{}, 10000);
  o.pass = g.rfind("ok", 0) == 0 && m.rfind("ok", 0) == 0;
  o.detail = "goofspiel " + g + ", mini-stratego " + m;
  return o;
}

}  // namespace
}  // namespace beliefsg

int main(int argc, char** argv) {
  using namespace beliefsg;
  CLI::App app{"beliefsg acceptance suite"};
  TournamentScale scale;
  std::vector<int> criteria = {1, 2, 3, 4, 5, 6};
  app.add_flag("--smoke", scale.smoke, "tournament at 50 matches/pair and 200 simulations");
  app.add_option("--criteria", criteria, "criteria to run")->delimiter(',');
  app.add_option("--seed", scale.seed, "tournament master seed");
  CLI11_PARSE(app, argc, argv);
  if (scale.smoke) {
    scale.matches = 50;
    scale.simulations = 200;
  }

  const std::map<int, std::pair<const char*, std::function<Outcome()>>> suite = {
      {1, {"BP marginals vs oracle", bp_versus_oracle}},
      {2, {"propagation soundness", propagation_soundness}},
      {3, {"sampler membership and coverage", sampler_membership}},
      {4, {"tournament win-rate pattern", [&] { return tournament_reproduction(scale); }}},
      {5, {"determinism", determinism}},
      {6, {"fuzz integrity", fuzz_integrity}},
  };

  int failed = 0;
  for (int c : criteria) {
    const auto it = suite.find(c);
    if (it == suite.end()) {
      std::cerr << "no criterion " << c << '\n';
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it->second.second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c << " (" << it->second.first
              << ", " << fmt("%.1f", secs) << " s): " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
