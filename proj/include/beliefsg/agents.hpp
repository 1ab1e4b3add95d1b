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

#ifndef BELIEFSG_AGENTS_HPP_
#define BELIEFSG_AGENTS_HPP_

// Determinization-based agents:
//   random  uniform over legal actions
//   pmc     flat Monte Carlo: mean return of random playouts per root action
//   duct    decoupled UCT, one tree per determinization, plurality vote
// PMC and DUCT come in two flavours depending on how determinizations are
// drawn from the belief (constraint-uniform or BP-guided).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "beliefsg/bp.hpp"
#include "beliefsg/determinizer.hpp"
#include "beliefsg/game.hpp"
#include "beliefsg/rng.hpp"

namespace beliefsg {

enum class AgentKind { Random, Pmc, Duct };

struct AgentConfig {
  AgentKind kind = AgentKind::Random;
  SamplerKind sampler = SamplerKind::ConstraintUniform;
  int determinizations = 10;
  // PMC: playouts per root action (split across determinizations).
  // DUCT: iterations per determinization tree.
  int simulations = 1000;
  double exploration = 1.414;
  BpConfig bp;
  std::uint64_t seed = 0;

  void validate() const {
    if (determinizations < 1) throw std::invalid_argument("determinizations must be >= 1");
    if (simulations < 1) throw std::invalid_argument("simulations must be >= 1");
    bp.validate();
  }
};

// "random", "pmc-c", "pmc-p", "duct-c", "duct-p".
inline AgentConfig parse_agent_spec(std::string_view spec) {
  AgentConfig c;
  if (spec == "random") return c;
  const auto dash = spec.find('-');
  if (dash == std::string_view::npos) {
    throw std::invalid_argument("unknown agent spec '" + std::string(spec) + "'");
  }
  const auto algo = spec.substr(0, dash);
  const auto belief = spec.substr(dash + 1);
  if (algo == "pmc") {
    c.kind = AgentKind::Pmc;
  } else if (algo == "duct") {
    c.kind = AgentKind::Duct;
  } else {
    throw std::invalid_argument("unknown agent spec '" + std::string(spec) + "'");
  }
  if (belief == "c") {
    c.sampler = SamplerKind::ConstraintUniform;
  } else if (belief == "p") {
    c.sampler = SamplerKind::BpGuided;
  } else {
    throw std::invalid_argument("unknown agent spec '" + std::string(spec) + "'");
  }
  return c;
}

inline std::string agent_spec(const AgentConfig& c) {
  if (c.kind == AgentKind::Random) return "random";
  std::string s = c.kind == AgentKind::Pmc ? "pmc-" : "duct-";
  return s + (c.sampler == SamplerKind::ConstraintUniform ? "c" : "p");
}

struct SearchStats {
  std::int64_t playouts = 0;
  std::int64_t iterations = 0;
  std::vector<double> scores;  // PMC mean return per legal action
  std::vector<Action> votes;   // DUCT root choice per tree
  SamplerStats sampler;
};

template <GameModel G>
Action random_agent(const G& game, const GameState<G>& state, PlayerId player,
                    std::uint64_t seed) {
  const auto legal = legal_actions(game, state, player);
  if (legal.empty()) return kNoAction;
  Rng rng(seed);
  return legal[uniform_index(rng, static_cast<int>(legal.size()))];
}

namespace detail {

template <GameModel G>
std::vector<typename G::PerfectState> draw_determinizations(
    const G& game, const GameState<G>& state, PlayerId player,
    const AgentConfig& config, std::uint64_t seed, SamplerStats& stats) {
  std::vector<typename G::PerfectState> out;
  out.reserve(config.determinizations);
  const BeliefState& b = belief(state, player);
  for (int d = 0; d < config.determinizations; ++d) {
    const auto det = sample(config.sampler, b, config.bp,
                            derive_seed(seed, {1, static_cast<std::uint64_t>(d)}),
                            &stats);
    out.push_back(resolve_determinization(game, state, player, det));
  }
  return out;
}

}  // namespace detail

template <GameModel G>
Action pmc_select(const G& game, const GameState<G>& state, PlayerId player,
                  const AgentConfig& config, std::uint64_t seed,
                  SearchStats* stats = nullptr) {
  config.validate();
  SearchStats local;
  SearchStats& st = stats ? *stats : local;
  const auto legal = legal_actions(game, state, player);
  if (legal.empty()) return kNoAction;

  const auto dets =
      detail::draw_determinizations(game, state, player, config, seed, st.sampler);
  const int per = std::max(1, config.simulations / config.determinizations);
  std::vector<double> total(legal.size(), 0.0);
  std::vector<Action> scratch;
  for (std::size_t d = 0; d < dets.size(); ++d) {
    Rng rng(derive_seed(seed, {2, d}));
    for (std::size_t a = 0; a < legal.size(); ++a) {
      for (int j = 0; j < per; ++j) {
        auto s = dets[d];
        JointAction joint{kNoAction, kNoAction};
        for (PlayerId p = 0; p < kNumPlayers; ++p) {
          if (!game.is_mover(s, p)) continue;
          if (p == player) {
            joint[p] = legal[a];
          } else {
            scratch.clear();
            game.legal_actions(s, p, scratch);
            joint[p] = scratch[uniform_index(rng, static_cast<int>(scratch.size()))];
          }
        }
        game.apply(s, joint);
        total[a] += random_playout(game, std::move(s), rng, scratch)[player];
        ++st.playouts;
      }
    }
  }
  const double n = static_cast<double>(dets.size()) * per;
  st.scores.assign(legal.size(), 0.0);
  std::size_t best = 0;
  for (std::size_t a = 0; a < legal.size(); ++a) {
    st.scores[a] = total[a] / n;
    if (total[a] > total[best]) best = a;
  }
  return legal[best];
}

namespace detail {

// Decoupled UCT tree over a perfect-information game. Every node keeps,
// for each player, statistics over that player's own actions only.
template <GameModel G>
class DuctTree {
 public:
  DuctTree(const G& game, double exploration)
      : game_(game), exploration_(exploration) {}

  struct Node {
    std::array<std::vector<Action>, kNumPlayers> actions;
    std::array<std::vector<int>, kNumPlayers> visits;
    std::array<std::vector<double>, kNumPlayers> total;
    int n = 0;
    std::vector<int> children;  // [i0 * |A1| + i1], -1 if not expanded
    bool terminal = false;
  };

  void search(const typename G::PerfectState& root, int iterations, Rng& rng) {
    nodes_.clear();
    make_node(root);
    std::vector<std::array<int, 3>> path;
    for (int it = 0; it < iterations; ++it) {
      auto s = root;
      int node = 0;
      path.clear();
      Returns ret;
      while (true) {
        if (nodes_[node].terminal) {
          ret = game_.returns(s);
          break;
        }
        const int i0 = select(nodes_[node], 0);
        const int i1 = select(nodes_[node], 1);
        path.push_back({node, i0, i1});
        game_.apply(s, {nodes_[node].actions[0][i0], nodes_[node].actions[1][i1]});
        const int slot = i0 * static_cast<int>(nodes_[node].actions[1].size()) + i1;
        const int child = nodes_[node].children[slot];
        if (child < 0) {
          const int created = make_node(s);
          nodes_[node].children[slot] = created;
          ret = nodes_[created].terminal ? game_.returns(s)
                                         : random_playout(game_, s, rng, scratch_);
          break;
        }
        node = child;
      }
      for (const auto& [nd, i0, i1] : path) {
        Node& x = nodes_[nd];
        ++x.n;
        const int idx[2] = {i0, i1};
        for (PlayerId p = 0; p < kNumPlayers; ++p) {
          ++x.visits[p][idx[p]];
          x.total[p][idx[p]] += ret[p];
        }
      }
    }
  }

  const Node& root() const { return nodes_.front(); }
  std::size_t size() const { return nodes_.size(); }

 private:
  int make_node(const typename G::PerfectState& s) {
    Node x;
    x.terminal = game_.is_terminal(s);
    if (!x.terminal) {
      for (PlayerId p = 0; p < kNumPlayers; ++p) {
        if (game_.is_mover(s, p)) {
          game_.legal_actions(s, p, x.actions[p]);
        } else {
          x.actions[p].push_back(kNoAction);
        }
        x.visits[p].assign(x.actions[p].size(), 0);
        x.total[p].assign(x.actions[p].size(), 0.0);
      }
      x.children.assign(x.actions[0].size() * x.actions[1].size(), -1);
    }
    nodes_.push_back(std::move(x));
    return static_cast<int>(nodes_.size()) - 1;
  }

  // Unvisited actions first (canonical order), then UCB1.
  int select(const Node& x, PlayerId p) const {
    const auto& visits = x.visits[p];
    const int k = static_cast<int>(visits.size());
    if (k == 1) return 0;
    for (int i = 0; i < k; ++i) {
      if (visits[i] == 0) return i;
    }
    const double log_n = std::log(static_cast<double>(x.n));
    int best = 0;
    double best_value = -1.0;
    for (int i = 0; i < k; ++i) {
      const double value = x.total[p][i] / visits[i] +
                           exploration_ * std::sqrt(log_n / visits[i]);
      if (value > best_value) {
        best_value = value;
        best = i;
      }
    }
    return best;
  }

  const G& game_;
  double exploration_;
  std::vector<Node> nodes_;
  std::vector<Action> scratch_;
};

}  // namespace detail

template <GameModel G>
Action duct_select(const G& game, const GameState<G>& state, PlayerId player,
                   const AgentConfig& config, std::uint64_t seed,
                   SearchStats* stats = nullptr) {
  config.validate();
  SearchStats local;
  SearchStats& st = stats ? *stats : local;
  const auto legal = legal_actions(game, state, player);
  if (legal.empty()) return kNoAction;

  const auto dets =
      detail::draw_determinizations(game, state, player, config, seed, st.sampler);
  struct Tally {
    int votes = 0;
    std::int64_t visits = 0;
  };
  std::map<Action, Tally> tally;  // ordered: canonical tie-break
  detail::DuctTree<G> tree(game, config.exploration);
  st.votes.clear();
  for (std::size_t d = 0; d < dets.size(); ++d) {
    Rng rng(derive_seed(seed, {3, d}));
    tree.search(dets[d], config.simulations, rng);
    st.iterations += config.simulations;
    const auto& root = tree.root();
    const auto& visits = root.visits[player];
    std::size_t best = 0;
    for (std::size_t i = 0; i < visits.size(); ++i) {
      tally[root.actions[player][i]].visits += visits[i];
      if (visits[i] > visits[best]) best = i;
    }
    const Action vote = root.actions[player][best];
    ++tally[vote].votes;
    st.votes.push_back(vote);
  }
  Action winner = kNoAction;
  Tally best{-1, -1};
  for (const auto& [action, t] : tally) {
    if (t.votes > best.votes || (t.votes == best.votes && t.visits > best.visits)) {
      best = t;
      winner = action;
    }
  }
  return winner;
}

template <GameModel G>
Action select_action(const G& game, const GameState<G>& state, PlayerId player,
                     const AgentConfig& config, std::uint64_t seed,
                     SearchStats* stats = nullptr) {
  const std::uint64_t s = derive_seed(config.seed, {seed});
  switch (config.kind) {
    case AgentKind::Random:
      return random_agent(game, state, player, s);
    case AgentKind::Pmc:
      return pmc_select(game, state, player, config, s, stats);
    case AgentKind::Duct:
      return duct_select(game, state, player, config, s, stats);
  }
  return kNoAction;
}

}  // namespace beliefsg

#endif  // BELIEFSG_AGENTS_HPP_
