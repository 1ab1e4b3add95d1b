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

#ifndef BELIEFSG_GAME_HPP_
#define BELIEFSG_GAME_HPP_

// Game interface where the engine, not the agent, maintains each player's
// belief over hidden piece identities.
//
// A game type G provides a perfect-information `PerfectState` (the ground
// truth, also used for playouts on determinizations) and the hooks below.
// GameState<G> pairs that truth with one BeliefState per player. Agents are
// expected to read only belief(state, player), the public part of the
// truth, and their own pieces.

#include <algorithm>
#include <array>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "beliefsg/belief.hpp"
#include "beliefsg/determinizer.hpp"

namespace beliefsg {

using PlayerId = int;
inline constexpr int kNumPlayers = 2;

// Actions are small integers whose numeric order is the canonical order.
using Action = int;
inline constexpr Action kNoAction = -1;

// One entry per player; kNoAction for players who do not move this step.
using JointAction = std::array<Action, kNumPlayers>;

// Payoffs in [0, 1]; win 1, loss 0, draw 0.5 each.
using Returns = std::array<double, kNumPlayers>;

class GameError : public std::runtime_error {
 public:
  explicit GameError(const std::string& what) : std::runtime_error(what) {}
};
class IllegalAction : public GameError {
 public:
  using GameError::GameError;
};
class TerminalState : public GameError {
 public:
  using GameError::GameError;
};
class NonTerminal : public GameError {
 public:
  using GameError::GameError;
};
class InvalidConfig : public GameError {
 public:
  using GameError::GameError;
};
class InconsistentDeterminization : public GameError {
 public:
  using GameError::GameError;
};

template <class G>
concept GameModel = requires(const G& g, const typename G::PerfectState& cs,
                             typename G::PerfectState& s, PlayerId p,
                             JointAction ja, std::vector<Action>& out,
                             std::uint64_t seed, const Determinization& det,
                             std::array<BeliefState, kNumPlayers>& beliefs) {
  { g.name() } -> std::convertible_to<std::string_view>;
  { g.initial_truth(seed) } -> std::same_as<typename G::PerfectState>;
  { g.initial_beliefs(cs) } -> std::same_as<std::array<BeliefState, kNumPlayers>>;
  { g.is_terminal(cs) } -> std::same_as<bool>;
  { g.returns(cs) } -> std::same_as<Returns>;
  { g.is_mover(cs, p) } -> std::same_as<bool>;
  g.legal_actions(cs, p, out);
  g.apply(s, ja);
  // Updates both beliefs for the transition before -> after. Returns one
  // human-readable observation per player.
  { g.observe(cs, ja, cs, beliefs) } -> std::same_as<std::array<std::string, kNumPlayers>>;
  // Ground truth in the indexing of player p's belief.
  { g.hidden_truth(cs, p) } -> std::same_as<std::vector<int>>;
  // Perfect-information state from p's knowledge plus a sampled assignment.
  { g.determinize(cs, p, det) } -> std::same_as<typename G::PerfectState>;
  { g.action_to_string(p, Action{}) } -> std::convertible_to<std::string>;
};

template <class G>
struct GameState {
  typename G::PerfectState truth;
  std::array<BeliefState, kNumPlayers> beliefs;
  int move_count = 0;
};

template <GameModel G>
GameState<G> initial_state(const G& game, std::uint64_t seed) {
  GameState<G> s;
  s.truth = game.initial_truth(seed);
  s.beliefs = game.initial_beliefs(s.truth);
  for (auto& b : s.beliefs) {
    if (!b.try_propagate()) throw InvalidConfig("initial belief is infeasible");
  }
  return s;
}

template <GameModel G>
bool is_terminal(const G& game, const GameState<G>& state) {
  return game.is_terminal(state.truth);
}

template <GameModel G>
Returns returns(const G& game, const GameState<G>& state) {
  if (!game.is_terminal(state.truth)) {
    throw NonTerminal("returns requested on a live state");
  }
  return game.returns(state.truth);
}

template <GameModel G>
const BeliefState& belief(const GameState<G>& state, PlayerId p) {
  return state.beliefs[p];
}

template <GameModel G>
std::vector<Action> legal_actions(const G& game, const GameState<G>& state,
                                  PlayerId p) {
  if (game.is_terminal(state.truth)) {
    throw TerminalState("no legal actions in a terminal state");
  }
  std::vector<Action> out;
  if (game.is_mover(state.truth, p)) game.legal_actions(state.truth, p, out);
  return out;
}

template <GameModel G>
struct StepResult {
  GameState<G> state;
  std::array<std::string, kNumPlayers> observations;
};

// Applies a joint action and updates both beliefs. Throws IllegalAction on
// an illegal joint action and Contradiction if an observation is
// inconsistent with a belief (a bug in the game model).
template <GameModel G>
StepResult<G> apply(const G& game, const GameState<G>& state,
                    const JointAction& joint) {
  if (game.is_terminal(state.truth)) {
    throw IllegalAction("game is over");
  }
  std::vector<Action> legal;
  for (PlayerId p = 0; p < kNumPlayers; ++p) {
    if (!game.is_mover(state.truth, p)) {
      if (joint[p] != kNoAction) {
        throw IllegalAction("player " + std::to_string(p) + " is not to move");
      }
      continue;
    }
    legal.clear();
    game.legal_actions(state.truth, p, legal);
    if (std::find(legal.begin(), legal.end(), joint[p]) == legal.end()) {
      throw IllegalAction("illegal action " + std::to_string(joint[p]) +
                          " for player " + std::to_string(p));
    }
  }
  StepResult<G> r{state, {}};
  game.apply(r.state.truth, joint);
  r.observations = game.observe(state.truth, joint, r.state.truth,
                                r.state.beliefs);
  ++r.state.move_count;
  return r;
}

// Perfect-information state for player p in which the hidden identities
// follow `det`. The determinization must lie in p's belief support.
template <GameModel G>
typename G::PerfectState resolve_determinization(const G& game,
                                                 const GameState<G>& state,
                                                 PlayerId p,
                                                 const Determinization& det) {
  if (!in_support(state.beliefs[p], det.assignment)) {
    throw InconsistentDeterminization(
        "determinization is outside the player's belief support");
  }
  return game.determinize(state.truth, p, det);
}

// Uniformly random playout to the end of the game.
template <GameModel G>
Returns random_playout(const G& game, typename G::PerfectState state, Rng& rng,
                       std::vector<Action>& scratch) {
  while (!game.is_terminal(state)) {
    JointAction joint{kNoAction, kNoAction};
    for (PlayerId p = 0; p < kNumPlayers; ++p) {
      if (!game.is_mover(state, p)) continue;
      scratch.clear();
      game.legal_actions(state, p, scratch);
      joint[p] = scratch[uniform_index(rng, static_cast<int>(scratch.size()))];
    }
    game.apply(state, joint);
  }
  return game.returns(state);
}

}  // namespace beliefsg

#endif  // BELIEFSG_GAME_HPP_
