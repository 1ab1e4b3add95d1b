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

// Plays one hidden-bid Goofspiel match and prints what player 0 learns.

#include <cstdlib>
#include <iostream>

#include "beliefsg/agents.hpp"
#include "beliefsg/games/goofspiel.hpp"
#include "beliefsg/serialize.hpp"

int main(int argc, char** argv) {
  using namespace beliefsg;
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 7;

  const Goofspiel game;
  AgentConfig p0 = parse_agent_spec("duct-c");
  AgentConfig p1 = parse_agent_spec("pmc-p");
  p0.simulations = p1.simulations = 200;

  auto state = initial_state(game, seed);
  while (!is_terminal(game, state)) {
    const Action a0 = select_action(game, state, 0, p0, derive_seed(seed, {state.move_count, 0}));
    const Action a1 = select_action(game, state, 1, p1, derive_seed(seed, {state.move_count, 1}));
    auto step = apply(game, state, {a0, a1});
    std::cout << step.observations[0] << " (opponent bid " << a1 << ")\n";
    state = std::move(step.state);
  }
  const Returns r = returns(game, state);
  std::cout << "\nfinal points " << state.truth.points(0) << " - " << state.truth.points(1)
            << ", returns " << r[0] << " / " << r[1] << "\n\n";
  std::cout << "player 0's final belief about the opponent's cards:\n";
  std::cout << belief_to_text(belief(state, 0));
  return 0;
}
