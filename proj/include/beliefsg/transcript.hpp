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

#ifndef BELIEFSG_TRANSCRIPT_HPP_
#define BELIEFSG_TRANSCRIPT_HPP_

// Line-delimited JSON game transcripts:
//   {"type":"header","game":...,"seed":...,"seats":[...]}
//   {"type":"step","index":i,"joint":[a0,a1]}       one per step
//   {"type":"result","returns":[r0,r1]}

#include <istream>
#include <ostream>
#include <string>

#include "beliefsg/game.hpp"
#include "beliefsg/tournament.hpp"
#include "json.hpp"

namespace beliefsg {

inline void write_transcript(std::ostream& os, const MatchRecord& r) {
  os << nlohmann::json{{"type", "header"}, {"game", r.game}, {"seed", r.seed},
                       {"seats", r.seats}}
            .dump()
     << '\n';
  for (std::size_t i = 0; i < r.actions.size(); ++i) {
    os << nlohmann::json{{"type", "step"},
                         {"index", i},
                         {"joint", {r.actions[i][0], r.actions[i][1]}}}
              .dump()
       << '\n';
  }
  os << nlohmann::json{{"type", "result"}, {"returns", r.returns}}.dump() << '\n';
}

// Reads one transcript. Returns false at end of input.
inline bool read_transcript(std::istream& is, MatchRecord& r) {
  std::string line;
  r = MatchRecord{};
  bool in_match = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    const auto type = j.at("type").get<std::string>();
    if (type == "header") {
      r.game = j.at("game").get<std::string>();
      r.seed = j.at("seed").get<std::uint64_t>();
      r.seats = j.at("seats").get<std::array<std::string, kNumPlayers>>();
      in_match = true;
    } else if (type == "step") {
      if (!in_match) throw std::runtime_error("step before header");
      const auto& a = j.at("joint");
      r.actions.push_back({a[0].get<int>(), a[1].get<int>()});
    } else if (type == "result") {
      if (!in_match) throw std::runtime_error("result before header");
      r.returns = j.at("returns").get<Returns>();
      return true;
    } else {
      throw std::runtime_error("unknown transcript line type '" + type + "'");
    }
  }
  if (in_match) throw std::runtime_error("truncated transcript");
  return false;
}

// Replays a transcript from its seed; the result is the final state.
template <GameModel G>
GameState<G> replay(const G& game, const MatchRecord& r) {
  auto state = initial_state(game, r.seed);
  for (const auto& joint : r.actions) state = apply(game, state, joint).state;
  return state;
}

}  // namespace beliefsg

#endif  // BELIEFSG_TRANSCRIPT_HPP_
