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

#ifndef BELIEFSG_GAMES_GOOFSPIEL_HPP_
#define BELIEFSG_GAMES_GOOFSPIEL_HPP_

// Goofspiel with hidden bids. Each round a prize card is revealed, both
// players secretly bid an unplayed card and only the outcome (who bid
// higher, or a tie) is announced. The winner takes the prize value; a tie
// splits it. Higher total after the last round wins.
//
// Player p's belief has two piece types:
//   opponent_card  piece k = the card the opponent plays in round k
//   prize          piece n + k = the prize card of round k
// Both use identities "1".."n" with every rank occurring exactly once.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "beliefsg/belief.hpp"
#include "beliefsg/game.hpp"
#include "beliefsg/rng.hpp"

namespace beliefsg {

struct GoofspielConfig {
  int num_cards = 13;
};

inline constexpr int kGoofspielMaxCards = 16;
inline constexpr std::int8_t kTie = 2;

struct GoofspielState {
  int num_cards = 13;
  int round = 0;
  std::array<std::uint32_t, kNumPlayers> hands{};  // bit r-1 <=> rank r
  std::array<std::int8_t, kGoofspielMaxCards> prizes{};
  std::array<std::array<std::int8_t, kGoofspielMaxCards>, kNumPlayers> bids{};
  std::array<std::int8_t, kGoofspielMaxCards> winners{};  // 0, 1 or kTie
  std::array<int, kNumPlayers> points2{};  // prize totals, doubled

  double points(PlayerId p) const { return points2[p] / 2.0; }
  bool in_hand(PlayerId p, int rank) const {
    return rank >= 1 && rank <= num_cards && (hands[p] >> (rank - 1)) & 1u;
  }
  int current_prize() const { return prizes[round]; }

  friend bool operator==(const GoofspielState&, const GoofspielState&) = default;
};

class Goofspiel {
 public:
  using PerfectState = GoofspielState;

  static constexpr int kOpponentCardType = 0;
  static constexpr int kPrizeType = 1;

  explicit Goofspiel(GoofspielConfig config = {}) : config_(config) {
    if (config_.num_cards < 1 || config_.num_cards > kGoofspielMaxCards) {
      throw InvalidConfig("goofspiel needs 1..16 cards");
    }
  }

  std::string_view name() const { return "goofspiel"; }
  const GoofspielConfig& config() const { return config_; }
  int num_cards() const { return config_.num_cards; }

  PieceId opponent_card_piece(int round) const { return round; }
  PieceId prize_piece(int round) const { return config_.num_cards + round; }

  GoofspielState initial_truth(std::uint64_t seed) const {
    const int n = config_.num_cards;
    GoofspielState s;
    s.num_cards = n;
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    s.hands = {full, full};
    for (int i = 0; i < n; ++i) s.prizes[i] = static_cast<std::int8_t>(i + 1);
    Rng rng(seed);
    for (int i = n - 1; i > 0; --i) {
      std::swap(s.prizes[i], s.prizes[uniform_index(rng, i + 1)]);
    }
    return s;
  }

  std::array<BeliefState, kNumPlayers> initial_beliefs(
      const GoofspielState& s) const {
    const int n = config_.num_cards;
    std::vector<std::string> ranks;
    for (int r = 1; r <= n; ++r) ranks.push_back(std::to_string(r));
    const std::vector<CountBounds> once(n, CountBounds{1, 1});

    BeliefState b;
    b.add_type({"opponent_card", ranks}, once);
    b.add_type({"prize", ranks}, once);
    for (int k = 0; k < n; ++k) b.add_piece(kOpponentCardType);
    for (int k = 0; k < n; ++k) b.add_piece(kPrizeType);
    // Round 0's prize is face up.
    if (!b.try_assign(prize_piece(0), s.prizes[0] - 1)) {
      throw InvalidConfig("bad prize deck");
    }
    return {b, b};
  }

  bool is_terminal(const GoofspielState& s) const {
    return s.round >= s.num_cards;
  }

  Returns returns(const GoofspielState& s) const {
    if (s.points2[0] > s.points2[1]) return {1.0, 0.0};
    if (s.points2[0] < s.points2[1]) return {0.0, 1.0};
    return {0.5, 0.5};
  }

  bool is_mover(const GoofspielState& s, PlayerId) const {
    return !is_terminal(s);
  }

  void legal_actions(const GoofspielState& s, PlayerId p,
                     std::vector<Action>& out) const {
    for (int r = 1; r <= s.num_cards; ++r) {
      if (s.in_hand(p, r)) out.push_back(r);
    }
  }

  void apply(GoofspielState& s, const JointAction& joint) const {
    const int k = s.round;
    const int prize = s.prizes[k];
    for (PlayerId p = 0; p < kNumPlayers; ++p) {
      s.hands[p] &= ~(std::uint32_t{1} << (joint[p] - 1));
      s.bids[p][k] = static_cast<std::int8_t>(joint[p]);
    }
    if (joint[0] > joint[1]) {
      s.winners[k] = 0;
      s.points2[0] += 2 * prize;
    } else if (joint[1] > joint[0]) {
      s.winners[k] = 1;
      s.points2[1] += 2 * prize;
    } else {
      s.winners[k] = kTie;
      s.points2[0] += prize;
      s.points2[1] += prize;
    }
    ++s.round;
  }

  std::array<std::string, kNumPlayers> observe(
      const GoofspielState& before, const JointAction& joint,
      const GoofspielState& after,
      std::array<BeliefState, kNumPlayers>& beliefs) const {
    const int n = config_.num_cards;
    const int k = before.round;
    const int outcome = after.winners[k];
    std::array<std::string, kNumPlayers> notes;
    for (PlayerId p = 0; p < kNumPlayers; ++p) {
      BeliefState& b = beliefs[p];
      const int mine = joint[p];
      const PieceId card = opponent_card_piece(k);
      bool ok = true;
      std::string what;
      if (outcome == kTie) {
        ok = b.try_assign(card, mine - 1);
        what = "tie";
      } else if (outcome == p) {
        ok = b.try_restrict(card, full_mask(mine - 1));  // ranks < mine
        what = "won";
      } else {
        ok = b.try_restrict(card, full_mask(n) & ~full_mask(mine));
        what = "lost";
      }
      if (ok && after.round < n) {
        ok = b.try_assign(prize_piece(after.round), after.prizes[after.round] - 1);
      }
      if (!ok) {
        throw Contradiction("goofspiel observation inconsistent with belief of player " +
                            std::to_string(p));
      }
      notes[p] = "round " + std::to_string(k + 1) + " prize " +
                 std::to_string(before.prizes[k]) + ": bid " +
                 std::to_string(mine) + ", " + what;
    }
    return notes;
  }

  std::vector<int> hidden_truth(const GoofspielState& s, PlayerId p) const {
    const int n = s.num_cards;
    const PlayerId o = 1 - p;
    std::vector<int> truth(2 * n);
    for (int k = 0; k < s.round; ++k) truth[k] = s.bids[o][k] - 1;
    int k = s.round;
    for (int r = 1; r <= n; ++r) {
      if (s.in_hand(o, r)) truth[k++] = r - 1;
    }
    for (int k2 = 0; k2 < n; ++k2) truth[n + k2] = s.prizes[k2] - 1;
    return truth;
  }

  GoofspielState determinize(const GoofspielState& truth, PlayerId p,
                             const Determinization& det) const {
    const int n = truth.num_cards;
    const PlayerId o = 1 - p;
    GoofspielState s = truth;
    s.hands[o] = 0;
    for (int k = 0; k < n; ++k) {
      const int rank = det.assignment[k] + 1;
      if (k < truth.round) {
        s.bids[o][k] = static_cast<std::int8_t>(rank);
      } else {
        s.bids[o][k] = 0;
        s.hands[o] |= std::uint32_t{1} << (rank - 1);
      }
    }
    for (int k = truth.round; k < n; ++k) {
      s.prizes[k] = static_cast<std::int8_t>(det.assignment[n + k] + 1);
    }
    return s;
  }

  std::string action_to_string(PlayerId, Action a) const {
    return "bid " + std::to_string(a);
  }

 private:
  GoofspielConfig config_;
};

static_assert(GameModel<Goofspiel>);

}  // namespace beliefsg

#endif  // BELIEFSG_GAMES_GOOFSPIEL_HPP_
