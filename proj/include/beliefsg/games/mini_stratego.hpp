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

#ifndef BELIEFSG_GAMES_MINI_STRATEGO_HPP_
#define BELIEFSG_GAMES_MINI_STRATEGO_HPP_

// Mini-Stratego on a 5x5 board.
//
// Each side has Flag, Bomb, Miner and two Soldiers, shuffled onto its back
// row (row 0 for player 0, row 4 for player 1). Miners and Soldiers step one
// square orthogonally onto an empty square or attack an enemy piece; Flags
// and Bombs never move. Combat, attacker against defender:
//   anything vs Flag   flag captured, attacker wins the game
//   Miner vs Bomb      bomb removed, miner advances
//   Soldier vs Bomb    soldier removed
//   Soldier vs Miner   miner removed, soldier advances
//   Miner vs Soldier   miner removed
//   equal ranks        both removed
// Combat reveals both identities. A player with no legal move loses; the
// game is drawn after max_plies plies.
//
// Player p's belief covers the opponent's five pieces (piece i = the
// opponent piece that started in column i).

#include <array>
#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "beliefsg/belief.hpp"
#include "beliefsg/game.hpp"
#include "beliefsg/rng.hpp"

namespace beliefsg {

enum MsIdentity : std::int8_t { kFlag = 0, kBomb = 1, kMiner = 2, kSoldier = 3 };

inline constexpr int kMsBoardSize = 5;
inline constexpr int kMsSquares = kMsBoardSize * kMsBoardSize;
inline constexpr int kMsPieces = 5;
inline constexpr std::int8_t kMsEmpty = -1;
inline constexpr std::int8_t kMsNoWinner = -1;
inline constexpr std::int8_t kMsDraw = 2;

struct MiniStrategoConfig {
  int max_plies = 200;
};

struct MsPiece {
  std::int8_t identity = kFlag;
  std::int8_t square = -1;  // -1 once captured
  friend bool operator==(const MsPiece&, const MsPiece&) = default;
};

struct MiniStrategoState {
  std::array<std::array<MsPiece, kMsPieces>, kNumPlayers> pieces{};
  std::array<std::int8_t, kMsSquares> board{};  // owner * 5 + index, or empty
  int ply = 0;
  std::int8_t to_move = 0;
  std::int8_t winner = kMsNoWinner;  // 0, 1, kMsDraw

  static constexpr int square(int row, int col) {
    return row * kMsBoardSize + col;
  }
  int owner_at(int sq) const { return board[sq] < 0 ? -1 : board[sq] / kMsPieces; }
  int index_at(int sq) const { return board[sq] < 0 ? -1 : board[sq] % kMsPieces; }
  int alive(PlayerId p) const {
    int n = 0;
    for (const auto& pc : pieces[p]) n += pc.square >= 0;
    return n;
  }

  friend bool operator==(const MiniStrategoState&,
                         const MiniStrategoState&) = default;
};

inline const char* ms_identity_name(int id) {
  static constexpr const char* kNames[] = {"Flag", "Bomb", "Miner", "Soldier"};
  return kNames[id];
}

class MiniStratego {
 public:
  using PerfectState = MiniStrategoState;

  // Directions: 0 = +row, 1 = -row, 2 = +col, 3 = -col.
  static constexpr int kDirections = 4;
  static constexpr Action encode(int piece, int dir) {
    return piece * kDirections + dir;
  }

  explicit MiniStratego(MiniStrategoConfig config = {}) : config_(config) {
    if (config_.max_plies < 1) throw InvalidConfig("max_plies must be >= 1");
  }

  std::string_view name() const { return "mini-stratego"; }
  const MiniStrategoConfig& config() const { return config_; }

  MiniStrategoState initial_truth(std::uint64_t seed) const {
    MiniStrategoState s;
    s.board.fill(kMsEmpty);
    for (PlayerId p = 0; p < kNumPlayers; ++p) {
      std::array<std::int8_t, kMsPieces> ids = {kFlag, kBomb, kMiner, kSoldier,
                                                kSoldier};
      Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(p)}));
      for (int i = kMsPieces - 1; i > 0; --i) {
        std::swap(ids[i], ids[uniform_index(rng, i + 1)]);
      }
      const int row = p == 0 ? 0 : kMsBoardSize - 1;
      for (int i = 0; i < kMsPieces; ++i) {
        const int sq = MiniStrategoState::square(row, i);
        s.pieces[p][i] = {ids[i], static_cast<std::int8_t>(sq)};
        s.board[sq] = static_cast<std::int8_t>(p * kMsPieces + i);
      }
    }
    return s;
  }

  std::array<BeliefState, kNumPlayers> initial_beliefs(
      const MiniStrategoState&) const {
    BeliefState b;
    const int t = b.add_type({"opponent_piece", {"Flag", "Bomb", "Miner", "Soldier"}},
                             {{1, 1}, {1, 1}, {1, 1}, {2, 2}});
    for (int i = 0; i < kMsPieces; ++i) b.add_piece(t);
    return {b, b};
  }

  bool is_terminal(const MiniStrategoState& s) const {
    return s.winner != kMsNoWinner;
  }

  Returns returns(const MiniStrategoState& s) const {
    if (s.winner == 0) return {1.0, 0.0};
    if (s.winner == 1) return {0.0, 1.0};
    return {0.5, 0.5};
  }

  bool is_mover(const MiniStrategoState& s, PlayerId p) const {
    return !is_terminal(s) && s.to_move == p;
  }

  void legal_actions(const MiniStrategoState& s, PlayerId p,
                     std::vector<Action>& out) const {
    for (int i = 0; i < kMsPieces; ++i) {
      const MsPiece& pc = s.pieces[p][i];
      if (pc.square < 0 || pc.identity == kFlag || pc.identity == kBomb) continue;
      for (int d = 0; d < kDirections; ++d) {
        const int to = target(pc.square, d);
        if (to >= 0 && s.owner_at(to) != p) out.push_back(encode(i, d));
      }
    }
  }

  void apply(MiniStrategoState& s, const JointAction& joint) const {
    const PlayerId m = s.to_move;
    const PlayerId o = 1 - m;
    const int idx = joint[m] / kDirections;
    MsPiece& att = s.pieces[m][idx];
    const int from = att.square;
    const int to = target(from, joint[m] % kDirections);
    const auto here = static_cast<std::int8_t>(m * kMsPieces + idx);

    s.board[from] = kMsEmpty;
    if (s.board[to] == kMsEmpty) {
      s.board[to] = here;
      att.square = static_cast<std::int8_t>(to);
    } else {
      MsPiece& def = s.pieces[o][s.index_at(to)];
      switch (resolve_combat(att.identity, def.identity)) {
        case Combat::kAttackerWins:
          def.square = -1;
          s.board[to] = here;
          att.square = static_cast<std::int8_t>(to);
          break;
        case Combat::kDefenderWins:
          att.square = -1;
          break;
        case Combat::kBothDie:
          att.square = -1;
          def.square = -1;
          s.board[to] = kMsEmpty;
          break;
      }
      if (def.identity == kFlag && def.square < 0) s.winner = static_cast<std::int8_t>(m);
    }

    ++s.ply;
    s.to_move = static_cast<std::int8_t>(o);
    if (s.winner != kMsNoWinner) return;
    if (s.ply >= config_.max_plies) {
      s.winner = kMsDraw;
    } else if (!has_move(s, o)) {
      s.winner = static_cast<std::int8_t>(m);
    }
  }

  std::array<std::string, kNumPlayers> observe(
      const MiniStrategoState& before, const JointAction& joint,
      const MiniStrategoState&,
      std::array<BeliefState, kNumPlayers>& beliefs) const {
    const PlayerId m = before.to_move;
    const PlayerId o = 1 - m;
    const int idx = joint[m] / kDirections;
    const MsPiece& att = before.pieces[m][idx];
    const int to = target(att.square, joint[m] % kDirections);
    std::array<std::string, kNumPlayers> notes;

    if (before.board[to] == kMsEmpty) {
      // A piece that moves is neither a Flag nor a Bomb.
      if (!beliefs[o].try_restrict(idx, bit(kMiner) | bit(kSoldier))) {
        throw Contradiction("move observation inconsistent with belief");
      }
      notes[m] = "you moved piece " + std::to_string(idx);
      notes[o] = "opponent moved piece " + std::to_string(idx);
      return notes;
    }
    const int def_idx = before.index_at(to);
    const int def_id = before.pieces[o][def_idx].identity;
    if (!beliefs[o].try_assign(idx, att.identity) ||
        !beliefs[m].try_assign(def_idx, def_id)) {
      throw Contradiction("combat reveal inconsistent with belief");
    }
    const std::string fight = std::string(ms_identity_name(att.identity)) +
                              " attacks " + ms_identity_name(def_id);
    notes[m] = "your " + fight;
    notes[o] = "opponent " + fight;
    return notes;
  }

  std::vector<int> hidden_truth(const MiniStrategoState& s, PlayerId p) const {
    std::vector<int> truth(kMsPieces);
    for (int i = 0; i < kMsPieces; ++i) truth[i] = s.pieces[1 - p][i].identity;
    return truth;
  }

  MiniStrategoState determinize(const MiniStrategoState& truth, PlayerId p,
                                const Determinization& det) const {
    MiniStrategoState s = truth;
    for (int i = 0; i < kMsPieces; ++i) {
      s.pieces[1 - p][i].identity = static_cast<std::int8_t>(det.assignment[i]);
    }
    return s;
  }

  std::string action_to_string(PlayerId, Action a) const {
    static constexpr const char* kDir[] = {"+row", "-row", "+col", "-col"};
    return "piece " + std::to_string(a / kDirections) + " " +
           kDir[a % kDirections];
  }

  // ASCII board. `viewpoint` = 0 or 1 hides the opponent's unrevealed
  // identities using that player's belief; -1 shows everything.
  std::string render(const MiniStrategoState& s, int viewpoint = -1,
                     const BeliefState* belief = nullptr) const {
    static constexpr char kLetter[] = {'F', 'B', 'M', 'S'};
    std::ostringstream os;
    for (int row = kMsBoardSize - 1; row >= 0; --row) {
      os << row << ' ';
      for (int col = 0; col < kMsBoardSize; ++col) {
        const int sq = MiniStrategoState::square(row, col);
        const int owner = s.owner_at(sq);
        char c = '.';
        if (owner >= 0) {
          const int i = s.index_at(sq);
          const int id = s.pieces[owner][i].identity;
          const bool hidden = viewpoint >= 0 && owner != viewpoint &&
                              !(belief && belief->is_resolved(i));
          c = hidden ? '?' : kLetter[id];
          if (owner == 1) c = static_cast<char>(std::tolower(c));
        }
        os << c;
      }
      os << '\n';
    }
    os << "  01234  ply " << s.ply << ", to move " << int(s.to_move) << '\n';
    return os.str();
  }

 private:
  enum class Combat { kAttackerWins, kDefenderWins, kBothDie };

  static Combat resolve_combat(int att, int def) {
    if (def == kFlag) return Combat::kAttackerWins;
    if (att == def) return Combat::kBothDie;
    if (def == kBomb) {
      return att == kMiner ? Combat::kAttackerWins : Combat::kDefenderWins;
    }
    // Soldier vs Miner or Miner vs Soldier.
    return att == kSoldier ? Combat::kAttackerWins : Combat::kDefenderWins;
  }

  static int target(int from, int dir) {
    const int row = from / kMsBoardSize, col = from % kMsBoardSize;
    switch (dir) {
      case 0: return row + 1 < kMsBoardSize ? from + kMsBoardSize : -1;
      case 1: return row > 0 ? from - kMsBoardSize : -1;
      case 2: return col + 1 < kMsBoardSize ? from + 1 : -1;
      default: return col > 0 ? from - 1 : -1;
    }
  }

  bool has_move(const MiniStrategoState& s, PlayerId p) const {
    for (const MsPiece& pc : s.pieces[p]) {
      if (pc.square < 0 || pc.identity == kFlag || pc.identity == kBomb) continue;
      for (int d = 0; d < kDirections; ++d) {
        const int to = target(pc.square, d);
        if (to >= 0 && s.owner_at(to) != p) return true;
      }
    }
    return false;
  }

  MiniStrategoConfig config_;
};

static_assert(GameModel<MiniStratego>);

}  // namespace beliefsg

#endif  // BELIEFSG_GAMES_MINI_STRATEGO_HPP_
