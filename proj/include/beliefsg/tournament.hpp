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

#ifndef BELIEFSG_TOURNAMENT_HPP_
#define BELIEFSG_TOURNAMENT_HPP_

// Round-robin tournaments between agents and the win-rate matrix they
// produce. Every unordered agent pair plays `matches` games; with side
// swapping, odd-numbered matches put the column agent in seat 0. A cell is
// the mean return of the row agent over the pair's shared match set, so
// matrix[a][b] + matrix[b][a] = 1.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "beliefsg/agents.hpp"
#include "beliefsg/game.hpp"
#include "beliefsg/games/goofspiel.hpp"
#include "beliefsg/games/mini_stratego.hpp"
#include "beliefsg/rng.hpp"
#include "json.hpp"

namespace beliefsg {

inline constexpr int kSchemaVersion = 1;

struct TournamentConfig {
  std::string game = "goofspiel";
  std::vector<std::string> agents;
  int matches = 200;  // per agent pair
  std::uint64_t seed = 1;
  bool swap_sides = true;
  // Shared search budget; kind and sampler come from each agent's spec.
  AgentConfig base;
  std::map<std::string, AgentConfig> overrides;  // keyed by agent spec
  int threads = 1;
  bool record_timings = false;
  std::ostream* progress = nullptr;

  void validate() const {
    if (game != "goofspiel" && game != "mini-stratego") {
      throw InvalidConfig("unknown game '" + game + "'");
    }
    if (agents.size() < 2) throw InvalidConfig("need at least two agents");
    if (matches < 1) throw InvalidConfig("need at least one match per pair");
    for (const auto& a : agents) {
      try {
        agent_config(a).validate();
      } catch (const std::invalid_argument& e) {
        throw InvalidConfig(e.what());
      }
    }
    for (std::size_t i = 0; i < agents.size(); ++i) {
      for (std::size_t j = i + 1; j < agents.size(); ++j) {
        if (agents[i] == agents[j]) throw InvalidConfig("duplicate agent " + agents[i]);
      }
    }
  }

  AgentConfig agent_config(const std::string& spec) const {
    if (auto it = overrides.find(spec); it != overrides.end()) return it->second;
    AgentConfig c = base;
    const AgentConfig parsed = parse_agent_spec(spec);
    c.kind = parsed.kind;
    c.sampler = parsed.sampler;
    return c;
  }
};

struct MatchRecord {
  std::string game;
  std::uint64_t seed = 0;
  std::array<std::string, kNumPlayers> seats;
  std::vector<JointAction> actions;
  Returns returns{0.0, 0.0};
  double seconds = 0.0;
  std::string error;  // non-empty if the match aborted

  bool ok() const { return error.empty(); }
};

struct Cell {
  double mean = 0.0;
  int count = 0;
  double stderr_ = 0.0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct WinRateMatrix {
  std::vector<std::string> agents;
  std::vector<std::vector<std::optional<Cell>>> cells;  // [row][col]
  friend bool operator==(const WinRateMatrix&, const WinRateMatrix&) = default;

  std::optional<Cell> at(const std::string& row, const std::string& col) const {
    const auto r = std::find(agents.begin(), agents.end(), row) - agents.begin();
    const auto c = std::find(agents.begin(), agents.end(), col) - agents.begin();
    if (r >= static_cast<long>(agents.size()) || c >= static_cast<long>(agents.size())) {
      throw std::out_of_range("agent not in matrix");
    }
    return cells[r][c];
  }
};

struct TournamentResult {
  WinRateMatrix matrix;
  std::vector<MatchRecord> matches;
  int errors = 0;
};

template <GameModel G>
MatchRecord run_match(const G& game, const std::array<AgentConfig, kNumPlayers>& seats,
                      std::uint64_t seed) {
  MatchRecord rec;
  rec.game = std::string(game.name());
  rec.seed = seed;
  for (PlayerId p = 0; p < kNumPlayers; ++p) rec.seats[p] = agent_spec(seats[p]);
  const auto start = std::chrono::steady_clock::now();
  auto state = initial_state(game, seed);
  while (!is_terminal(game, state)) {
    JointAction joint{kNoAction, kNoAction};
    for (PlayerId p = 0; p < kNumPlayers; ++p) {
      if (!game.is_mover(state.truth, p)) continue;
      const std::uint64_t move_seed = derive_seed(
          seed, {static_cast<std::uint64_t>(state.move_count), static_cast<std::uint64_t>(p)});
      joint[p] = select_action(game, state, p, seats[p], move_seed);
    }
    state = apply(game, state, joint).state;
    rec.actions.push_back(joint);
  }
  rec.returns = returns(game, state);
  rec.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

namespace detail {

struct ScheduledMatch {
  int row = 0;  // agent in seat 0
  int col = 0;  // agent in seat 1
  std::uint64_t seed = 0;
};

inline std::vector<ScheduledMatch> schedule(const TournamentConfig& c) {
  std::vector<ScheduledMatch> out;
  const int n = static_cast<int>(c.agents.size());
  std::uint64_t pair = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++pair) {
      for (int m = 0; m < c.matches; ++m) {
        const bool swapped = c.swap_sides && (m % 2 == 1);
        out.push_back({swapped ? j : i, swapped ? i : j,
                       derive_seed(c.seed, {pair, static_cast<std::uint64_t>(m)})});
      }
    }
  }
  return out;
}

}  // namespace detail

// Aggregates match records into the win-rate matrix. Cells are computed
// from integer half-point totals so that complementary cells sum to one.
inline WinRateMatrix aggregate(const std::vector<std::string>& agents,
                               const std::vector<MatchRecord>& matches) {
  const std::size_t n = agents.size();
  auto index = [&](const std::string& a) {
    return static_cast<std::size_t>(std::find(agents.begin(), agents.end(), a) -
                                    agents.begin());
  };
  std::vector<std::vector<std::vector<double>>> samples(
      n, std::vector<std::vector<double>>(n));
  for (const auto& m : matches) {
    if (!m.ok()) continue;
    const auto a = index(m.seats[0]), b = index(m.seats[1]);
    if (a >= n || b >= n) continue;
    samples[a][b].push_back(m.returns[0]);
    samples[b][a].push_back(m.returns[1]);
  }
  WinRateMatrix w;
  w.agents = agents;
  w.cells.assign(n, std::vector<std::optional<Cell>>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const auto& xs = samples[r][c];
      if (r == c || xs.empty()) continue;
      std::int64_t half_points = 0;
      for (double x : xs) half_points += std::llround(2.0 * x);
      const double count = static_cast<double>(xs.size());
      Cell cell;
      cell.count = static_cast<int>(xs.size());
      cell.mean = static_cast<double>(half_points) / (2.0 * count);
      if (r > c && w.cells[c][r]) cell.mean = 1.0 - w.cells[c][r]->mean;
      double ss = 0.0;
      for (double x : xs) ss += (x - cell.mean) * (x - cell.mean);
      cell.stderr_ = xs.size() > 1 ? std::sqrt(ss / (count - 1.0) / count) : 0.0;
      w.cells[r][c] = cell;
    }
  }
  return w;
}

template <GameModel G>
TournamentResult run_tournament(const G& game, const TournamentConfig& config) {
  config.validate();
  const auto plan = detail::schedule(config);
  std::vector<AgentConfig> agent_cfgs;
  for (const auto& a : config.agents) agent_cfgs.push_back(config.agent_config(a));

  TournamentResult result;
  result.matches.resize(plan.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mu;

  auto worker = [&]() {
    for (std::size_t i = next++; i < plan.size(); i = next++) {
      const auto& m = plan[i];
      MatchRecord rec;
      try {
        rec = run_match(game, {agent_cfgs[m.row], agent_cfgs[m.col]}, m.seed);
      } catch (const std::exception& e) {
        rec.game = std::string(game.name());
        rec.seed = m.seed;
        rec.seats = {config.agents[m.row], config.agents[m.col]};
        rec.error = e.what();
      }
      // Seats are reported under the tournament's own spelling.
      rec.seats = {config.agents[m.row], config.agents[m.col]};
      result.matches[i] = std::move(rec);
      const std::size_t finished = ++done;
      if (config.progress) {
        std::lock_guard<std::mutex> lock(progress_mu);
        const auto& r = result.matches[i];
        *config.progress << "[" << finished << "/" << plan.size() << "] "
                         << r.seats[0] << " vs " << r.seats[1] << ": "
                         << (r.ok() ? std::to_string(r.returns[0]) : "error " + r.error)
                         << '\n';
      }
    }
  };
  const int threads = std::max(1, config.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& m : result.matches) result.errors += !m.ok();
  result.matrix = aggregate(config.agents, result.matches);
  return result;
}

// Runs `fn` with the game named in a tournament config.
template <class Fn>
decltype(auto) with_game(const std::string& name, Fn&& fn) {
  if (name == "goofspiel") return fn(Goofspiel{});
  if (name == "mini-stratego") return fn(MiniStratego{});
  throw InvalidConfig("unknown game '" + name + "'");
}

inline TournamentResult run_tournament(const TournamentConfig& config) {
  config.validate();
  return with_game(config.game,
                   [&](const auto& game) { return run_tournament(game, config); });
}

// ---------------------------------------------------------------------------
// Reporting

class ReportError : public std::runtime_error {
 public:
  explicit ReportError(const std::string& what) : std::runtime_error(what) {}
};

inline nlohmann::json matrix_to_json(const WinRateMatrix& m) {
  nlohmann::json j;
  j["agents"] = m.agents;
  j["cells"] = nlohmann::json::array();
  for (const auto& row : m.cells) {
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& c : row) {
      if (c) {
        jr.push_back({{"mean", c->mean}, {"count", c->count}, {"stderr", c->stderr_}});
      } else {
        jr.push_back(nullptr);
      }
    }
    j["cells"].push_back(std::move(jr));
  }
  return j;
}

inline WinRateMatrix matrix_from_json(const nlohmann::json& j) {
  WinRateMatrix m;
  m.agents = j.at("agents").get<std::vector<std::string>>();
  for (const auto& jr : j.at("cells")) {
    std::vector<std::optional<Cell>> row;
    for (const auto& jc : jr) {
      if (jc.is_null()) {
        row.emplace_back();
      } else {
        row.push_back(Cell{jc.at("mean").get<double>(), jc.at("count").get<int>(),
                           jc.at("stderr").get<double>()});
      }
    }
    m.cells.push_back(std::move(row));
  }
  return m;
}

inline bool has_matches(const WinRateMatrix& m) {
  for (const auto& row : m.cells) {
    for (const auto& c : row) {
      if (c && c->count > 0) return true;
    }
  }
  return false;
}

inline nlohmann::json record_to_json(const MatchRecord& r, bool timings) {
  nlohmann::json j;
  j["game"] = r.game;
  j["seed"] = r.seed;
  j["seats"] = r.seats;
  nlohmann::json acts = nlohmann::json::array();
  for (const auto& a : r.actions) acts.push_back({a[0], a[1]});
  j["actions"] = std::move(acts);
  j["returns"] = r.returns;
  if (!r.ok()) j["error"] = r.error;
  if (timings) j["seconds"] = r.seconds;
  return j;
}

inline MatchRecord record_from_json(const nlohmann::json& j) {
  MatchRecord r;
  r.game = j.at("game").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.seats = j.at("seats").get<std::array<std::string, kNumPlayers>>();
  for (const auto& a : j.at("actions")) r.actions.push_back({a[0].get<int>(), a[1].get<int>()});
  r.returns = j.at("returns").get<Returns>();
  if (j.contains("error")) r.error = j["error"].get<std::string>();
  if (j.contains("seconds")) r.seconds = j["seconds"].get<double>();
  return r;
}

inline nlohmann::json result_to_json(const TournamentConfig& c, const TournamentResult& r) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["game"] = c.game;
  j["master_seed"] = c.seed;
  j["agents"] = c.agents;
  j["matches_per_pair"] = c.matches;
  j["swap_sides"] = c.swap_sides;
  j["determinizations"] = c.base.determinizations;
  j["simulations"] = c.base.simulations;
  j["exploration"] = c.base.exploration;
  j["bp"] = {{"damping", c.base.bp.damping},
             {"max_iterations", c.base.bp.max_iterations},
             {"convergence_epsilon", c.base.bp.convergence_epsilon}};
  j["errors"] = r.errors;
  j["matrix"] = matrix_to_json(r.matrix);
  j["records"] = nlohmann::json::array();
  for (const auto& m : r.matches) j["records"].push_back(record_to_json(m, c.record_timings));
  return j;
}

inline std::string format_percent(const std::optional<Cell>& c) {
  if (!c) return "--";
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << 100.0 * c->mean;
  return os.str();
}

inline std::string matrix_to_csv(const WinRateMatrix& m) {
  std::ostringstream os;
  os << "agent";
  for (const auto& a : m.agents) os << ',' << a;
  os << '\n';
  for (std::size_t r = 0; r < m.agents.size(); ++r) {
    os << m.agents[r];
    for (std::size_t c = 0; c < m.agents.size(); ++c) os << ',' << format_percent(m.cells[r][c]);
    os << '\n';
  }
  return os.str();
}

inline std::string matrix_to_text(const WinRateMatrix& m, const std::string& title) {
  std::size_t w = 7;
  for (const auto& a : m.agents) w = std::max(w, a.size() + 2);
  std::ostringstream os;
  os << title << " - win rate (%) of row agent against column agent\n";
  os << std::setw(static_cast<int>(w)) << std::left << "";
  for (const auto& a : m.agents) os << std::setw(static_cast<int>(w)) << std::right << a;
  os << '\n';
  for (std::size_t r = 0; r < m.agents.size(); ++r) {
    os << std::setw(static_cast<int>(w)) << std::left << m.agents[r];
    for (std::size_t c = 0; c < m.agents.size(); ++c) {
      os << std::setw(static_cast<int>(w)) << std::right << format_percent(m.cells[r][c]);
    }
    os << '\n';
  }
  return os.str();
}

enum class ReportFormat { Json, Csv, Text };

inline std::string report(const TournamentConfig& c, const TournamentResult& r,
                          ReportFormat format) {
  if (!has_matches(r.matrix)) throw ReportError("no completed matches to report");
  switch (format) {
    case ReportFormat::Json:
      return result_to_json(c, r).dump(2) + "\n";
    case ReportFormat::Csv:
      return matrix_to_csv(r.matrix);
    case ReportFormat::Text:
      return matrix_to_text(r.matrix, c.game);
  }
  return {};
}

}  // namespace beliefsg

#endif  // BELIEFSG_TOURNAMENT_HPP_
