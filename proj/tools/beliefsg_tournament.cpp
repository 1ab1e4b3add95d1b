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

// Round-robin tournament runner.
//
//   beliefsg_tournament --game goofspiel --agents random,pmc-c,duct-c \
//       --matches 200 --seed 7 --swap-sides --output out.json

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "beliefsg/tournament.hpp"
#include "beliefsg/transcript.hpp"

namespace {

constexpr int kConfigError = 2;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace beliefsg;

  CLI::App app{"Run a round-robin tournament between belief-based agents."};
  TournamentConfig config;
  std::string agents = "random,pmc-c,pmc-p,duct-c,duct-p";
  std::string output;
  std::string format = "json";
  std::string transcripts;
  bool smoke = false;
  bool quiet = false;
  config.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  app.add_option("--game", config.game, "mini-stratego | goofspiel")
      ->check(CLI::IsMember({"mini-stratego", "goofspiel"}));
  app.add_option("--agents", agents, "comma-separated agent specs");
  app.add_option("--matches", config.matches, "matches per agent pair");
  app.add_option("--seed", config.seed, "master seed");
  app.add_option("--determinizations", config.base.determinizations,
                 "determinizations per move");
  app.add_option("--simulations", config.base.simulations,
                 "PMC playouts per action / DUCT iterations per tree");
  app.add_option("--exploration", config.base.exploration, "UCT exploration constant");
  app.add_flag("--swap-sides,!--no-swap-sides", config.swap_sides,
               "alternate seats between matches of a pair");
  app.add_option("--output", output, "output path (stdout if omitted)");
  app.add_option("--format", format, "json | csv | text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--bp-damping", config.base.bp.damping, "BP damping in [0,1)");
  app.add_option("--bp-max-iters", config.base.bp.max_iterations, "BP iteration cap");
  app.add_option("--bp-epsilon", config.base.bp.convergence_epsilon,
                 "BP convergence threshold");
  app.add_option("--threads", config.threads, "worker threads");
  app.add_option("--transcripts", transcripts, "write line-delimited JSON transcripts here");
  app.add_flag("--timings", config.record_timings, "include wall-clock time per match");
  app.add_flag("--smoke", smoke, "quick preset: 50 matches, 200 simulations");
  app.add_flag("--quiet", quiet, "no progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  if (smoke) {
    config.matches = 50;
    config.base.simulations = 200;
  }
  config.agents = split_csv(agents);
  if (!quiet) config.progress = &std::cerr;

  ReportFormat fmt = ReportFormat::Json;
  if (format == "csv") fmt = ReportFormat::Csv;
  if (format == "text") fmt = ReportFormat::Text;

  TournamentResult result;
  try {
    config.validate();
    result = run_tournament(config);
  } catch (const InvalidConfig& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  std::cerr << matrix_to_text(result.matrix, config.game);
  if (result.errors > 0) std::cerr << result.errors << " match(es) failed\n";

  try {
    const std::string body = report(config, result, fmt);
    if (output.empty()) {
      std::cout << body;
    } else {
      std::ofstream out(output, std::ios::binary);
      if (!out) throw ReportError("cannot open " + output);
      out << body;
    }
    if (!transcripts.empty()) {
      std::ofstream tout(transcripts, std::ios::binary);
      if (!tout) throw ReportError("cannot open " + transcripts);
      for (const auto& m : result.matches) write_transcript(tout, m);
    }
  } catch (const ReportError& e) {
    std::cerr << "report error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
