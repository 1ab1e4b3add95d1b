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

// Restricting, propagating and estimating marginals on a small belief.

#include <iomanip>
#include <iostream>

#include "beliefsg/bp.hpp"
#include "beliefsg/determinizer.hpp"
#include "beliefsg/serialize.hpp"

int main() {
  using namespace beliefsg;

  BeliefState b;
  const int t = b.add_type({"piece", {"Flag", "Bomb", "Miner", "Soldier"}},
                           {{1, 1}, {1, 1}, {1, 1}, {2, 2}});
  for (int i = 0; i < 5; ++i) b.add_piece(t);

  const IdentityMask movable = bit(2) | bit(3);
  b = restrict_domain(b, 0, movable);
  b = restrict_domain(b, 1, movable);
  b = restrict_domain(b, 2, movable);
  std::cout << "three pieces have moved:\n" << belief_to_text(b) << '\n';

  const auto bp = run_bp(build_graph(b, t));
  const auto exact = marginals_exact(b, t);
  std::cout << std::fixed << std::setprecision(3);
  for (PieceId p = 0; p < b.num_pieces(); ++p) {
    std::cout << "piece " << p << "  bp:";
    for (double x : bp.marginals.of(p)) std::cout << ' ' << x;
    std::cout << "   exact:";
    for (double x : exact.of(p)) std::cout << ' ' << x;
    std::cout << '\n';
  }
  std::cout << "bp converged=" << bp.converged << " after " << bp.iterations
            << " iterations\n\n";

  const auto det = sample_bp_guided(b, BpConfig{}, 42);
  std::cout << "one determinization:";
  for (int v : det.assignment) std::cout << ' ' << b.type(t).identities[v];
  std::cout << '\n';
  return 0;
}
