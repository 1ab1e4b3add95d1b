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

#ifndef BELIEFSG_ORACLE_HPP_
#define BELIEFSG_ORACLE_HPP_

// Exhaustive enumeration of the support of one type's CSP. Exponential;
// intended as a reference for tests and for tiny instances.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "beliefsg/belief.hpp"

namespace beliefsg {

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what)
      : std::runtime_error(what) {}
};

inline constexpr std::int64_t kDefaultEnumerationBudget = 1'000'000;

// All complete assignments of the pieces of `type_id` (in pieces_of order)
// that respect every domain and count bound, in lexicographic order of
// identity indices.
inline std::vector<std::vector<int>> enumerate_support(
    const BeliefState& belief, int type_id,
    std::int64_t budget = kDefaultEnumerationBudget) {
  const auto& pieces = belief.pieces_of(type_id);
  const auto& bounds = belief.bounds(type_id);
  const int n = static_cast<int>(pieces.size());
  const int k = belief.num_identities(type_id);

  std::vector<std::vector<int>> out;
  std::vector<int> current(n, -1);
  std::vector<int> count(k, 0);
  std::int64_t explored = 0;

  // Pieces still needed to lift every identity to its lower bound.
  auto deficit = [&] {
    int d = 0;
    for (int v = 0; v < k; ++v) d += std::max(0, bounds[v].lb - count[v]);
    return d;
  };

  auto recurse = [&](auto&& self, int i) -> void {
    if (++explored > budget) {
      throw BudgetExceeded("support enumeration exceeded " +
                           std::to_string(budget) + " nodes");
    }
    if (deficit() > n - i) return;
    if (i == n) {
      out.push_back(current);
      return;
    }
    IdentityMask m = belief.domain(pieces[i]);
    while (m) {
      const int v = lowest_identity(m);
      m &= m - 1;
      if (count[v] >= bounds[v].ub) continue;
      ++count[v];
      current[i] = v;
      self(self, i + 1);
      --count[v];
    }
  };
  recurse(recurse, 0);
  return out;
}

// Per-piece union of the values used by the support ("GAC domains").
inline std::vector<IdentityMask> support_domains(
    const BeliefState& belief, int type_id,
    std::int64_t budget = kDefaultEnumerationBudget) {
  const auto solutions = enumerate_support(belief, type_id, budget);
  std::vector<IdentityMask> doms(belief.pieces_of(type_id).size(), 0);
  for (const auto& s : solutions) {
    for (std::size_t i = 0; i < s.size(); ++i) doms[i] |= bit(s[i]);
  }
  return doms;
}

}  // namespace beliefsg

#endif  // BELIEFSG_ORACLE_HPP_
