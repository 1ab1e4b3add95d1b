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

#ifndef BELIEFSG_TESTS_SUPPORT_HPP_
#define BELIEFSG_TESTS_SUPPORT_HPP_

// Test-only helpers: a random instance generator and brute-force oracles
// that share no code with the library's propagation or enumeration.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "beliefsg/belief.hpp"
#include "beliefsg/rng.hpp"

namespace beliefsg::testing {

inline BeliefState make_belief(int num_pieces, std::vector<std::string> labels,
                               std::vector<CountBounds> bounds) {
  BeliefState b;
  const int t = b.add_type({"t", std::move(labels)}, std::move(bounds));
  for (int i = 0; i < num_pieces; ++i) b.add_piece(t);
  return b;
}

struct Instance {
  BeliefState belief;  // raw domains, not yet propagated
  std::vector<int> planted;  // the assignment the instance was built around
};

// 3..8 pieces, 2..4 identities. Bounds are exact (counts of a planted
// assignment) or loosened into intervals; each domain holds the planted
// value plus every other value with probability 1/2. With `plant` false the
// planted value is not forced into domains, so instances may be infeasible.
inline Instance random_instance(Rng& rng, bool plant = true) {
  const int n = 3 + uniform_index(rng, 6);
  const int k = 2 + uniform_index(rng, 3);
  std::vector<int> truth(n);
  std::vector<int> count(k, 0);
  for (int i = 0; i < n; ++i) ++count[truth[i] = uniform_index(rng, k)];
  const bool exact = uniform_index(rng, 2) == 0;
  std::vector<CountBounds> bounds(k);
  std::vector<std::string> labels;
  for (int v = 0; v < k; ++v) {
    labels.push_back(std::string(1, static_cast<char>('a' + v)));
    if (exact) {
      bounds[v] = {count[v], count[v]};
    } else {
      bounds[v] = {std::max(0, count[v] - uniform_index(rng, 2)),
                   count[v] + uniform_index(rng, 3)};
    }
  }
  Instance inst{make_belief(n, labels, bounds), truth};
  for (int i = 0; i < n; ++i) {
    IdentityMask m = plant ? bit(truth[i]) : 0;
    for (int v = 0; v < k; ++v) {
      if (uniform_index(rng, 2) == 0) m |= bit(v);
    }
    if (m == 0) m = bit(uniform_index(rng, k));
    inst.belief.set_domain(i, m);
  }
  return inst;
}

// Every complete assignment of one type's pieces, by odometer over k^n,
// kept iff it respects the domains and the count bounds.
inline std::vector<std::vector<int>> brute_force_support(const BeliefState& b, int t) {
  const auto& pieces = b.pieces_of(t);
  const int n = static_cast<int>(pieces.size());
  const int k = b.num_identities(t);
  std::vector<std::vector<int>> out;
  std::vector<int> a(n, 0);
  while (true) {
    bool ok = true;
    std::vector<int> count(k, 0);
    for (int i = 0; i < n && ok; ++i) {
      ok = (b.domain(pieces[i]) >> a[i]) & 1u;
      ++count[a[i]];
    }
    for (int v = 0; v < k && ok; ++v) {
      ok = count[v] >= b.bounds(t)[v].lb && count[v] <= b.bounds(t)[v].ub;
    }
    if (ok) out.push_back(a);
    int i = n - 1;
    while (i >= 0 && ++a[i] == k) a[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

// Per-piece solution frequencies over the uniform distribution on solutions.
inline std::vector<std::vector<double>> brute_force_marginals(const BeliefState& b, int t) {
  const auto sols = brute_force_support(b, t);
  const int n = static_cast<int>(b.pieces_of(t).size());
  std::vector<std::vector<double>> m(n, std::vector<double>(b.num_identities(t), 0.0));
  for (const auto& s : sols) {
    for (int i = 0; i < n; ++i) m[i][s[i]] += 1.0 / sols.size();
  }
  return m;
}

// Union of the values each piece takes across the solutions.
inline std::vector<IdentityMask> brute_force_domains(const BeliefState& b, int t) {
  std::vector<IdentityMask> d(b.pieces_of(t).size(), 0);
  for (const auto& s : brute_force_support(b, t)) {
    for (std::size_t i = 0; i < s.size(); ++i) d[i] |= bit(s[i]);
  }
  return d;
}

inline IdentityMask mask_of(std::initializer_list<int> ids) {
  IdentityMask m = 0;
  for (int v : ids) m |= bit(v);
  return m;
}

}  // namespace beliefsg::testing

#endif  // BELIEFSG_TESTS_SUPPORT_HPP_
