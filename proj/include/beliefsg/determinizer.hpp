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

#ifndef BELIEFSG_DETERMINIZER_HPP_
#define BELIEFSG_DETERMINIZER_HPP_

// Sampling complete identity assignments from a belief.
//
//  * sample_uniform: random variable order, uniformly chosen values,
//    propagation after every choice, chronological backtracking. This is
//    value-uniform, not solution-uniform; RejectionCorrected fixes that at
//    the cost of extra work and is meant for tests.
//  * sample_bp_guided: repeatedly runs BP (warm-started), commits the most
//    confident unresolved piece to a value drawn from its marginal.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "beliefsg/belief.hpp"
#include "beliefsg/bp.hpp"
#include "beliefsg/rng.hpp"

namespace beliefsg {

enum class SamplerKind { ConstraintUniform, BpGuided };

inline std::string_view to_string(SamplerKind k) {
  return k == SamplerKind::ConstraintUniform ? "constraint" : "bp";
}

enum class UniformMode { ValueUniform, RejectionCorrected };

// One identity index per piece of the belief (resolved pieces included).
struct Determinization {
  std::vector<int> assignment;
  friend bool operator==(const Determinization&,
                         const Determinization&) = default;
};

struct SamplerStats {
  int bp_runs = 0;
  int resamples = 0;   // BP-sampled values rejected by propagation
  int fallbacks = 0;   // BP sampling handed over to sample_uniform
  int backtracks = 0;
  int rejections = 0;  // RejectionCorrected proposals discarded
};

namespace detail {

inline Determinization read_assignment(const BeliefState& b) {
  Determinization d;
  d.assignment.resize(b.num_pieces());
  for (PieceId p = 0; p < b.num_pieces(); ++p) {
    d.assignment[p] = b.resolved_identity(p);
  }
  return d;
}

inline std::vector<PieceId> shuffled_pieces(int n, Rng& rng) {
  std::vector<PieceId> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::swap(order[i], order[uniform_index(rng, i + 1)]);
  }
  return order;
}

inline int pick_bit(IdentityMask m, Rng& rng) {
  int idx = uniform_index(rng, popcount(m));
  while (idx-- > 0) m &= m - 1;
  return lowest_identity(m);
}

inline bool backtrack(BeliefState& b, const std::vector<PieceId>& order,
                      std::size_t i, Rng& rng, SamplerStats& stats) {
  while (i < order.size() && b.is_resolved(order[i])) ++i;
  if (i == order.size()) return true;
  const PieceId p = order[i];
  IdentityMask candidates = b.domain(p);
  while (candidates) {
    const int v = pick_bit(candidates, rng);
    BeliefState next = b;
    if (next.try_assign(p, v) && backtrack(next, order, i + 1, rng, stats)) {
      b = std::move(next);
      return true;
    }
    candidates &= ~bit(v);
    ++stats.backtracks;
  }
  return false;
}

inline Determinization sample_rejection_corrected(const BeliefState& belief,
                                                  Rng& rng,
                                                  SamplerStats& stats) {
  // Upper bound on prod(feasible choices) over any order.
  double log_bound = 0.0;
  for (PieceId p = 0; p < belief.num_pieces(); ++p) {
    log_bound += std::log(static_cast<double>(popcount(belief.domain(p))));
  }
  constexpr int kMaxAttempts = 1'000'000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    BeliefState b = belief;
    double log_weight = 0.0;
    for (PieceId p : shuffled_pieces(b.num_pieces(), rng)) {
      if (b.is_resolved(p)) continue;
      IdentityMask feasible = 0;
      IdentityMask m = b.domain(p);
      while (m) {
        const int v = lowest_identity(m);
        m &= m - 1;
        BeliefState probe = b;
        if (probe.try_assign(p, v)) feasible |= bit(v);
      }
      log_weight += std::log(static_cast<double>(popcount(feasible)));
      const bool ok = b.try_assign(p, pick_bit(feasible, rng));
      if (!ok) throw Contradiction("feasible value failed to propagate");
    }
    if (uniform_real(rng) < std::exp(log_weight - log_bound)) {
      return read_assignment(b);
    }
    ++stats.rejections;
  }
  throw std::runtime_error("rejection sampler exhausted its attempts");
}

}  // namespace detail

inline Determinization sample_uniform(const BeliefState& belief,
                                      std::uint64_t seed,
                                      UniformMode mode = UniformMode::ValueUniform,
                                      SamplerStats* stats = nullptr) {
  SamplerStats local;
  SamplerStats& st = stats ? *stats : local;
  BeliefState b = belief;
  if (!b.try_propagate()) throw Contradiction("cannot sample an infeasible belief");
  Rng rng(seed);
  if (mode == UniformMode::RejectionCorrected) {
    return detail::sample_rejection_corrected(b, rng, st);
  }
  const auto order = detail::shuffled_pieces(b.num_pieces(), rng);
  if (!detail::backtrack(b, order, 0, rng, st)) {
    throw Contradiction("no assignment found for a feasible belief");
  }
  return detail::read_assignment(b);
}

inline Determinization sample_bp_guided(const BeliefState& belief,
                                        const BpConfig& config,
                                        std::uint64_t seed,
                                        SamplerStats* stats = nullptr) {
  SamplerStats local;
  SamplerStats& st = stats ? *stats : local;
  BeliefState b = belief;
  if (!b.try_propagate()) throw Contradiction("cannot sample an infeasible belief");
  Rng rng(seed);

  const int num_types = b.num_types();
  std::vector<MessageTable> warm(num_types);
  std::vector<Marginals> marginals(num_types);
  std::vector<char> dirty(num_types, 1);

  auto fallback = [&]() {
    ++st.fallbacks;
    return sample_uniform(b, derive_seed(seed, {0xFA11BAC4ULL}),
                          UniformMode::ValueUniform, &st);
  };

  while (!b.all_resolved()) {
    try {
      for (int t = 0; t < num_types; ++t) {
        if (!dirty[t]) continue;
        const FactorGraph g = build_graph(b, t);
        BpResult r = run_bp(g, config, &warm[t]);
        ++st.bp_runs;
        warm[t] = std::move(r.messages);
        marginals[t] = std::move(r.marginals);
        dirty[t] = 0;
      }
    } catch (const Contradiction&) {
      return fallback();
    }

    // Most confident unresolved piece; ties go to the lowest id.
    PieceId chosen = -1;
    double best = -1.0;
    const std::vector<double>* probs = nullptr;
    for (int t = 0; t < num_types; ++t) {
      const Marginals& m = marginals[t];
      for (std::size_t i = 0; i < m.pieces.size(); ++i) {
        const PieceId p = m.pieces[i];
        if (b.is_resolved(p)) continue;
        const auto& row = m.probabilities[i];
        const double conf = *std::max_element(row.begin(), row.end());
        if (conf > best || (conf == best && p < chosen)) {
          best = conf;
          chosen = p;
          probs = &row;
        }
      }
    }

    std::vector<double> weights = *probs;
    for (std::size_t v = 0; v < weights.size(); ++v) {
      if ((b.domain(chosen) & bit(static_cast<int>(v))) == 0) weights[v] = 0.0;
    }
    bool committed = false;
    while (!committed) {
      const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
      if (!(total > 0.0)) return fallback();
      double u = uniform_real(rng) * total;
      int v = 0;
      for (; v + 1 < static_cast<int>(weights.size()); ++v) {
        if (weights[v] > 0.0 && u < weights[v]) break;
        u -= weights[v];
      }
      while (weights[v] == 0.0) --v;  // rounding at the upper end
      BeliefState next = b;
      if (next.try_assign(chosen, v)) {
        b = std::move(next);
        committed = true;
      } else {
        weights[v] = 0.0;
        ++st.resamples;
      }
    }
    dirty[b.type_of(chosen)] = 1;
  }
  return detail::read_assignment(b);
}

inline Determinization sample(SamplerKind kind, const BeliefState& belief,
                              const BpConfig& config, std::uint64_t seed,
                              SamplerStats* stats = nullptr) {
  return kind == SamplerKind::ConstraintUniform
             ? sample_uniform(belief, seed, UniformMode::ValueUniform, stats)
             : sample_bp_guided(belief, config, seed, stats);
}

}  // namespace beliefsg

#endif  // BELIEFSG_DETERMINIZER_HPP_
