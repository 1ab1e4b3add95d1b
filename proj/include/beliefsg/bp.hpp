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

#ifndef BELIEFSG_BP_HPP_
#define BELIEFSG_BP_HPP_

// Loopy belief propagation over one piece type's cardinality constraint.
//
// The constraint is decomposed into one count factor per identity v, whose
// neighbours are the unresolved pieces with v in their domain. Each edge
// carries two-entry messages over the indicator "piece takes v". A count
// factor is a sum constraint over indicators, so its outgoing messages are
// computed from the distribution of the number of other neighbours taking v
// (a convolution of Bernoulli messages).

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "beliefsg/belief.hpp"
#include "beliefsg/oracle.hpp"

namespace beliefsg {

// message[0] is the weight of "does not take v", message[1] of "takes v".
using Message = std::array<double, 2>;

class DegenerateMessage : public Contradiction {
 public:
  explicit DegenerateMessage(const std::string& what) : Contradiction(what) {}
};

struct BpConfig {
  double damping = 0.5;
  int max_iterations = 100;
  double convergence_epsilon = 1e-6;
  // Per-iteration max message delta is written here when non-null.
  std::ostream* trace = nullptr;

  void validate() const {
    if (!(damping >= 0.0 && damping < 1.0)) {
      throw std::invalid_argument("damping must lie in [0, 1)");
    }
    if (max_iterations < 1) {
      throw std::invalid_argument("max_iterations must be >= 1");
    }
    if (!(convergence_epsilon > 0.0)) {
      throw std::invalid_argument("convergence_epsilon must be > 0");
    }
  }
};

struct FactorGraph {
  struct Edge {
    int variable;
    int factor;
  };

  int type_id = 0;
  int num_identities = 0;
  std::vector<PieceId> variables;
  std::vector<IdentityMask> domains;  // per variable
  std::vector<int> factor_identity;
  std::vector<CountBounds> factor_bounds;  // after folding resolved pieces
  std::vector<Edge> edges;
  std::vector<std::vector<int>> variable_edges;  // increasing identity
  std::vector<std::vector<int>> factor_edges;
  // Resolved pieces of the type, reported as point masses.
  std::vector<PieceId> resolved;
  std::vector<int> resolved_identity;

  int num_variables() const { return static_cast<int>(variables.size()); }
  int num_factors() const { return static_cast<int>(factor_identity.size()); }

  // Builds the graph for explicit variables. One factor per identity that
  // at least one variable can take; `bounds` are used as given.
  static FactorGraph from_domains(int num_identities,
                                  std::vector<PieceId> variables,
                                  std::vector<IdentityMask> domains,
                                  const std::vector<CountBounds>& bounds) {
    FactorGraph g;
    g.num_identities = num_identities;
    g.variables = std::move(variables);
    g.domains = std::move(domains);
    std::vector<int> factor_of(num_identities, -1);
    for (int v = 0; v < num_identities; ++v) {
      const bool used = std::any_of(g.domains.begin(), g.domains.end(),
                                    [v](IdentityMask m) { return m & bit(v); });
      if (!used) continue;
      factor_of[v] = g.num_factors();
      g.factor_identity.push_back(v);
      g.factor_bounds.push_back(bounds[v]);
    }
    g.variable_edges.resize(g.variables.size());
    g.factor_edges.resize(g.factor_identity.size());
    for (int x = 0; x < g.num_variables(); ++x) {
      IdentityMask m = g.domains[x];
      while (m) {
        const int v = lowest_identity(m);
        m &= m - 1;
        const int e = static_cast<int>(g.edges.size());
        g.edges.push_back({x, factor_of[v]});
        g.variable_edges[x].push_back(e);
        g.factor_edges[factor_of[v]].push_back(e);
      }
    }
    return g;
  }
};

// Factor graph of one type. Resolved pieces are folded into the bounds:
// each committed identity lowers lb and ub of that identity by one.
inline FactorGraph build_graph(const BeliefState& belief, int type_id) {
  const int k = belief.num_identities(type_id);
  std::vector<CountBounds> adjusted = belief.bounds(type_id);
  std::vector<PieceId> vars, resolved;
  std::vector<IdentityMask> doms;
  std::vector<int> resolved_id;
  for (PieceId p : belief.pieces_of(type_id)) {
    const IdentityMask m = belief.domain(p);
    if (m == 0) throw Contradiction("empty domain in build_graph");
    if (popcount(m) == 1) {
      const int v = lowest_identity(m);
      resolved.push_back(p);
      resolved_id.push_back(v);
      adjusted[v].lb = std::max(0, adjusted[v].lb - 1);
      adjusted[v].ub -= 1;
      if (adjusted[v].ub < 0) throw Contradiction("identity over-committed");
    } else {
      vars.push_back(p);
      doms.push_back(m);
    }
  }
  FactorGraph g =
      FactorGraph::from_domains(k, std::move(vars), std::move(doms), adjusted);
  g.type_id = type_id;
  g.resolved = std::move(resolved);
  g.resolved_identity = std::move(resolved_id);
  return g;
}

namespace detail {

inline void normalize_or_throw(Message& m, const char* where) {
  const double s = m[0] + m[1];
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw DegenerateMessage(std::string("degenerate ") + where + " message");
  }
  m[0] /= s;
  m[1] /= s;
}

// Rescales a count distribution so its largest entry is 1.
inline void rescale(std::vector<double>& dist) {
  const double mx = *std::max_element(dist.begin(), dist.end());
  if (mx > 0.0) {
    for (double& x : dist) x /= mx;
  }
}

inline void convolve_into(const std::vector<double>& dist, const Message& m,
                          std::vector<double>& out) {
  const std::size_t cap = dist.size();
  out.assign(cap, 0.0);
  for (std::size_t c = 0; c < cap; ++c) {
    out[c] += dist[c] * m[0];
    if (c + 1 < cap) out[c + 1] += dist[c] * m[1];
  }
  rescale(out);
}

inline Message message_from_counts(const std::vector<double>& others,
                                   CountBounds b) {
  Message out{0.0, 0.0};
  for (int c = 0; c < static_cast<int>(others.size()); ++c) {
    if (c >= b.lb && c <= b.ub) out[0] += others[c];
    if (c + 1 >= b.lb && c + 1 <= b.ub) out[1] += others[c];
  }
  return out;
}

}  // namespace detail

// Message from a count factor to one neighbour, given the messages of all
// the factor's other neighbours.
inline Message factor_message(std::span<const Message> others,
                              CountBounds bounds) {
  const std::size_t cap = static_cast<std::size_t>(std::max(bounds.ub, 0)) + 1;
  std::vector<double> dist(cap, 0.0), next;
  dist[0] = 1.0;
  for (const Message& m : others) {
    detail::convolve_into(dist, m, next);
    dist.swap(next);
  }
  Message out = detail::message_from_counts(dist, bounds);
  detail::normalize_or_throw(out, "factor");
  return out;
}

// All outgoing messages of one count factor. Prefix and suffix count
// distributions are shared, so the cost is O(degree * (ub+1)^2).
inline void factor_messages(std::span<const Message> incoming,
                            CountBounds bounds, std::span<Message> out) {
  const std::size_t d = incoming.size();
  const std::size_t cap = static_cast<std::size_t>(std::max(bounds.ub, 0)) + 1;
  std::vector<std::vector<double>> suffix(d + 1);
  suffix[d].assign(cap, 0.0);
  suffix[d][0] = 1.0;
  for (std::size_t i = d; i-- > 0;) {
    detail::convolve_into(suffix[i + 1], incoming[i], suffix[i]);
  }
  std::vector<double> prefix(cap, 0.0), next, others(cap);
  prefix[0] = 1.0;
  for (std::size_t j = 0; j < d; ++j) {
    const auto& suf = suffix[j + 1];
    std::fill(others.begin(), others.end(), 0.0);
    for (std::size_t a = 0; a < cap; ++a) {
      if (prefix[a] == 0.0) continue;
      for (std::size_t b = 0; a + b < cap; ++b) {
        others[a + b] += prefix[a] * suf[b];
      }
    }
    out[j] = detail::message_from_counts(others, bounds);
    detail::normalize_or_throw(out[j], "factor");
    detail::convolve_into(prefix, incoming[j], next);
    prefix.swap(next);
  }
}

// Message from a variable to the factor of identity `target`, where
// `incoming[i]` is the message from the factor of the i-th domain value and
// `target` indexes into it. The categorical belief over the domain is
// projected onto the target's indicator.
inline Message variable_message(std::span<const Message> incoming,
                                std::size_t target) {
  double stay = 1.0;  // product of "not v" weights over w != target
  double take_other = 0.0;
  for (std::size_t u = 0; u < incoming.size(); ++u) {
    if (u == target) continue;
    double term = incoming[u][1];
    for (std::size_t w = 0; w < incoming.size(); ++w) {
      if (w != target && w != u) term *= incoming[w][0];
    }
    take_other += term;
    stay *= incoming[u][0];
  }
  Message out{take_other, stay};
  detail::normalize_or_throw(out, "variable");
  return out;
}

// All outgoing messages of one variable in O(|D|). Uses the semiring
// (P, Q) = (prod z, sum_u r_u prod_{w != u} z_w) with prefix/suffix folds.
inline void variable_messages(std::span<const Message> incoming,
                              std::span<Message> out) {
  const std::size_t k = incoming.size();
  struct Acc {
    double p, q;
  };
  auto combine = [](Acc a, Acc b) {
    return Acc{a.p * b.p, a.q * b.p + a.p * b.q};
  };
  std::vector<Acc> suffix(k + 1);
  suffix[k] = {1.0, 0.0};
  for (std::size_t i = k; i-- > 0;) {
    suffix[i] = combine({incoming[i][0], incoming[i][1]}, suffix[i + 1]);
  }
  Acc prefix{1.0, 0.0};
  for (std::size_t t = 0; t < k; ++t) {
    const Acc excl = combine(prefix, suffix[t + 1]);
    out[t] = {excl.q, excl.p};
    detail::normalize_or_throw(out[t], "variable");
    prefix = combine(prefix, {incoming[t][0], incoming[t][1]});
  }
}

// Messages of every (piece, identity) edge of one type, kept dense so a
// later graph over a subset of the pieces can warm-start from it.
struct MessageTable {
  int num_identities = 0;
  std::vector<Message> to_factor;
  std::vector<Message> to_variable;
  std::vector<char> present;

  int slot(PieceId p, int v) const { return p * num_identities + v; }
  bool has(PieceId p, int v) const {
    const int s = slot(p, v);
    return s >= 0 && s < static_cast<int>(present.size()) && present[s];
  }
  void put(PieceId p, int v, const Message& vf, const Message& fv) {
    const int s = slot(p, v);
    if (s >= static_cast<int>(present.size())) {
      to_factor.resize(s + 1);
      to_variable.resize(s + 1);
      present.resize(s + 1, 0);
    }
    to_factor[s] = vf;
    to_variable[s] = fv;
    present[s] = 1;
  }
};

struct Marginals {
  int type_id = 0;
  std::vector<PieceId> pieces;
  std::vector<std::vector<double>> probabilities;  // [piece][identity]

  const std::vector<double>& of(PieceId p) const {
    auto it = std::find(pieces.begin(), pieces.end(), p);
    if (it == pieces.end()) throw std::out_of_range("piece not in marginals");
    return probabilities[it - pieces.begin()];
  }
};

struct BpResult {
  Marginals marginals;
  MessageTable messages;
  bool converged = false;
  int iterations = 0;
};

namespace detail {

class BpRunner {
 public:
  BpRunner(const FactorGraph& g, const BpConfig& config)
      : g_(g), config_(config) {
    const std::size_t e = g.edges.size();
    v2f_.resize(e);
    f2v_.resize(e);
    scratch_in_.reserve(64);
    scratch_out_.reserve(64);
  }

  void init(const MessageTable* warm) {
    for (std::size_t e = 0; e < g_.edges.size(); ++e) {
      const PieceId p = g_.variables[g_.edges[e].variable];
      const int v = g_.factor_identity[g_.edges[e].factor];
      if (warm && warm->has(p, v)) {
        f2v_[e] = warm->to_variable[warm->slot(p, v)];
      } else {
        f2v_[e] = {0.5, 0.5};
      }
    }
    update_variables(0.0);
  }

  // Synchronous round. Returns the largest absolute message change.
  double round(double damping) {
    const double a = update_factors(damping);
    const double b = update_variables(damping);
    return std::max(a, b);
  }

  Marginals marginals() const {
    Marginals out;
    out.type_id = g_.type_id;
    for (int x = 0; x < g_.num_variables(); ++x) {
      std::vector<double> probs(g_.num_identities, 0.0);
      const auto& ve = g_.variable_edges[x];
      double total = 0.0;
      for (std::size_t i = 0; i < ve.size(); ++i) {
        double b = f2v_[ve[i]][1];
        for (std::size_t j = 0; j < ve.size(); ++j) {
          if (j != i) b *= f2v_[ve[j]][0];
        }
        probs[g_.factor_identity[g_.edges[ve[i]].factor]] = b;
        total += b;
      }
      if (!(total > 0.0)) {
        throw Contradiction("belief of piece " +
                            std::to_string(g_.variables[x]) + " is all-zero");
      }
      for (double& pr : probs) pr /= total;
      out.pieces.push_back(g_.variables[x]);
      out.probabilities.push_back(std::move(probs));
    }
    for (std::size_t r = 0; r < g_.resolved.size(); ++r) {
      std::vector<double> probs(g_.num_identities, 0.0);
      probs[g_.resolved_identity[r]] = 1.0;
      out.pieces.push_back(g_.resolved[r]);
      out.probabilities.push_back(std::move(probs));
    }
    return out;
  }

  MessageTable table() const {
    MessageTable t;
    t.num_identities = g_.num_identities;
    for (std::size_t e = 0; e < g_.edges.size(); ++e) {
      t.put(g_.variables[g_.edges[e].variable],
            g_.factor_identity[g_.edges[e].factor], v2f_[e], f2v_[e]);
    }
    return t;
  }

 private:
  static double blend(Message& old, const Message& fresh, double damping) {
    Message m{damping * old[0] + (1.0 - damping) * fresh[0],
              damping * old[1] + (1.0 - damping) * fresh[1]};
    normalize_or_throw(m, "damped");
    const double delta =
        std::max(std::abs(m[0] - old[0]), std::abs(m[1] - old[1]));
    old = m;
    return delta;
  }

  double update_factors(double damping) {
    double delta = 0.0;
    for (int f = 0; f < g_.num_factors(); ++f) {
      const auto& fe = g_.factor_edges[f];
      scratch_in_.clear();
      for (int e : fe) scratch_in_.push_back(v2f_[e]);
      scratch_out_.resize(fe.size());
      factor_messages(scratch_in_, g_.factor_bounds[f], scratch_out_);
      for (std::size_t i = 0; i < fe.size(); ++i) {
        delta = std::max(delta, blend(f2v_[fe[i]], scratch_out_[i], damping));
      }
    }
    return delta;
  }

  double update_variables(double damping) {
    double delta = 0.0;
    for (int x = 0; x < g_.num_variables(); ++x) {
      const auto& ve = g_.variable_edges[x];
      scratch_in_.clear();
      for (int e : ve) scratch_in_.push_back(f2v_[e]);
      scratch_out_.resize(ve.size());
      variable_messages(scratch_in_, scratch_out_);
      for (std::size_t i = 0; i < ve.size(); ++i) {
        delta = std::max(delta, blend(v2f_[ve[i]], scratch_out_[i], damping));
      }
    }
    return delta;
  }

  const FactorGraph& g_;
  const BpConfig& config_;
  std::vector<Message> v2f_, f2v_;
  std::vector<Message> scratch_in_, scratch_out_;
};

}  // namespace detail

// Damped synchronous BP: one undamped initial sweep, then rounds of
// (all factor->variable, all variable->factor) until the largest message
// change drops below the configured epsilon.
inline BpResult run_bp(const FactorGraph& graph, const BpConfig& config = {},
                       const MessageTable* warm_start = nullptr) {
  config.validate();
  detail::BpRunner runner(graph, config);
  runner.init(warm_start);
  runner.round(0.0);

  BpResult result;
  for (int it = 1; it <= config.max_iterations; ++it) {
    const double delta = runner.round(config.damping);
    result.iterations = it;
    if (config.trace) {
      *config.trace << "bp type=" << graph.type_id << " iter=" << it
                    << " max_delta=" << delta << '\n';
    }
    if (delta < config.convergence_epsilon) {
      result.converged = true;
      break;
    }
  }
  result.marginals = runner.marginals();
  result.messages = runner.table();
  return result;
}

// Exact marginals by enumerating the support: the frequency of each
// identity per piece under the uniform distribution over solutions.
inline Marginals marginals_exact(const BeliefState& belief, int type_id,
                                 std::int64_t budget =
                                     kDefaultEnumerationBudget) {
  const auto solutions = enumerate_support(belief, type_id, budget);
  if (solutions.empty()) throw Contradiction("empty support");
  const auto& pieces = belief.pieces_of(type_id);
  const int k = belief.num_identities(type_id);
  Marginals m;
  m.type_id = type_id;
  m.pieces = pieces;
  m.probabilities.assign(pieces.size(), std::vector<double>(k, 0.0));
  for (const auto& s : solutions) {
    for (std::size_t i = 0; i < s.size(); ++i) m.probabilities[i][s[i]] += 1.0;
  }
  const double n = static_cast<double>(solutions.size());
  for (auto& row : m.probabilities) {
    for (double& x : row) x /= n;
  }
  return m;
}

inline double total_variation(const std::vector<double>& a,
                              const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

}  // namespace beliefsg

#endif  // BELIEFSG_BP_HPP_
