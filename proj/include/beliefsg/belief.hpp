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

#ifndef BELIEFSG_BELIEF_HPP_
#define BELIEFSG_BELIEF_HPP_

// Constraint-based belief over hidden piece identities. Every piece has a
// type; every type owns a finite list of identities and a global
// cardinality constraint bounding how often each identity occurs among the
// pieces of that type. Domains are bitsets over the identities of the
// piece's type.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace beliefsg {

using PieceId = int;
using IdentityMask = std::uint64_t;

inline constexpr int kMaxIdentities = 64;

// Raised when a belief admits no consistent assignment.
class Contradiction : public std::runtime_error {
 public:
  explicit Contradiction(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr IdentityMask bit(int identity) {
  return IdentityMask{1} << identity;
}

inline constexpr IdentityMask full_mask(int num_identities) {
  return num_identities >= kMaxIdentities ? ~IdentityMask{0}
                                          : bit(num_identities) - 1;
}

inline int popcount(IdentityMask m) { return std::popcount(m); }
inline int lowest_identity(IdentityMask m) { return std::countr_zero(m); }

struct CountBounds {
  int lb = 0;
  int ub = 0;
  friend bool operator==(const CountBounds&, const CountBounds&) = default;
};

struct PieceType {
  std::string name;
  std::vector<std::string> identities;
};

// Immutable structure shared by all copies of a belief: types, bounds and
// the type function.
struct BeliefLayout {
  std::vector<PieceType> types;
  std::vector<std::vector<CountBounds>> bounds;  // [type][identity]
  std::vector<int> type_of;                      // [piece]
  std::vector<std::vector<PieceId>> pieces_of;   // [type]
};

class BeliefState {
 public:
  BeliefState() : layout_(std::make_shared<BeliefLayout>()) {}

  // Registers a type with its cardinality bounds. Returns the type id.
  int add_type(PieceType type, std::vector<CountBounds> bounds) {
    if (type.identities.empty() ||
        static_cast<int>(type.identities.size()) > kMaxIdentities) {
      throw std::invalid_argument("piece type needs 1..64 identities");
    }
    for (std::size_t i = 0; i < type.identities.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (type.identities[i] == type.identities[j]) {
          throw std::invalid_argument("duplicate identity label '" +
                                      type.identities[i] + "'");
        }
      }
    }
    if (bounds.size() != type.identities.size()) {
      throw std::invalid_argument("one bound per identity required");
    }
    for (const auto& b : bounds) {
      if (b.lb < 0 || b.lb > b.ub) {
        throw std::invalid_argument("bounds must satisfy 0 <= lb <= ub");
      }
    }
    auto& layout = mutable_layout();
    layout.types.push_back(std::move(type));
    layout.bounds.push_back(std::move(bounds));
    layout.pieces_of.emplace_back();
    return static_cast<int>(layout.types.size()) - 1;
  }

  // Adds a piece of the given type with a full domain.
  PieceId add_piece(int type_id) {
    auto& layout = mutable_layout();
    if (type_id < 0 || type_id >= static_cast<int>(layout.types.size())) {
      throw std::out_of_range("unknown type id");
    }
    const PieceId id = static_cast<PieceId>(layout.type_of.size());
    layout.type_of.push_back(type_id);
    layout.pieces_of[type_id].push_back(id);
    domains_.push_back(full_mask(num_identities(type_id)));
    return id;
  }

  int num_types() const { return static_cast<int>(layout_->types.size()); }
  int num_pieces() const { return static_cast<int>(domains_.size()); }
  const PieceType& type(int t) const { return layout_->types[t]; }
  int type_of(PieceId p) const { return layout_->type_of[p]; }
  int num_identities(int t) const {
    return static_cast<int>(layout_->types[t].identities.size());
  }
  const std::vector<CountBounds>& bounds(int t) const {
    return layout_->bounds[t];
  }
  const std::vector<PieceId>& pieces_of(int t) const {
    return layout_->pieces_of[t];
  }
  const std::vector<IdentityMask>& domains() const { return domains_; }
  IdentityMask domain(PieceId p) const { return domains_[p]; }

  bool is_resolved(PieceId p) const { return popcount(domains_[p]) == 1; }
  // Identity of a resolved piece, -1 otherwise.
  int resolved_identity(PieceId p) const {
    return is_resolved(p) ? lowest_identity(domains_[p]) : -1;
  }
  bool all_resolved() const {
    return std::all_of(domains_.begin(), domains_.end(),
                       [](IdentityMask m) { return popcount(m) == 1; });
  }

  int identity_index(int t, const std::string& label) const {
    const auto& ids = layout_->types[t].identities;
    auto it = std::find(ids.begin(), ids.end(), label);
    if (it == ids.end()) throw std::out_of_range("unknown identity " + label);
    return static_cast<int>(it - ids.begin());
  }

  // In-place primitives. They return false when the belief becomes
  // contradictory, leaving it in an unspecified (but memory-safe) state.
  bool try_restrict(PieceId p, IdentityMask allowed) {
    domains_[p] &= allowed;
    if (domains_[p] == 0) return false;
    return try_propagate_type(type_of(p));
  }

  bool try_assign(PieceId p, int identity) {
    if ((domains_[p] & bit(identity)) == 0) return false;
    domains_[p] = bit(identity);
    return try_propagate_type(type_of(p));
  }

  bool try_propagate() {
    for (int t = 0; t < num_types(); ++t) {
      if (!try_propagate_type(t)) return false;
    }
    return true;
  }

  // Counting-based filtering of one type's cardinality constraint, run to a
  // fixpoint and followed by an exact feasibility test.
  bool try_propagate_type(int t);

  // Raw domain overwrite, bypassing propagation. Used by games when building
  // beliefs and by tests constructing specific instances.
  void set_domain(PieceId p, IdentityMask m) { domains_[p] = m; }

  friend bool operator==(const BeliefState& a, const BeliefState& b) {
    return a.domains_ == b.domains_ &&
           (a.layout_ == b.layout_ || (a.layout_->type_of == b.layout_->type_of &&
                                       a.layout_->bounds == b.layout_->bounds));
  }

 private:
  BeliefLayout& mutable_layout() {
    if (layout_.use_count() > 1) {
      layout_ = std::make_shared<BeliefLayout>(*layout_);
    }
    return *layout_;
  }

  // Copy-on-write: copies share the layout until one of them adds a type
  // or a piece.
  std::shared_ptr<BeliefLayout> layout_;
  std::vector<IdentityMask> domains_;
};

namespace detail {

// Bipartite b-matching of pieces to identities. First saturates every
// lower bound, then extends to the upper bounds; augmenting paths never
// decrease the load of an identity, so both phases compose.
class CardinalityFlow {
 public:
  CardinalityFlow(const std::vector<IdentityMask>& domains,
                  const std::vector<CountBounds>& bounds)
      : domains_(domains),
        bounds_(bounds),
        match_(domains.size(), -1),
        load_(bounds.size(), 0),
        cap_(bounds.size(), 0) {}

  bool feasible() {
    const int n = static_cast<int>(domains_.size());
    int lower_total = 0;
    for (std::size_t v = 0; v < bounds_.size(); ++v) {
      cap_[v] = bounds_[v].lb;
      lower_total += bounds_[v].lb;
    }
    if (lower_total > n) return false;
    int matched = 0;
    for (int p = 0; p < n && matched < lower_total; ++p) {
      if (augment_from(p)) ++matched;
    }
    if (matched < lower_total) return false;
    for (std::size_t v = 0; v < bounds_.size(); ++v) cap_[v] = bounds_[v].ub;
    for (int p = 0; p < n; ++p) {
      if (match_[p] >= 0) continue;
      if (!augment_from(p)) return false;
      ++matched;
    }
    return matched == n;
  }

 private:
  bool augment_from(int p) {
    visited_.assign(bounds_.size(), 0);
    return dfs(p);
  }

  bool dfs(int p) {
    IdentityMask m = domains_[p];
    while (m) {
      const int v = lowest_identity(m);
      m &= m - 1;
      if (visited_[v] || v == match_[p]) continue;
      visited_[v] = 1;
      bool freed = load_[v] < cap_[v];
      for (std::size_t q = 0; !freed && q < match_.size(); ++q) {
        freed = match_[q] == v && dfs(static_cast<int>(q));
      }
      if (freed) {
        move(p, v);
        return true;
      }
    }
    return false;
  }

  void move(int p, int v) {
    if (match_[p] >= 0) --load_[match_[p]];
    match_[p] = v;
    ++load_[v];
  }

  const std::vector<IdentityMask>& domains_;
  const std::vector<CountBounds>& bounds_;
  std::vector<int> match_;
  std::vector<int> load_;
  std::vector<int> cap_;
  std::vector<char> visited_;
};

}  // namespace detail

inline bool BeliefState::try_propagate_type(int t) {
  const auto& pieces = layout_->pieces_of[t];
  const auto& bnds = layout_->bounds[t];
  const int k = num_identities(t);
  const int n = static_cast<int>(pieces.size());

  std::vector<int> assigned(k), possible(k);
  bool changed = true;
  while (changed) {
    changed = false;
    std::fill(assigned.begin(), assigned.end(), 0);
    std::fill(possible.begin(), possible.end(), 0);
    for (PieceId p : pieces) {
      IdentityMask m = domains_[p];
      if (m == 0) return false;
      const bool single = popcount(m) == 1;
      while (m) {
        const int v = lowest_identity(m);
        m &= m - 1;
        ++possible[v];
        if (single) ++assigned[v];
      }
    }
    for (int v = 0; v < k && !changed; ++v) {
      if (assigned[v] > bnds[v].ub || possible[v] < bnds[v].lb) return false;
      // Identity saturated: nobody else may take it.
      if (assigned[v] == bnds[v].ub && possible[v] > assigned[v]) {
        for (PieceId p : pieces) {
          if (popcount(domains_[p]) > 1 && (domains_[p] & bit(v))) {
            domains_[p] &= ~bit(v);
          }
        }
        changed = true;
      } else if (possible[v] == bnds[v].lb && possible[v] > assigned[v]) {
        // Every candidate is needed to reach the lower bound.
        for (PieceId p : pieces) {
          if (domains_[p] & bit(v)) domains_[p] = bit(v);
        }
        changed = true;
      }
    }
  }

  int lower_total = 0, reachable = 0;
  for (int v = 0; v < k; ++v) {
    lower_total += bnds[v].lb;
    reachable += std::min(bnds[v].ub, possible[v]);
  }
  if (lower_total > n || reachable < n) return false;

  std::vector<IdentityMask> doms;
  doms.reserve(n);
  for (PieceId p : pieces) doms.push_back(domains_[p]);
  return detail::CardinalityFlow(doms, bnds).feasible();
}

// Value-returning wrappers. All of them throw Contradiction instead of
// returning an inconsistent belief.

inline BeliefState propagate_counts(BeliefState belief) {
  if (!belief.try_propagate()) throw Contradiction("cardinality infeasible");
  return belief;
}

inline BeliefState restrict_domain(BeliefState belief, PieceId piece,
                                   IdentityMask allowed) {
  if (!belief.try_restrict(piece, allowed)) {
    throw Contradiction("restricting piece " + std::to_string(piece) +
                        " empties the support");
  }
  return belief;
}

inline BeliefState assign(BeliefState belief, PieceId piece, int identity) {
  if (!belief.try_assign(piece, identity)) {
    throw Contradiction("piece " + std::to_string(piece) +
                        " cannot take identity " + std::to_string(identity));
  }
  return belief;
}

inline bool is_feasible(BeliefState belief) { return belief.try_propagate(); }

// True iff the complete assignment (one identity per piece) satisfies every
// domain and every cardinality bound, i.e. lies in the support.
inline bool in_support(const BeliefState& belief,
                       const std::vector<int>& assignment) {
  if (static_cast<int>(assignment.size()) != belief.num_pieces()) return false;
  for (int t = 0; t < belief.num_types(); ++t) {
    std::vector<int> count(belief.num_identities(t), 0);
    for (PieceId p : belief.pieces_of(t)) {
      const int v = assignment[p];
      if (v < 0 || v >= belief.num_identities(t)) return false;
      if ((belief.domain(p) & bit(v)) == 0) return false;
      ++count[v];
    }
    for (int v = 0; v < belief.num_identities(t); ++v) {
      if (count[v] < belief.bounds(t)[v].lb || count[v] > belief.bounds(t)[v].ub)
        return false;
    }
  }
  return true;
}

}  // namespace beliefsg

#endif  // BELIEFSG_BELIEF_HPP_
