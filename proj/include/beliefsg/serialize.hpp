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

#ifndef BELIEFSG_SERIALIZE_HPP_
#define BELIEFSG_SERIALIZE_HPP_

// Debug dumps of a belief: JSON for golden files, text for humans.

#include <sstream>
#include <string>

#include "beliefsg/belief.hpp"
#include "json.hpp"

namespace beliefsg {

inline std::vector<std::string> domain_labels(const BeliefState& belief,
                                              PieceId p) {
  const auto& ids = belief.type(belief.type_of(p)).identities;
  std::vector<std::string> labels;
  IdentityMask m = belief.domain(p);
  while (m) {
    labels.push_back(ids[lowest_identity(m)]);
    m &= m - 1;
  }
  return labels;
}

inline nlohmann::json belief_to_json(const BeliefState& belief) {
  nlohmann::json j;
  j["types"] = nlohmann::json::array();
  for (int t = 0; t < belief.num_types(); ++t) {
    nlohmann::json jt;
    jt["name"] = belief.type(t).name;
    jt["identities"] = belief.type(t).identities;
    jt["bounds"] = nlohmann::json::array();
    for (const auto& b : belief.bounds(t)) {
      jt["bounds"].push_back({b.lb, b.ub});
    }
    j["types"].push_back(std::move(jt));
  }
  j["pieces"] = nlohmann::json::array();
  for (PieceId p = 0; p < belief.num_pieces(); ++p) {
    j["pieces"].push_back({{"id", p},
                           {"type", belief.type_of(p)},
                           {"domain", domain_labels(belief, p)}});
  }
  return j;
}

inline std::string belief_to_text(const BeliefState& belief) {
  std::ostringstream os;
  for (int t = 0; t < belief.num_types(); ++t) {
    const auto& type = belief.type(t);
    os << "type " << type.name << ":";
    for (std::size_t v = 0; v < type.identities.size(); ++v) {
      const auto& b = belief.bounds(t)[v];
      os << ' ' << type.identities[v] << "[" << b.lb << "," << b.ub << "]";
    }
    os << '\n';
    for (PieceId p : belief.pieces_of(t)) {
      os << "  piece " << p << ": {";
      bool first = true;
      for (const auto& l : domain_labels(belief, p)) {
        os << (first ? "" : ",") << l;
        first = false;
      }
      os << "}\n";
    }
  }
  return os.str();
}

}  // namespace beliefsg

#endif  // BELIEFSG_SERIALIZE_HPP_
