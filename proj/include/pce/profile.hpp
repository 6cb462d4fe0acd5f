// Copyright 2026 The pce Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PCE_PROFILE_HPP_
#define PCE_PROFILE_HPP_

#include <map>
#include <string>
#include <vector>

#include "pce/game_model.hpp"

namespace pce {

using ActionMap = std::map<std::string, double>;

// Mixed action per information set, indexed like GameTree::info_set(i) and
// aligned with its action list. Chance sets hold s0; the root entry is empty.
struct StrategyProfile {
  std::vector<std::vector<double>> prob;

  const std::vector<double>& at(std::size_t info_set) const { return prob[info_set]; }
  std::vector<double>& at(std::size_t info_set) { return prob[info_set]; }
};

// Uniform mixing at every strategic set, s0 at chance sets.
StrategyProfile uniform_profile(const GameTree& tree);

// Builds a profile from per-set action maps. Every strategic set must be
// present; missing actions count as 0. Chance sets may be omitted and, when
// given, must agree with s0. Throws SchemaError with `path_prefix` + set id.
StrategyProfile profile_from_maps(const GameTree& tree, const std::map<std::string, ActionMap>& strategy,
                                  const std::string& path_prefix = "/strategy");

// Strategic sets only, keyed by information set and action id.
std::map<std::string, ActionMap> profile_to_maps(const GameTree& tree, const StrategyProfile& profile);

// Largest absolute difference between two profiles over strategic sets.
double profile_distance(const GameTree& tree, const StrategyProfile& a, const StrategyProfile& b);

// Pure action index at the set, or GameTree::kNone if the action is mixed.
std::size_t pure_action(const std::vector<double>& x, double tol = 1e-12);

}  // namespace pce

#endif  // PCE_PROFILE_HPP_
