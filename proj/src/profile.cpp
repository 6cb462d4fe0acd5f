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

#include "pce/profile.hpp"

#include <algorithm>
#include <cmath>

namespace pce {

StrategyProfile uniform_profile(const GameTree& tree) {
  StrategyProfile p;
  p.prob.resize(tree.num_info_sets());
  for (std::size_t i : tree.non_root_info_sets()) {
    const auto& is = tree.info_set(i);
    if (is.owner == 0) p.prob[i] = tree.chance(i);
    else p.prob[i].assign(is.actions.size(), 1.0 / static_cast<double>(is.actions.size()));
  }
  return p;
}

StrategyProfile profile_from_maps(const GameTree& tree, const std::map<std::string, ActionMap>& strategy,
                                  const std::string& path_prefix) {
  StrategyProfile p = uniform_profile(tree);
  for (const auto& [id, dist] : strategy) {
    std::size_t i;
    try {
      i = tree.info_set_index(id);
    } catch (const Error&) {
      throw SchemaError(path_prefix + "/" + id, "unknown information set");
    }
    if (i == tree.root_info_set()) throw SchemaError(path_prefix + "/" + id, "the root move is fixed by the state");
    const auto& is = tree.info_set(i);
    std::vector<double> x(is.actions.size(), 0.0);
    double sum = 0.0;
    for (const auto& [a, v] : dist) {
      auto it = std::find(is.actions.begin(), is.actions.end(), a);
      if (it == is.actions.end()) throw SchemaError(path_prefix + "/" + id + "/" + a, "unknown action");
      if (!std::isfinite(v) || v < 0.0) throw SchemaError(path_prefix + "/" + id + "/" + a, "probability must be nonnegative");
      x[static_cast<std::size_t>(it - is.actions.begin())] = v;
      sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-12) throw SchemaError(path_prefix + "/" + id, "distribution not normalized");
    if (is.owner == 0) {
      for (std::size_t k = 0; k < x.size(); ++k)
        if (std::fabs(x[k] - tree.chance(i)[k]) > 1e-12)
          throw SchemaError(path_prefix + "/" + id, "chance distribution differs from the game's");
    }
    p.prob[i] = std::move(x);
  }
  for (std::size_t i : tree.strategic_info_sets())
    if (!strategy.count(tree.info_set(i).id))
      throw SchemaError(path_prefix + "/" + tree.info_set(i).id, "strategy missing for information set");
  return p;
}

std::map<std::string, ActionMap> profile_to_maps(const GameTree& tree, const StrategyProfile& profile) {
  std::map<std::string, ActionMap> out;
  for (std::size_t i : tree.strategic_info_sets()) {
    const auto& is = tree.info_set(i);
    auto& m = out[is.id];
    for (std::size_t k = 0; k < is.actions.size(); ++k) m[is.actions[k]] = profile.at(i)[k];
  }
  return out;
}

double profile_distance(const GameTree& tree, const StrategyProfile& a, const StrategyProfile& b) {
  double d = 0.0;
  for (std::size_t i : tree.strategic_info_sets())
    for (std::size_t k = 0; k < a.at(i).size(); ++k) d = std::max(d, std::fabs(a.at(i)[k] - b.at(i)[k]));
  return d;
}

std::size_t pure_action(const std::vector<double>& x, double tol) {
  std::size_t hit = GameTree::kNone;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] > tol) {
      if (hit != GameTree::kNone) return GameTree::kNone;
      hit = k;
    }
  }
  if (hit != GameTree::kNone && std::fabs(x[hit] - 1.0) > tol) return GameTree::kNone;
  return hit;
}

}  // namespace pce
