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

#ifndef PCE_BELIEF_SYSTEM_HPP_
#define PCE_BELIEF_SYSTEM_HPP_

#include <optional>
#include <string>
#include <vector>

#include "pce/game_model.hpp"
#include "pce/profile.hpp"

namespace pce {

// Conceivable sets and posteriors, indexed [info set][state]. posterior[i][s]
// is a distribution over info_set(i).nodes and is only meaningful when
// conceivable[i][s] holds. The root set carries B = all states and the
// trivial posterior.
struct BeliefSystem {
  std::vector<std::vector<bool>> conceivable;
  std::vector<std::vector<std::vector<double>>> posterior;

  std::vector<std::size_t> conceivable_states(std::size_t info_set) const;
};

struct ConsistencyViolation {
  std::string info_set;
  std::string state;
  std::string condition;  // "a", "b" or "invariant"
  std::string rule;
  double distance = 0.0;  // max-abs distance from the Bayes update, for "b"
};

struct ConsistencyReport {
  std::vector<ConsistencyViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks conceivable sets against feasibility and posteriors against the
// one-edge Bayes update of their predecessors. Throws Error when a posterior
// for a conceivable state is missing or has the wrong length.
ConsistencyReport check_consistency(const GameTree& tree, const StrategyProfile& profile,
                                    const BeliefSystem& beliefs, double tol = 1e-9);

// B = feasible sets; posteriors from forward reach probabilities. Where a set
// has zero reach under a state the posterior is chained from predecessor
// posteriors that send it mass, and uniform over the state's feasible nodes
// when none do.
BeliefSystem derive_feasible_beliefs(const GameTree& tree, const StrategyProfile& profile);

// transition[i][j]: probability that prior node i moves to successor node j
// in one step. Returns nullopt when no mass reaches the successors.
std::optional<std::vector<double>> bayes_step(const std::vector<double>& prior,
                                              const std::vector<std::vector<double>>& transition);

// Forward reach probability of every node under state s (nature's draw has
// probability 1).
std::vector<double> reach_probabilities(const GameTree& tree, const StrategyProfile& profile, std::size_t s);

// Candidate file: strategy, and optionally conceivable sets and posteriors.
// Beliefs not given are taken from derive_feasible_beliefs.
struct Candidate {
  StrategyProfile profile;
  BeliefSystem beliefs;
};

Candidate parse_candidate(const GameTree& tree, const std::string& document);
std::string serialize_candidate(const GameTree& tree, const StrategyProfile& profile, const BeliefSystem& beliefs);

}  // namespace pce

#endif  // PCE_BELIEF_SYSTEM_HPP_
