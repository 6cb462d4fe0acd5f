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

#ifndef PCE_COMPROMISE_HPP_
#define PCE_COMPROMISE_HPP_

#include <cstddef>
#include <vector>

#include "pce/belief_system.hpp"
#include "pce/game_model.hpp"
#include "pce/profile.hpp"

namespace pce {

// Expected payoff of every node for every player under the profile, one
// table per state: value[s][node][player].
class PlayValues {
 public:
  PlayValues(const GameTree& tree, const StrategyProfile& profile);
  const std::vector<double>& at(std::size_t s, std::size_t node) const { return value_[s][node]; }

 private:
  std::vector<std::vector<std::vector<double>>> value_;
};

// V[a][k]: the owner's expected payoff from pure action a at the set, in the
// k-th conceivable state, averaging over the posterior.
struct PayoffTable {
  std::vector<std::size_t> states;  // conceivable states, increasing
  std::vector<std::vector<double>> value;
};

PayoffTable payoff_table(const GameTree& tree, const PlayValues& values, const BeliefSystem& beliefs,
                         std::size_t info_set);

struct Compromise {
  std::vector<double> action;  // mixed action over A(phi)
  double value = 0.0;          // its maximum loss
};

// Losses of a mixed action x against the table: per state, best pure minus x.
std::vector<double> state_losses(const PayoffTable& table, const std::vector<double>& x);

// Minimax over the simplex, solved as a linear program. Among optimal
// solutions the one with the smallest support (then lexicographically
// smallest support) is returned. Throws Error if the solver fails.
Compromise best_compromise_mixed(const PayoffTable& table);
// Minimax over pure actions; ties go to the lowest index.
Compromise best_compromise_pure(const PayoffTable& table);

// Convenience entry points on a game.
double expected_payoff(const GameTree& tree, const StrategyProfile& profile, const std::vector<double>& x,
                       std::size_t state, std::size_t info_set, const BeliefSystem& beliefs);

struct LossReport {
  std::size_t info_set = 0;
  std::vector<std::size_t> states;
  std::vector<double> per_state_loss;
  double max_loss = 0.0;
  std::vector<std::size_t> best_action_per_state;
  std::vector<double> best_compromise;
  double compromise_value = 0.0;
  double deviation_gap = 0.0;
};

// Losses of `x` at the set (per_state_loss, max_loss, best actions only).
LossReport max_loss(const GameTree& tree, const StrategyProfile& profile, const std::vector<double>& x,
                    std::size_t info_set, const BeliefSystem& beliefs);

// Full report for the profile's own action at the set, with the best
// compromise of the chosen kind.
LossReport loss_report(const GameTree& tree, const PlayValues& values, const StrategyProfile& profile,
                       const BeliefSystem& beliefs, std::size_t info_set, bool pure);

}  // namespace pce

#endif  // PCE_COMPROMISE_HPP_
