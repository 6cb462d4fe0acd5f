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

#ifndef PCE_ORACLE_HPP_
#define PCE_ORACLE_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "pce/game_model.hpp"
#include "pce/info_trade.hpp"
#include "pce/markets.hpp"

namespace pce {

struct GridDim {
  std::string name;
  double lower = 0.0, upper = 0.0, step = 1.0;

  // floor((upper - lower)/step) + 1, with a 1e-9 relative allowance so that
  // 0.3/0.1 counts as 3. Throws InvalidParameters for a bad dimension.
  std::size_t count() const;
  std::vector<double> points() const;
};

struct GridSpec {
  std::vector<GridDim> dims;

  // Throws InvalidParameters if the dimension is missing.
  const GridDim& at(const std::string& name) const;
  bool has(const std::string& name) const;
};

// Fails once the evaluated cells would exceed this.
inline constexpr std::size_t kDefaultCellCap = 1000000;

using StaticPayoff = std::function<double(double own, double opponent, std::size_t state)>;

struct OracleResult {
  std::vector<double> actions;
  std::vector<double> best_per_state;          // max over the benchmark grid
  std::vector<std::vector<double>> loss;       // [action][state]
  std::vector<double> max_loss;                // per action
  std::size_t argmin = 0;                      // smallest index among ties
  double value = 0.0;                          // max_loss[argmin]
  std::size_t worst_state = 0;                 // of the argmin row, first on ties
};

// Exhaustive minimax of the loss over own actions. opponent[s] is the
// opponent's action in state s; the benchmark grid defaults to own_grid.
// Throws Error on a non-finite payoff.
OracleResult static_minimax_oracle(const StaticPayoff& payoff, const std::vector<double>& own_grid,
                                   const std::vector<double>& opponent, const std::vector<double>& benchmark = {});

// One row per action: the action, its loss in every state, its max loss.
void write_oracle_csv(std::ostream& out, const OracleResult& r, const std::vector<std::string>& state_labels);

// Firm 1 against a rival at q_opp: quantities on [0, a_hi/b_hi], states the
// two bounding demands then n_mix interior convex combinations.
OracleResult cournot_oracle(const CournotParams& p, double q_opp, double step, int n_mix = 9);

// Firm with cost c against a rival pricing by the closed form, the rival's
// cost on state_points evenly spaced values in [c_lo, c_hi]; prices on
// [0, a].
OracleResult bertrand_oracle(const BertrandParams& p, double c, double step, int state_points = 1001);

// Firm bidding against a rival at w_rival, productivity on theta_points
// values across the bounds; wages on [0, 1] plus the rival's wage.
OracleResult spence_wage_oracle(ProductivityBounds bounds, double w_rival, double step, int theta_points = 101);

// Example ids: cournot, bertrand, spence, trade_buyer, trade_seller,
// double_auction, public_good. Missing params take the defaults listed in the
// README. The returned spec always passes validate.
GameSpec discretize_example(const std::string& id, const GridSpec& grid, const std::map<std::string, double>& params = {},
                            std::size_t cell_cap = kDefaultCellCap);

struct TradeOracleResult {
  std::vector<double> prices;
  std::vector<double> max_loss;  // proposer's, per price
  std::size_t argmin = 0;
  double value = 0.0;
  // Range of prices whose max loss is within 1e-12 of the minimum.
  double minimizer_lo = 0.0, minimizer_hi = 0.0;
};

// Proposer's max loss per grid price against the responder's minimax
// acceptance on the grid's value range. The closed-form price (1/4 or 3/4) is
// always added to the price grid.
TradeOracleResult two_stage_trade_oracle(Side proposer, std::vector<double> prices, const std::vector<double>& xs,
                                         const std::vector<double>& ys, std::size_t cell_cap = 50000000);

void write_trade_oracle_csv(std::ostream& out, const TradeOracleResult& r);

}  // namespace pce

#endif  // PCE_ORACLE_HPP_
