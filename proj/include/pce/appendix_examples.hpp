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

#ifndef PCE_APPENDIX_EXAMPLES_HPP_
#define PCE_APPENDIX_EXAMPLES_HPP_

#include <string>
#include <utility>
#include <vector>

#include "pce/game_model.hpp"

namespace pce {

// Double auction with private values in [0, 1]; trade at (s + b)/2 if s <= b.
struct DoubleAuctionSolution {
  double seller_floor = 0.25;   // inf of the seller's bids
  double buyer_ceiling = 0.75;  // sup of the buyer's bids
  double endpoint_residual = 0.0;
};

// Solves the endpoint fixed point. Throws Error if it misses (1/4, 3/4) by
// more than 1e-12.
DoubleAuctionSolution double_auction_pce();

double double_auction_seller_bid(double vs);
double double_auction_buyer_bid(double vb);
// Losses as printed, relative to the largest possible surplus.
double double_auction_seller_loss(double vs);
double double_auction_buyer_loss(double vb);
// Absolute loss of the equilibrium bid, from the balancing construction.
double double_auction_seller_abs_loss(double vs);
double double_auction_buyer_abs_loss(double vb);
// Brute force: seller with value vs bids s against the equilibrium buyer;
// sup over the buyer-value grid of the best payoff minus the payoff.
double double_auction_seller_loss_on_grid(double vs, double s, const std::vector<double>& vb_grid);
double double_auction_buyer_loss_on_grid(double vb, double b, const std::vector<double>& vs_grid);

enum class TransferRule { kPayAsBid, kProportional, kAdditive };
std::string to_string(TransferRule r);
// Throws InvalidParameters for an unknown name.
TransferRule parse_transfer_rule(const std::string& name);

struct PublicGoodParams {
  int n = 2;
  double c = 0.5;
  double v_bar = 1.0;
  TransferRule rule = TransferRule::kPayAsBid;
};

// Throws InvalidParameters unless n >= 2, c > 0, v_bar > 0 and
// c <= (n - 1) v_bar / 2.
void check(const PublicGoodParams& p);

double public_good_bid(const PublicGoodParams& p, double v);
// Final transfer of agent i; zero if the good is not provided.
double public_good_transfer(TransferRule rule, double c, const std::vector<double>& x, std::size_t i);
bool public_good_provided(double c, const std::vector<double>& x);

struct PublicGoodSolution {
  double inefficiency = 0.0;  // closed form
  // max over interior values of |max(v - x, 0) - transfer when the others
  // contribute exactly c|.
  double balancing_residual = 0.0;
  // sup over a value grid of 1 - x(v)/v, for comparison with the closed form.
  double individual_loss_sup = 0.0;
};

PublicGoodSolution public_good_pce(const PublicGoodParams& p, int interior_points = 100);

struct UnknownPriorForecast {
  double action = 0.0;
  double lambda = 0.0;
  double high = 0.0, low = 0.0;  // extreme posterior means
};

// eps in [0, 1], delta in (0, 1), theta0 and z in [0, 1]. Throws Error if the
// weighted average and the midpoint of the extremes differ by more than 1e-12.
UnknownPriorForecast forecast_unknown_prior(double eps, double delta, double theta0, double z);
double forecast_lambda(double eps, double delta);

// (support, weight) pairs.
using Grid1d = std::vector<std::pair<double, double>>;

// Reads two comma-separated columns; blank lines and lines starting with '#'
// are skipped, as is a non-numeric first line. Throws SchemaError.
Grid1d read_grid_csv(const std::string& path);

// Density through the points, linear in between, zero outside the points'
// range and outside [0, 1].
double piecewise_density(const Grid1d& f, double t);

struct UnknownNoiseForecast {
  double action = 0.0;
  double high = 0.0, low = 0.0;
  double x_high = 0.0, x_low = 0.0;  // maximizing and minimizing noise points
  double base_mean = 0.0;            // posterior mean without contamination
};

// f: prior density points; g0: base noise distribution on [-delta, delta].
// The sup/inf over x use a grid of the given step and a golden-section polish.
// Throws Error if no x gives a positive denominator.
UnknownNoiseForecast forecast_unknown_noise(double eps, double delta, const Grid1d& f, const Grid1d& g0, double z,
                                            double step = 1e-3);

struct DiscretePrior {
  std::vector<double> atoms;  // in [0, 1]
  std::vector<double> weights;
};

struct QuadraticLossCheck {
  double direct = 0.0;   // sup over the family of best minus actual payoff
  double squared = 0.0;  // sup over the family of (a - posterior mean)^2
};

// Signal reveals theta with probability 1 - eps and is uniform on [0, 1]
// otherwise. Throws InvalidParameters if a member's mean differs from theta0
// by more than 1e-12.
QuadraticLossCheck quadratic_loss_check(const std::vector<DiscretePrior>& family, double theta0, double eps, double z,
                                        double a);

}  // namespace pce

#endif  // PCE_APPENDIX_EXAMPLES_HPP_
