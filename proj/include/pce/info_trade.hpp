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

#ifndef PCE_INFO_TRADE_HPP_
#define PCE_INFO_TRADE_HPP_

#include <string>

#include "pce/game_model.hpp"

namespace pce {

// Job market: cost of high education lies between 1 - b theta and
// 1 + delta - b theta.
struct SpenceParams {
  double b = 1.0;
  double delta = 0.25;
};

// Throws InvalidParameters unless 0 <= delta < b <= 1.
void check(const SpenceParams& p);

enum class SpenceKind { kPooling, kSeparating };
enum class Education { kLow, kHigh };

std::string to_string(SpenceKind k);
std::string to_string(Education e);

struct ProductivityBounds {
  double lo = 0.0, hi = 1.0;
};

struct SpenceSolution {
  SpenceKind kind = SpenceKind::kPooling;
  bool exists = true;
  double wage_low = 0.5, wage_high = 0.5;
  double cost_threshold = 0.0;  // high education iff cost <= threshold
  ProductivityBounds after_low, after_high;
  double loss_low = 0.5, loss_high = 0.5;  // wage minus lowest productivity
  // Wages from the linear system in the bounds (separating only).
  double solved_wage_low = 0.5, solved_wage_high = 0.5;
  double midpoint_residual = 0.0;  // max |w - (lo + hi)/2|
};

// A separating request whose solution has no state choosing high education
// comes back with exists = false. Throws Error if the closed form and the
// linear solve disagree by more than 1e-9.
SpenceSolution spence_pce(const SpenceParams& p, SpenceKind kind);

// High education iff w_high - cost >= w_low. Throws InvalidParameters if the
// cost is outside the band at theta.
Education spence_worker_best_response(const SpenceParams& p, double wage_low, double wage_high, double theta,
                                      double cost);

// Firm payoff when it bids w against the rival's r for a worker of
// productivity theta.
double spence_firm_payoff(double w, double r, double theta);
// Firm's maximum loss over theta in [lo, hi] against a rival bidding r, with
// the tie split counted exactly.
double spence_firm_loss(double w, double r, ProductivityBounds bounds);

enum class Side { kBuyer, kSeller };
std::string to_string(Side s);

struct Acceptance {
  double alpha = 0.0;
  double max_loss = 0.0;
};

// Responder's minimax acceptance probability when the value is known to lie
// in [v0, v1]. Throws InvalidParameters for v0 > v1 or p < 0.
Acceptance responder_best_compromise(double v0, double v1, double p, Side side);

// Seller's acceptance when the buyer proposes: interval [x/2, (1+x)/2].
double trade_acceptance_buyer_proposer(double x, double p);
// Buyer's acceptance when the seller proposes 3/4 on path.
double trade_acceptance_seller_proposer(double p);

struct ValueInterval {
  double lo = 0.0, hi = 1.0;
};

struct TradeSolution {
  Side proposer = Side::kBuyer;
  double price = 0.25;
  double proposer_max_loss = 0.0;
  double responder_max_loss = 0.0;
  ValueInterval on_path;   // responder's conceivable values at the price
  ValueInterval off_path;  // seller proposer only
};

TradeSolution trade_pce(Side proposer);

// Probability of trade at the buyer's offer 1/4 given the seller's x.
double trade_probability_buyer_proposer(double x);

}  // namespace pce

#endif  // PCE_INFO_TRADE_HPP_
