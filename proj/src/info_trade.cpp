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

#include "pce/info_trade.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace pce {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParameters(what);
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

std::string to_string(SpenceKind k) { return k == SpenceKind::kPooling ? "pooling" : "separating"; }
std::string to_string(Education e) { return e == Education::kLow ? "e_L" : "e_H"; }
std::string to_string(Side s) { return s == Side::kBuyer ? "buyer" : "seller"; }

void check(const SpenceParams& p) {
  require(std::isfinite(p.b) && std::isfinite(p.delta), "spence parameters must be finite");
  require(0.0 <= p.delta && p.delta < p.b && p.b <= 1.0, "spence needs 0 <= delta < b <= 1");
}

SpenceSolution spence_pce(const SpenceParams& p, SpenceKind kind) {
  check(p);
  SpenceSolution s;
  s.kind = kind;
  if (kind == SpenceKind::kPooling) {
    s.after_low = {0.0, 1.0};
    s.after_high = {0.0, 1.0};
    s.loss_low = s.wage_low - s.after_low.lo;
    s.loss_high = s.wage_high - s.after_high.lo;
    s.midpoint_residual = std::max(std::fabs(s.wage_low - 0.5 * (s.after_low.lo + s.after_low.hi)),
                                   std::fabs(s.wage_high - 0.5 * (s.after_high.lo + s.after_high.hi)));
    return s;
  }

  // Unknowns: w_H, w_L, hi_H, lo_H, hi_L, lo_L.
  const double b = p.b, d = p.delta;
  Eigen::Matrix<double, 6, 6> m = Eigen::Matrix<double, 6, 6>::Zero();
  Eigen::Matrix<double, 6, 1> rhs = Eigen::Matrix<double, 6, 1>::Zero();
  m(0, 2) = 1.0;
  rhs(0) = 1.0;
  m(1, 3) = 1.0, m(1, 0) = 1.0 / b, m(1, 1) = -1.0 / b;
  rhs(1) = 1.0 / b;
  m(2, 4) = 1.0, m(2, 0) = 1.0 / b, m(2, 1) = -1.0 / b;
  rhs(2) = (1.0 + d) / b;
  m(3, 5) = 1.0;
  m(4, 0) = 1.0, m(4, 2) = -0.5, m(4, 3) = -0.5;
  m(5, 1) = 1.0, m(5, 4) = -0.5, m(5, 5) = -0.5;
  Eigen::Matrix<double, 6, 1> sol = m.colPivHouseholderQr().solve(rhs);
  s.solved_wage_high = sol(0);
  s.solved_wage_low = sol(1);

  // Some state must choose high education: the cheapest cost is 1 - b.
  s.exists = s.solved_wage_high - s.solved_wage_low > 1.0 - b + 1e-12;
  if (!s.exists) return s;

  s.wage_high = 0.5 + (b + d) / (4.0 * b * b);
  s.wage_low = d / (2.0 * b) + (b + d) / (4.0 * b * b);
  s.cost_threshold = (b - d) / (2.0 * b);
  s.after_low = {0.0, (b + d) / (2.0 * b * b) + d / b};
  s.after_high = {(b + d) / (2.0 * b * b), 1.0};
  s.loss_high = 0.5 - (b + d) / (4.0 * b * b);
  s.loss_low = d / (2.0 * b) + (b + d) / (4.0 * b * b);
  if (std::fabs(s.solved_wage_high - s.wage_high) > 1e-9 || std::fabs(s.solved_wage_low - s.wage_low) > 1e-9)
    throw Error("spence: closed-form wages disagree with the linear solve");
  s.midpoint_residual = std::max(std::fabs(s.wage_low - 0.5 * (s.after_low.lo + s.after_low.hi)),
                                 std::fabs(s.wage_high - 0.5 * (s.after_high.lo + s.after_high.hi)));
  return s;
}

Education spence_worker_best_response(const SpenceParams& p, double wage_low, double wage_high, double theta,
                                      double cost) {
  check(p);
  require(theta >= 0.0 && theta <= 1.0, "theta outside [0, 1]");
  double lo = 1.0 - p.b * theta, hi = 1.0 + p.delta - p.b * theta;
  require(cost >= lo - 1e-12 && cost <= hi + 1e-12, "cost outside the band at theta");
  return wage_high - cost >= wage_low ? Education::kHigh : Education::kLow;
}

double spence_firm_payoff(double w, double r, double theta) {
  if (w > r) return theta - w;
  if (w == r) return (theta - w) / 2.0;
  return 0.0;
}

double spence_firm_loss(double w, double r, ProductivityBounds bounds) {
  auto loss = [&](double theta) { return std::max(theta - r, 0.0) - spence_firm_payoff(w, r, theta); };
  return std::max(loss(bounds.lo), loss(bounds.hi));
}

Acceptance responder_best_compromise(double v0, double v1, double p, Side side) {
  require(std::isfinite(v0) && std::isfinite(v1) && std::isfinite(p), "values must be finite");
  require(v0 <= v1, "need v0 <= v1");
  require(p >= 0.0, "price must be nonnegative");
  Acceptance a;
  if (side == Side::kSeller) {
    if (p <= v0)
      a.alpha = 0.0;
    else if (p >= v1)
      a.alpha = 1.0;
    else
      a.alpha = (p - v0) / (v1 - v0);
    a.max_loss = a.alpha * std::max(v1 - p, 0.0);
  } else {
    if (p >= v1)
      a.alpha = 0.0;
    else if (p <= v0)
      a.alpha = 1.0;
    else
      a.alpha = (v1 - p) / (v1 - v0);
    a.max_loss = a.alpha * std::max(p - v0, 0.0);
  }
  return a;
}

double trade_acceptance_buyer_proposer(double x, double p) { return clamp01(2.0 * p - x); }

double trade_acceptance_seller_proposer(double p) {
  if (p == 0.75) return 0.25;
  return std::max(1.0 - 2.0 * p, 0.0);
}

double trade_probability_buyer_proposer(double x) { return trade_acceptance_buyer_proposer(x, 0.25); }

namespace {

// Upper bound on the buyer's loss at (x, p), evaluated at y in {0, 1}.
double buyer_proposer_loss(double x, double p) {
  double a = trade_acceptance_buyer_proposer(x, p);
  return std::max(1.0 / 8.0 - ((x + 1.0) / 2.0 - p) * a, -(x / 2.0 - p) * a);
}

// Seller's loss from 3/4 when the value is v.
double seller_proposer_loss(double v) {
  double dev = v < 0.5 ? (1.0 - 2.0 * v) * (1.0 - 2.0 * v) / 8.0 : 0.0;
  return dev - (0.75 - v) / 4.0;
}

}  // namespace

TradeSolution trade_pce(Side proposer) {
  TradeSolution t;
  t.proposer = proposer;
  if (proposer == Side::kBuyer) {
    t.price = 0.25;
    t.on_path = {0.0, 1.0};
    t.off_path = {0.0, 1.0};
    // Convex in x below 2p and constant above.
    for (double x : {0.0, std::min(2.0 * t.price, 1.0), 1.0})
      t.proposer_max_loss = std::max(t.proposer_max_loss, buyer_proposer_loss(x, t.price));
    // Seller's loss alpha (v1 - p) is largest at x = 0.
    for (double x : {0.0, 1.0}) {
      Acceptance a = responder_best_compromise(x / 2.0, (1.0 + x) / 2.0, t.price, Side::kSeller);
      t.responder_max_loss = std::max(t.responder_max_loss, a.max_loss);
    }
    return t;
  }
  t.price = 0.75;
  t.on_path = {0.0, 1.0};
  t.off_path = {0.0, 0.5};
  // Convex in v, so each x needs only y in {0, 1}; the result increases in x.
  for (double x : {0.0, 1.0})
    t.proposer_max_loss =
        std::max({t.proposer_max_loss, seller_proposer_loss(x / 2.0), seller_proposer_loss((1.0 + x) / 2.0)});
  t.responder_max_loss = responder_best_compromise(t.on_path.lo, t.on_path.hi, t.price, Side::kBuyer).max_loss;
  return t;
}

}  // namespace pce
