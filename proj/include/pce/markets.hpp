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

#ifndef PCE_MARKETS_HPP_
#define PCE_MARKETS_HPP_

#include <vector>

#include "pce/game_model.hpp"

namespace pce {

// Linear inverse demand known only to lie between P_lo(q) = a_lo - b_lo q and
// P_hi(q) = a_hi - b_hi q.
struct CournotParams {
  double a_lo = 1.0, a_hi = 1.0;
  double b_lo = 1.0, b_hi = 1.0;
};

// Throws InvalidParameters unless a_hi >= a_lo > 0, b's > 0 and
// a_hi/b_hi >= a_lo/b_lo.
void check(const CournotParams& p);

struct CournotSolution {
  double quantity = 0.0;  // same for both firms
  double max_loss = 0.0;
};

CournotSolution cournot_pce(const CournotParams& p);

// Firm i's loss under the linear demand a - b q when it sells qi and the rival
// sells qo: best-response profit minus actual profit.
double cournot_state_loss(double a, double b, double qi, double qo);
// Max of the losses under the two bounding demands.
double cournot_max_loss(const CournotParams& p, double qi, double qo);
// High-demand loss minus low-demand loss.
double cournot_balancing_residual(const CournotParams& p, double qi, double qo);

// Bounds for a0, b0 and uncertainty eps.
CournotParams cournot_eps_params(double a0, double b0, double eps);

struct CournotSweepRow {
  double eps = 0.0;
  double quantity = 0.0;
  double max_loss = 0.0;
  double dq_deps = 0.0;  // central difference
};

// Requires a0^2/(4 b0) = 1 unless renormalize is set, in which case b0 is
// replaced by a0^2/4.
std::vector<CournotSweepRow> cournot_sweep(double a0, double b0, const std::vector<double>& eps,
                                           bool renormalize = false);

struct BertrandParams {
  double a = 1.0, b = 1.0;
  double c_lo = 0.0, c_hi = 0.5;
};

// Throws InvalidParameters unless 0 <= c_lo <= c_hi <= a/2 and b > 0.
void check(const BertrandParams& p);

// Demand at price p when the rival charges r: full demand below r, half at r.
double bertrand_demand(const BertrandParams& p, double price, double rival);

struct BertrandSolution {
  double price = 0.0;
  double max_loss = 0.0;          // with the 1/b demand factor
  double printed_max_loss = 0.0;  // (a - c_hi)(c_hi - c) / 2
};

BertrandSolution bertrand_pce(const BertrandParams& p, double c);

// Analytic derivative of the price in eps for c0 = a/4, c held fixed.
double bertrand_dp_deps(double a, double c0, double eps, double c);

struct BertrandSweepRow {
  double eps = 0.0;
  double b = 0.0;
  std::vector<double> costs;
  std::vector<double> prices;
  std::vector<double> dp_deps;     // central difference
  std::vector<double> dp_formula;  // analytic derivative
  double bound = 0.0;              // 3 eps / 32 - eps^2 / 64
  double max_loss = 0.0;           // at c = c_lo, with 1/b
  double printed_max_loss = 0.0;   // at c = c_lo, without 1/b
};

// a = 1, c0 = a/4, b fixed by (a - c0)^2 / (4b) = 1; cost_points >= 2.
std::vector<BertrandSweepRow> bertrand_sweep(const std::vector<double>& eps, int cost_points = 11);

}  // namespace pce

#endif  // PCE_MARKETS_HPP_
