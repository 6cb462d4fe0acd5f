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

#include "pce/markets.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pce/parallel.hpp"

namespace pce {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParameters(what);
}

bool finite(std::initializer_list<double> xs) {
  for (double x : xs)
    if (!std::isfinite(x)) return false;
  return true;
}

void check_eps_grid(const std::vector<double>& eps) {
  for (double e : eps) require(std::isfinite(e) && e > 0.0 && e < 1.0, "eps must lie in (0, 1)");
}

}  // namespace

void check(const CournotParams& p) {
  require(finite({p.a_lo, p.a_hi, p.b_lo, p.b_hi}), "cournot parameters must be finite");
  require(p.a_lo > 0.0 && p.a_hi >= p.a_lo, "cournot needs a_hi >= a_lo > 0");
  require(p.b_lo > 0.0 && p.b_hi > 0.0, "cournot slopes must be positive");
  require(p.a_hi / p.b_hi >= p.a_lo / p.b_lo * (1.0 - 1e-15), "cournot needs a_hi/b_hi >= a_lo/b_lo");
}

CournotSolution cournot_pce(const CournotParams& p) {
  check(p);
  double rl = std::sqrt(p.b_lo), rh = std::sqrt(p.b_hi);
  CournotSolution s;
  s.quantity = (p.a_lo / rl + p.a_hi / rh) / (3.0 * (rl + rh));
  double d = p.a_lo * p.b_hi - p.a_hi * p.b_lo;
  s.max_loss = d * d / (4.0 * p.b_lo * p.b_hi * (rl + rh) * (rl + rh));
  return s;
}

double cournot_state_loss(double a, double b, double qi, double qo) {
  double room = std::max(a - b * qo, 0.0);
  double best = room * room / (4.0 * b);
  return best - (a - b * (qi + qo)) * qi;
}

double cournot_max_loss(const CournotParams& p, double qi, double qo) {
  return std::max(cournot_state_loss(p.a_lo, p.b_lo, qi, qo), cournot_state_loss(p.a_hi, p.b_hi, qi, qo));
}

double cournot_balancing_residual(const CournotParams& p, double qi, double qo) {
  auto side = [&](double a, double b) {
    double r = a - b * qo;
    return r * r / (4.0 * b) - (a - b * (qi + qo)) * qi;
  };
  return side(p.a_hi, p.b_hi) - side(p.a_lo, p.b_lo);
}

CournotParams cournot_eps_params(double a0, double b0, double eps) {
  CournotParams p;
  p.a_lo = (1.0 - eps / 2.0) * a0;
  p.a_hi = (1.0 + eps / 2.0) * a0;
  p.b_lo = (1.0 + eps / 2.0) * b0;
  p.b_hi = (1.0 - eps / 2.0) * b0;
  return p;
}

std::vector<CournotSweepRow> cournot_sweep(double a0, double b0, const std::vector<double>& eps, bool renormalize) {
  require(finite({a0, b0}) && a0 > 0.0 && b0 > 0.0, "a0 and b0 must be positive");
  if (std::fabs(a0 * a0 / (4.0 * b0) - 1.0) > 1e-12) {
    require(renormalize, "monopoly profit a0^2/(4 b0) must equal 1 (use --renormalize)");
    b0 = a0 * a0 / 4.0;
  }
  check_eps_grid(eps);
  std::vector<CournotSweepRow> rows(eps.size());
  parallel_for(eps.size(), [&](std::size_t k) {
    double e = eps[k];
    CournotSolution s = cournot_pce(cournot_eps_params(a0, b0, e));
    double h = std::min(1e-6, e / 2.0);
    double up = cournot_pce(cournot_eps_params(a0, b0, e + h)).quantity;
    double dn = cournot_pce(cournot_eps_params(a0, b0, e - h)).quantity;
    rows[k] = {e, s.quantity, s.max_loss, (up - dn) / (2.0 * h)};
  });
  return rows;
}

void check(const BertrandParams& p) {
  require(finite({p.a, p.b, p.c_lo, p.c_hi}), "bertrand parameters must be finite");
  require(p.b > 0.0, "bertrand slope must be positive");
  require(0.0 <= p.c_lo && p.c_lo <= p.c_hi && p.c_hi <= p.a / 2.0, "bertrand needs 0 <= c_lo <= c_hi <= a/2");
}

double bertrand_demand(const BertrandParams& p, double price, double rival) {
  double q = std::max((p.a - price) / p.b, 0.0);
  if (price < rival) return q;
  if (price == rival) return q / 2.0;
  return 0.0;
}

BertrandSolution bertrand_pce(const BertrandParams& p, double c) {
  check(p);
  require(std::isfinite(c) && c >= p.c_lo && c <= p.c_hi, "cost outside [c_lo, c_hi]");
  double r = std::hypot(p.a - p.c_hi, p.c_hi - c);
  BertrandSolution s;
  s.price = 0.5 * (p.a + c - r);
  if (c == p.c_hi) s.price = p.c_hi;
  s.printed_max_loss = (p.a - p.c_hi) * (p.c_hi - c) / 2.0;
  s.max_loss = s.printed_max_loss / p.b;
  return s;
}

double bertrand_dp_deps(double a, double c0, double eps, double c) {
  double hi = (1.0 + eps / 2.0) * c0;
  return (a + c - 2.0 * hi) * c0 / (4.0 * std::hypot(a - hi, hi - c));
}

std::vector<BertrandSweepRow> bertrand_sweep(const std::vector<double>& eps, int cost_points) {
  check_eps_grid(eps);
  require(cost_points >= 2, "need at least two cost points");
  const double a = 1.0, c0 = a / 4.0;
  const double b = (a - c0) * (a - c0) / 4.0;
  auto price = [&](double e, double c) {
    double hi = (1.0 + e / 2.0) * c0;
    return 0.5 * (a + c - std::hypot(a - hi, hi - c));
  };
  std::vector<BertrandSweepRow> rows(eps.size());
  parallel_for(eps.size(), [&](std::size_t k) {
    double e = eps[k];
    BertrandParams p{a, b, (1.0 - e / 2.0) * c0, (1.0 + e / 2.0) * c0};
    BertrandSweepRow& row = rows[k];
    row.eps = e;
    row.b = b;
    double h = std::min(1e-6, e / 2.0);
    for (int j = 0; j < cost_points; ++j) {
      double c = p.c_lo + (p.c_hi - p.c_lo) * j / (cost_points - 1);
      if (j == cost_points - 1) c = p.c_hi;
      row.costs.push_back(c);
      row.prices.push_back(bertrand_pce(p, c).price);
      row.dp_deps.push_back((price(e + h, c) - price(e - h, c)) / (2.0 * h));
      row.dp_formula.push_back(bertrand_dp_deps(a, c0, e, c));
    }
    row.bound = 3.0 * e / 32.0 - e * e / 64.0;
    BertrandSolution lo = bertrand_pce(p, p.c_lo);
    row.max_loss = lo.max_loss;
    row.printed_max_loss = lo.printed_max_loss;
  });
  return rows;
}

}  // namespace pce
