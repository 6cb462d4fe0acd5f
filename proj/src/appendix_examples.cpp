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

#include "pce/appendix_examples.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

namespace pce {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParameters(what);
}

// Minimizes a function on [lo, hi]; returns the minimizer.
double golden_min(const std::function<double(double)>& g, double lo, double hi, int iters = 200) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double gc = g(c), gd = g(d);
  for (int k = 0; k < iters && b - a > 1e-15; ++k) {
    if (gc <= gd) {
      b = d, d = c, gd = gc;
      c = b - r * (b - a), gc = g(c);
    } else {
      a = c, c = d, gc = gd;
      d = a + r * (b - a), gd = g(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

DoubleAuctionSolution double_auction_pce() {
  // s = b/3 and b = (2 + s)/3, by Cramer's rule.
  const double m11 = 1.0, m12 = -1.0 / 3.0, m21 = -1.0 / 3.0, m22 = 1.0;
  const double r1 = 0.0, r2 = 2.0 / 3.0;
  double det = m11 * m22 - m12 * m21;
  DoubleAuctionSolution d;
  d.seller_floor = (r1 * m22 - m12 * r2) / det;
  d.buyer_ceiling = (m11 * r2 - m21 * r1) / det;
  d.endpoint_residual = std::max(std::fabs(d.seller_floor - d.buyer_ceiling / 3.0),
                                 std::fabs(d.buyer_ceiling - (2.0 + d.seller_floor) / 3.0));
  if (std::fabs(d.seller_floor - 0.25) > 1e-12 || std::fabs(d.buyer_ceiling - 0.75) > 1e-12)
    throw Error("double auction: endpoint fixed point is not (1/4, 3/4)");
  return d;
}

double double_auction_seller_bid(double vs) { return std::max(vs, 0.25 + 2.0 * vs / 3.0); }
double double_auction_buyer_bid(double vb) { return std::min(vb, 1.0 / 12.0 + 2.0 * vb / 3.0); }

double double_auction_seller_loss(double vs) {
  if (vs >= 1.0) return 0.0;
  return std::max(0.25 - vs / (12.0 * (1.0 - vs)), 0.0);
}

double double_auction_buyer_loss(double vb) {
  if (vb <= 0.0) return 0.0;
  return std::max(0.25 - (1.0 - vb) / (12.0 * vb), 0.0);
}

double double_auction_seller_abs_loss(double vs) {
  if (vs >= 0.75) return 0.0;
  return (0.75 - double_auction_seller_bid(vs)) / 2.0;
}

double double_auction_buyer_abs_loss(double vb) {
  if (vb <= 0.25) return 0.0;
  return (double_auction_buyer_bid(vb) - 0.25) / 2.0;
}

double double_auction_seller_loss_on_grid(double vs, double s, const std::vector<double>& vb_grid) {
  double worst = 0.0;
  for (double vb : vb_grid) {
    double b = double_auction_buyer_bid(vb);
    double got = s <= b ? (s + b) / 2.0 - vs : 0.0;
    worst = std::max(worst, std::max(b - vs, 0.0) - got);
  }
  return worst;
}

double double_auction_buyer_loss_on_grid(double vb, double b, const std::vector<double>& vs_grid) {
  double worst = 0.0;
  for (double vs : vs_grid) {
    double s = double_auction_seller_bid(vs);
    double got = s <= b ? vb - (s + b) / 2.0 : 0.0;
    worst = std::max(worst, std::max(vb - s, 0.0) - got);
  }
  return worst;
}

std::string to_string(TransferRule r) {
  switch (r) {
    case TransferRule::kPayAsBid:
      return "pay_as_bid";
    case TransferRule::kProportional:
      return "proportional";
    case TransferRule::kAdditive:
      return "additive";
  }
  return "";
}

TransferRule parse_transfer_rule(const std::string& name) {
  if (name == "pay_as_bid" || name == "pay-as-bid") return TransferRule::kPayAsBid;
  if (name == "proportional") return TransferRule::kProportional;
  if (name == "additive") return TransferRule::kAdditive;
  throw InvalidParameters("unknown transfer rule '" + name + "'");
}

void check(const PublicGoodParams& p) {
  require(p.n >= 2, "public good needs n >= 2");
  require(std::isfinite(p.c) && p.c > 0.0, "cost must be positive");
  require(std::isfinite(p.v_bar) && p.v_bar > 0.0, "value cap must be positive");
  require(p.c <= (p.n - 1) * p.v_bar / 2.0, "cost must satisfy c <= (n - 1) v_bar / 2");
}

double public_good_bid(const PublicGoodParams& p, double v) {
  switch (p.rule) {
    case TransferRule::kPayAsBid:
      return v / 2.0;
    case TransferRule::kProportional:
      return v / 2.0 - p.c + 0.5 * std::sqrt(v * v + 4.0 * p.c * p.c);
    case TransferRule::kAdditive:
      return p.n * v / (2.0 * p.n - 1.0);
  }
  return 0.0;
}

bool public_good_provided(double c, const std::vector<double>& x) {
  double total = 0.0;
  for (double xi : x) total += xi;
  return total >= c;
}

double public_good_transfer(TransferRule rule, double c, const std::vector<double>& x, std::size_t i) {
  if (!public_good_provided(c, x)) return 0.0;
  double total = 0.0;
  for (double xi : x) total += xi;
  switch (rule) {
    case TransferRule::kPayAsBid:
      return x[i];
    case TransferRule::kProportional:
      return c * x[i] / total;
    case TransferRule::kAdditive:
      return c / x.size() + x[i] - total / x.size();
  }
  return 0.0;
}

PublicGoodSolution public_good_pce(const PublicGoodParams& p, int interior_points) {
  check(p);
  require(interior_points >= 1, "need at least one interior point");
  PublicGoodSolution s;
  const double n = p.n;
  switch (p.rule) {
    case TransferRule::kPayAsBid:
      s.inefficiency = 0.5;
      break;
    case TransferRule::kProportional:
      s.inefficiency = n / (2.0 * n + 1.0);
      break;
    case TransferRule::kAdditive:
      s.inefficiency = (n - 1.0) / (2.0 * n - 1.0);
      break;
  }
  for (int k = 1; k <= interior_points; ++k) {
    double v = p.v_bar * k / (interior_points + 1);
    double x = public_good_bid(p, v);
    // Others' contributions sum to exactly c, so the good is provided anyway.
    std::vector<double> profile(p.n, p.c / (p.n - 1));
    profile[0] = x;
    double pay = public_good_transfer(p.rule, p.c, profile, 0);
    s.balancing_residual = std::max(s.balancing_residual, std::fabs(std::max(v - x, 0.0) - pay));
  }
  const int grid = 10000;
  for (int k = 1; k <= grid; ++k) {
    double v = p.v_bar * k / grid;
    s.individual_loss_sup = std::max(s.individual_loss_sup, 1.0 - public_good_bid(p, v) / v);
  }
  return s;
}

double forecast_lambda(double eps, double delta) {
  // 1 - eps (1 - delta) and delta + eps (1 - delta), arranged to be exact at
  // eps = 0 and eps = 1.
  double d1 = (1.0 - eps) + eps * delta;
  double d2 = eps + delta * (1.0 - eps);
  return eps / 2.0 * (delta / d1 + 1.0 / d2);
}

UnknownPriorForecast forecast_unknown_prior(double eps, double delta, double theta0, double z) {
  require(std::isfinite(eps) && eps >= 0.0 && eps <= 1.0, "eps must lie in [0, 1]");
  require(std::isfinite(delta) && delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  require(std::isfinite(theta0) && theta0 >= 0.0 && theta0 <= 1.0, "theta0 must lie in [0, 1]");
  require(std::isfinite(z) && z >= 0.0 && z <= 1.0, "z must lie in [0, 1]");
  UnknownPriorForecast r;
  r.lambda = forecast_lambda(eps, delta);
  r.action = (1.0 - r.lambda) * z + r.lambda * theta0;
  // Posterior mean with density value fz at the signal.
  auto mean = [&](double fz) { return ((1.0 - eps) * fz * z + eps * theta0) / ((1.0 - eps) * fz + eps); };
  double at_hi = mean(1.0 / delta), at_lo = mean(delta);
  if (z >= theta0) {
    r.high = at_hi, r.low = at_lo;
  } else {
    r.high = at_lo, r.low = at_hi;
  }
  if (std::fabs(r.action - 0.5 * (r.high + r.low)) > 1e-12)
    throw Error("forecast: weighted average differs from the midpoint of the extreme means");
  return r;
}

Grid1d read_grid_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, "cannot open file");
  Grid1d out;
  std::string line;
  int row = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    ls.imbue(std::locale::classic());
    std::string a, b;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b)) throw SchemaError(path + ":" + std::to_string(row), "expected two columns");
    try {
      std::size_t pa = 0, pb = 0;
      double x = std::stod(a, &pa), w = std::stod(b, &pb);
      if (!std::isfinite(x) || !std::isfinite(w)) throw SchemaError(path + ":" + std::to_string(row), "non-finite value");
      if (w < 0.0) throw SchemaError(path + ":" + std::to_string(row), "negative weight");
      out.emplace_back(x, w);
    } catch (const std::invalid_argument&) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw SchemaError(path + ":" + std::to_string(row), "not a number");
    }
    first = false;
  }
  if (out.empty()) throw SchemaError(path, "no data rows");
  std::sort(out.begin(), out.end());
  return out;
}

double piecewise_density(const Grid1d& f, double t) {
  if (f.empty() || t < 0.0 || t > 1.0 || t < f.front().first || t > f.back().first) return 0.0;
  auto it = std::lower_bound(f.begin(), f.end(), t, [](const auto& pt, double v) { return pt.first < v; });
  if (it->first == t) return it->second;
  auto prev = it - 1;
  double u = (t - prev->first) / (it->first - prev->first);
  return prev->second + u * (it->second - prev->second);
}

UnknownNoiseForecast forecast_unknown_noise(double eps, double delta, const Grid1d& f, const Grid1d& g0, double z,
                                            double step) {
  require(std::isfinite(eps) && eps >= 0.0 && eps <= 1.0, "eps must lie in [0, 1]");
  require(std::isfinite(delta) && delta > 0.0, "delta must be positive");
  require(std::isfinite(z), "z must be finite");
  require(std::isfinite(step) && step > 0.0, "step must be positive");
  require(!f.empty() && !g0.empty(), "prior and noise grids must be nonempty");
  double gsum = 0.0;
  for (const auto& [y, w] : g0) {
    require(y >= -delta - 1e-12 && y <= delta + 1e-12, "noise support must lie in [-delta, delta]");
    gsum += w;
  }
  require(gsum > 0.0, "noise weights must not all be zero");

  double base_num = 0.0, base_den = 0.0;
  for (const auto& [y, w] : g0) {
    double d = piecewise_density(f, z - y) * w / gsum;
    base_num += (z - y) * d;
    base_den += d;
  }
  auto ratio = [&](double x) {
    double fx = piecewise_density(f, z - x);
    double den = eps * fx + (1.0 - eps) * base_den;
    if (den <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (eps * fx * (z - x) + (1.0 - eps) * base_num) / den;
  };

  std::size_t count = static_cast<std::size_t>(std::floor(2.0 * delta / step)) + 1;
  require(count <= 10000000, "noise grid too fine");
  std::vector<double> xs;
  xs.reserve(count + 1);
  for (std::size_t k = 0; k < count; ++k) xs.push_back(-delta + k * step);
  if (delta - xs.back() > 1e-15) xs.push_back(delta);

  UnknownNoiseForecast r;
  bool any = false;
  double hi = -std::numeric_limits<double>::infinity(), lo = std::numeric_limits<double>::infinity();
  std::size_t khi = 0, klo = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    double v = ratio(xs[k]);
    if (std::isnan(v)) continue;
    any = true;
    if (v > hi) hi = v, khi = k;
    if (v < lo) lo = v, klo = k;
  }
  if (!any) throw Error("forecast: posterior undefined at z (all densities vanish)");
  r.x_high = xs[khi];
  r.x_low = xs[klo];

  // Polish around the grid optimum; keep the grid value unless improved.
  auto polish = [&](std::size_t k, double sign, double& best, double& at) {
    double a = xs[k > 0 ? k - 1 : 0], b = xs[k + 1 < xs.size() ? k + 1 : k];
    if (b <= a) return;
    double x = golden_min(
        [&](double t) {
          double v = ratio(t);
          return std::isnan(v) ? std::numeric_limits<double>::infinity() : -sign * v;
        },
        a, b);
    double v = ratio(x);
    if (!std::isnan(v) && sign * v > sign * best) best = v, at = x;
  };
  polish(khi, 1.0, hi, r.x_high);
  polish(klo, -1.0, lo, r.x_low);

  r.high = hi;
  r.low = lo;
  r.action = 0.5 * (hi + lo);
  r.base_mean = base_den > 0.0 ? base_num / base_den : std::numeric_limits<double>::quiet_NaN();
  return r;
}

namespace {

// Posterior over the atoms after signal z. An atom equal to z carries point
// mass evidence, which dominates the uniform part whenever eps < 1.
std::vector<double> signal_posterior(const DiscretePrior& prior, double eps, double z) {
  std::vector<double> post(prior.atoms.size(), 0.0);
  double total = 0.0;
  if (eps < 1.0) {
    for (std::size_t k = 0; k < prior.atoms.size(); ++k)
      if (std::fabs(prior.atoms[k] - z) <= 1e-12) total += post[k] = prior.weights[k];
  }
  if (total == 0.0) {
    post = prior.weights;
    for (double w : post) total += w;
  }
  for (double& p : post) p /= total;
  return post;
}

}  // namespace

QuadraticLossCheck quadratic_loss_check(const std::vector<DiscretePrior>& family, double theta0, double eps, double z,
                                        double a) {
  require(!family.empty(), "family must be nonempty");
  require(std::isfinite(eps) && eps >= 0.0 && eps <= 1.0, "eps must lie in [0, 1]");
  require(std::isfinite(z) && std::isfinite(a) && std::isfinite(theta0), "z, a and theta0 must be finite");
  QuadraticLossCheck out;
  for (std::size_t m = 0; m < family.size(); ++m) {
    const DiscretePrior& prior = family[m];
    require(!prior.atoms.empty() && prior.atoms.size() == prior.weights.size(),
            "prior " + std::to_string(m) + ": atoms and weights must be nonempty and aligned");
    double wsum = 0.0, mean = 0.0;
    for (std::size_t k = 0; k < prior.atoms.size(); ++k) {
      require(prior.atoms[k] >= 0.0 && prior.atoms[k] <= 1.0, "prior " + std::to_string(m) + ": atom outside [0, 1]");
      require(prior.weights[k] >= 0.0, "prior " + std::to_string(m) + ": negative weight");
      wsum += prior.weights[k];
      mean += prior.weights[k] * prior.atoms[k];
    }
    require(wsum > 0.0, "prior " + std::to_string(m) + ": weights sum to zero");
    require(std::fabs(mean / wsum - theta0) <= 1e-12, "prior " + std::to_string(m) + ": mean differs from theta0");

    std::vector<double> post = signal_posterior(prior, eps, z);
    auto expected_sq = [&](double act) {
      double e = 0.0;
      for (std::size_t k = 0; k < post.size(); ++k) e += post[k] * (act - prior.atoms[k]) * (act - prior.atoms[k]);
      return e;
    };
    // Direct: best action found by search, not by the mean.
    double best = golden_min(expected_sq, 0.0, 1.0);
    double direct = expected_sq(a) - std::min(expected_sq(best), expected_sq(a));
    double pm = 0.0;
    for (std::size_t k = 0; k < post.size(); ++k) pm += post[k] * prior.atoms[k];
    out.direct = std::max(out.direct, direct);
    out.squared = std::max(out.squared, (a - pm) * (a - pm));
  }
  return out;
}

}  // namespace pce
