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

#include "pce/compromise.hpp"

#include <algorithm>
#include <cmath>

#include "pce/lp.hpp"

namespace pce {

PlayValues::PlayValues(const GameTree& tree, const StrategyProfile& profile) {
  const std::size_t nn = tree.num_nodes();
  const std::size_t np = static_cast<std::size_t>(tree.num_players()) + 1;
  // Parents before children.
  std::vector<std::size_t> order{tree.root()};
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& n = tree.node(order[k]);
    if (order[k] == tree.root()) {
      std::vector<std::size_t> kids = n.children;
      std::sort(kids.begin(), kids.end());
      kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
      for (std::size_t c : kids) order.push_back(c);
    } else {
      for (std::size_t c : n.children) order.push_back(c);
    }
  }
  value_.assign(tree.num_states(), std::vector<std::vector<double>>(nn, std::vector<double>(np, 0.0)));
  for (std::size_t s = 0; s < tree.num_states(); ++s) {
    auto& val = value_[s];
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      std::size_t v = *it;
      const auto& n = tree.node(v);
      if (n.kind == NodeKind::kTerminal) {
        val[v] = n.payoffs[s];
      } else if (v == tree.root()) {
        val[v] = val[tree.root_child(s)];
      } else {
        const auto& x = profile.at(n.info_set);
        for (std::size_t k = 0; k < n.children.size(); ++k) {
          if (x[k] == 0.0) continue;
          for (std::size_t p = 0; p < np; ++p) val[v][p] += x[k] * val[n.children[k]][p];
        }
      }
    }
  }
}

PayoffTable payoff_table(const GameTree& tree, const PlayValues& values, const BeliefSystem& beliefs,
                         std::size_t info_set) {
  const auto& is = tree.info_set(info_set);
  const std::size_t owner = static_cast<std::size_t>(is.owner);
  PayoffTable t;
  t.states = beliefs.conceivable_states(info_set);
  if (t.states.empty()) throw Error("empty conceivable set at '" + is.id + "'");
  t.value.assign(is.actions.size(), std::vector<double>(t.states.size(), 0.0));
  for (std::size_t k = 0; k < t.states.size(); ++k) {
    std::size_t s = t.states[k];
    const auto& beta = beliefs.posterior[info_set][s];
    if (beta.size() != is.nodes.size())
      throw Error("missing posterior entry for " + is.id + "|" + tree.state_id(s));
    for (std::size_t q = 0; q < is.nodes.size(); ++q) {
      if (beta[q] == 0.0) continue;
      const auto& n = tree.node(is.nodes[q]);
      for (std::size_t a = 0; a < is.actions.size(); ++a)
        t.value[a][k] += beta[q] * values.at(s, n.children[a])[owner];
    }
  }
  return t;
}

std::vector<double> state_losses(const PayoffTable& table, const std::vector<double>& x) {
  const std::size_t m = table.value.size();
  const std::size_t K = table.states.size();
  std::vector<double> loss(K, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    double best = table.value[0][k], ev = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      best = std::max(best, table.value[a][k]);
      ev += x[a] * table.value[a][k];
    }
    loss[k] = best - ev;
  }
  return loss;
}

namespace {

std::vector<std::vector<double>> loss_matrix(const PayoffTable& table) {
  const std::size_t m = table.value.size();
  const std::size_t K = table.states.size();
  std::vector<std::vector<double>> L(m, std::vector<double>(K));
  for (std::size_t k = 0; k < K; ++k) {
    double best = table.value[0][k];
    for (std::size_t a = 1; a < m; ++a) best = std::max(best, table.value[a][k]);
    for (std::size_t a = 0; a < m; ++a) L[a][k] = best - table.value[a][k];
  }
  return L;
}

bool degenerate(const PayoffTable& table) {
  double scale = 0.0;
  for (const auto& row : table.value)
    for (double v : row) scale = std::max(scale, std::fabs(v));
  for (std::size_t a = 1; a < table.value.size(); ++a)
    for (std::size_t k = 0; k < table.states.size(); ++k)
      if (std::fabs(table.value[a][k] - table.value[0][k]) > 1e-12 * std::max(scale, 1.0)) return false;
  return true;
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

// min_x max_k sum_a L[a][k] x[a] over the simplex on `support`.
bool solve_restricted(const std::vector<std::vector<double>>& L, const std::vector<std::size_t>& support,
                      std::vector<double>& x, double& value) {
  const std::size_t r = support.size();
  const std::size_t K = L.front().size();
  LinearProgram lp;
  lp.objective.assign(r + 1, 0.0);
  lp.objective[r] = -1.0;
  for (std::size_t k = 0; k < K; ++k) {
    std::vector<double> row(r + 1, 0.0);
    for (std::size_t j = 0; j < r; ++j) row[j] = L[support[j]][k];
    row[r] = -1.0;
    lp.add_row(std::move(row), RowSense::kLessEqual, 0.0);
  }
  std::vector<double> ones(r + 1, 1.0);
  ones[r] = 0.0;
  lp.add_row(std::move(ones), RowSense::kEqual, 1.0);
  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::kOptimal) return false;
  x.assign(L.size(), 0.0);
  double sum = 0.0;
  for (std::size_t j = 0; j < r; ++j) sum += res.x[j];
  if (!(sum > 0.0)) return false;
  for (std::size_t j = 0; j < r; ++j) x[support[j]] = res.x[j] / sum;
  value = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    double l = 0.0;
    for (std::size_t a = 0; a < L.size(); ++a) l += L[a][k] * x[a];
    value = std::max(value, l);
  }
  return true;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t r = c.size();
  for (std::size_t i = r; i-- > 0;) {
    if (c[i] < n - r + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

constexpr std::size_t kMaxSupportLps = 5000;

}  // namespace

Compromise best_compromise_mixed(const PayoffTable& table) {
  const std::size_t m = table.value.size();
  const std::size_t K = table.states.size();
  Compromise out;
  if (degenerate(table)) {
    out.action.assign(m, 1.0 / static_cast<double>(m));
    out.value = max_of(state_losses(table, out.action));
    return out;
  }
  auto L = loss_matrix(table);
  double scale = 0.0;
  for (const auto& row : L)
    for (double v : row) scale = std::max(scale, v);
  const double tol = 1e-10 * scale;

  std::vector<std::size_t> all(m);
  for (std::size_t a = 0; a < m; ++a) all[a] = a;
  std::vector<double> x_full;
  double v_full;
  if (!solve_restricted(L, all, x_full, v_full)) throw Error("minimax linear program failed");

  // Pure candidates need no LP.
  for (std::size_t a = 0; a < m; ++a) {
    double v = 0.0;
    for (std::size_t k = 0; k < K; ++k) v = std::max(v, L[a][k]);
    if (v <= v_full + tol) {
      out.action.assign(m, 0.0);
      out.action[a] = 1.0;
      out.value = v;
      return out;
    }
  }
  std::size_t budget = kMaxSupportLps;
  for (std::size_t r = 2; r <= std::min(m, K + 1); ++r) {
    std::vector<std::size_t> c(r);
    for (std::size_t j = 0; j < r; ++j) c[j] = j;
    do {
      if (budget-- == 0) {
        out.action = x_full;
        out.value = v_full;
        return out;
      }
      std::vector<double> x;
      double v;
      if (solve_restricted(L, c, x, v) && v <= v_full + tol) {
        out.action = std::move(x);
        out.value = v;
        return out;
      }
    } while (next_combination(c, m));
  }
  out.action = x_full;
  out.value = v_full;
  return out;
}

Compromise best_compromise_pure(const PayoffTable& table) {
  const std::size_t m = table.value.size();
  auto L = loss_matrix(table);
  std::size_t best = 0;
  double best_v = 0.0;
  for (std::size_t a = 0; a < m; ++a) {
    double v = max_of(L[a]);
    if (a == 0 || v < best_v) {
      best = a;
      best_v = v;
    }
  }
  Compromise out;
  out.action.assign(m, 0.0);
  out.action[best] = 1.0;
  out.value = best_v;
  return out;
}

double expected_payoff(const GameTree& tree, const StrategyProfile& profile, const std::vector<double>& x,
                       std::size_t state, std::size_t info_set, const BeliefSystem& beliefs) {
  if (!beliefs.conceivable[info_set][state])
    throw Error("state '" + tree.state_id(state) + "' is not conceivable at '" + tree.info_set(info_set).id + "'");
  PlayValues values(tree, profile);
  PayoffTable t = payoff_table(tree, values, beliefs, info_set);
  std::size_t k = static_cast<std::size_t>(std::find(t.states.begin(), t.states.end(), state) - t.states.begin());
  double ev = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) ev += x[a] * t.value[a][k];
  return ev;
}

namespace {

void fill_losses(const PayoffTable& t, const std::vector<double>& x, LossReport& r) {
  r.states = t.states;
  r.per_state_loss = state_losses(t, x);
  r.max_loss = max_of(r.per_state_loss);
  r.best_action_per_state.assign(t.states.size(), 0);
  for (std::size_t k = 0; k < t.states.size(); ++k)
    for (std::size_t a = 1; a < t.value.size(); ++a)
      if (t.value[a][k] > t.value[r.best_action_per_state[k]][k]) r.best_action_per_state[k] = a;
}

}  // namespace

LossReport max_loss(const GameTree& tree, const StrategyProfile& profile, const std::vector<double>& x,
                    std::size_t info_set, const BeliefSystem& beliefs) {
  PlayValues values(tree, profile);
  PayoffTable t = payoff_table(tree, values, beliefs, info_set);
  LossReport r;
  r.info_set = info_set;
  fill_losses(t, x, r);
  return r;
}

LossReport loss_report(const GameTree& tree, const PlayValues& values, const StrategyProfile& profile,
                       const BeliefSystem& beliefs, std::size_t info_set, bool pure) {
  PayoffTable t = payoff_table(tree, values, beliefs, info_set);
  LossReport r;
  r.info_set = info_set;
  fill_losses(t, profile.at(info_set), r);
  Compromise c = pure ? best_compromise_pure(t) : best_compromise_mixed(t);
  r.best_compromise = c.action;
  r.compromise_value = c.value;
  r.deviation_gap = r.max_loss - c.value;
  return r;
}

}  // namespace pce
