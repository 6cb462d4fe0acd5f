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

#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "pce/equilibrium.hpp"
#include "pce/info_trade.hpp"
#include "pce/markets.hpp"
#include "pce/oracle.hpp"

using namespace pce;

TEST_CASE("grid dimensions") {
  CHECK(GridDim{"x", 0.0, 0.3, 0.1}.count() == 4);
  CHECK(GridDim{"x", 0.0, 1.0, 0.25}.points() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(GridDim{"x", 0.5, 0.5, 0.1}.count() == 1);
  CHECK_THROWS_AS(GridDim({"x", 1.0, 0.0, 0.1}).count(), InvalidParameters);
  CHECK_THROWS_AS(GridDim({"x", 0.0, 1.0, 0.0}).count(), InvalidParameters);
  GridSpec g{{{"x", 0, 1, 0.5}}};
  CHECK(g.has("x"));
  CHECK_THROWS_AS(g.at("y"), InvalidParameters);
}

TEST_CASE("static oracle: certain Cournot") {
  CournotParams p{1.0, 1.0, 1.0, 1.0};
  OracleResult r = cournot_oracle(p, 1.0 / 3, 1e-3, 0);
  CHECK(std::fabs(r.actions[r.argmin] - 1.0 / 3) <= 1e-3);
  CHECK(r.value <= 1e-6);
}

TEST_CASE("static oracle: Cournot benchmark") {
  CournotParams p{1.9, 2.1, 1.05, 0.95};
  CournotSolution s = cournot_pce(p);
  OracleResult r = cournot_oracle(p, s.quantity, 1e-3);
  CHECK(std::fabs(r.actions[r.argmin] - s.quantity) <= 1e-3);
  CHECK(std::fabs(r.value - 0.01) <= 1e-4);
  CHECK(r.worst_state <= 1);
  std::ostringstream csv;
  write_oracle_csv(csv, r, {});
  CHECK(csv.str().rfind("action,", 0) == 0);
}

TEST_CASE("static oracle: guessing table over a pure grid") {
  // Actions 0 and 1 with payoff 1 on a match.
  StaticPayoff pay = [](double own, double, std::size_t s) { return own == static_cast<double>(s) ? 1.0 : 0.0; };
  OracleResult r = static_minimax_oracle(pay, {0.0, 1.0}, {0.0, 0.0});
  CHECK(r.value == 1.0);
  CHECK(r.argmin == 0);
  StaticPayoff nan = [](double, double, std::size_t) { return std::nan(""); };
  CHECK_THROWS_AS(static_minimax_oracle(nan, {0.0}, {0.0}), Error);
}

TEST_CASE("static oracle: Bertrand and Spence agree with the closed forms") {
  BertrandParams bp{1.0, 1.0, 0.0, 0.5};
  BertrandSolution bs = bertrand_pce(bp, 0.0);
  OracleResult br = bertrand_oracle(bp, 0.0, 1e-3);
  CHECK(std::fabs(br.actions[br.argmin] - bs.price) <= 1e-3);

  SpenceSolution sp = spence_pce({1.0, 0.25}, SpenceKind::kSeparating);
  OracleResult hi = spence_wage_oracle(sp.after_high, sp.wage_high, 1e-3);
  CHECK(hi.actions[hi.argmin] == sp.wage_high);
}

TEST_CASE("discretize: trade_buyer structure") {
  GridSpec g{{{"x", 0.0, 1.0, 0.25}, {"y", 0.0, 1.0, 0.25}, {"p", 0.0, 1.0, 0.25}}};
  GameTree t = GameTree::build(discretize_example("trade_buyer", g));
  CHECK(t.num_states() == 25);
  std::size_t first = t.root_child(0);
  CHECK(t.node(first).owner == 1);
  std::set<std::string> seller_sets;
  for (std::size_t i : t.strategic_info_sets())
    if (t.info_set(i).owner == 2) seller_sets.insert(t.info_set(i).id);
  CHECK(seller_sets.size() == 25);  // one per (x, p)
}

TEST_CASE("discretize: seller's set after x = 0.5 sees every y") {
  GridSpec g{{{"x", 0.0, 1.0, 0.5}, {"y", 0.0, 1.0, 0.5}, {"p", 0.0, 1.0, 0.5}}};
  GameTree t = GameTree::build(discretize_example("trade_seller", g));
  bool seen = false;
  for (std::size_t i : t.strategic_info_sets()) {
    if (t.info_set(i).owner != 2) continue;
    const auto& id = t.info_set(i).id;
    if (id.find("x=0.5") == std::string::npos) continue;
    seen = true;
    auto states = feasible_states(t, id);
    CHECK(states.size() == 3);
    for (const auto& s : states) CHECK(s.find("x=0.5") != std::string::npos);
  }
  CHECK(seen);
}

TEST_CASE("discretize: Bertrand and Spence encodings") {
  GridSpec b{{{"p", 0.0, 1.0, 0.25}, {"c", 0.0, 0.5, 0.25}}};
  GameTree tb = GameTree::build(discretize_example("bertrand", b));
  CHECK(tb.num_states() == 9);
  for (std::size_t i : tb.strategic_info_sets()) CHECK(feasible_states(tb, tb.info_set(i).id).size() == 3);

  GridSpec s{{{"theta", 0.0, 1.0, 0.25}, {"w", 0.0, 1.0, 0.5}}};
  GameTree ts = GameTree::build(discretize_example("spence", s));
  CHECK(ts.num_states() == 10);
  int firm_sets = 0;
  for (std::size_t i : ts.strategic_info_sets()) {
    const auto& set = ts.info_set(i);
    if (set.owner == 1) CHECK(set.nodes.size() == 1);
    else ++firm_sets;
  }
  CHECK(firm_sets == 4);  // two firms, keyed by e only
}

TEST_CASE("discretize: errors") {
  CHECK_THROWS_AS(discretize_example("nope", {}), InvalidParameters);
  GridSpec big{{{"x", 0.0, 1.0, 0.01}, {"y", 0.0, 1.0, 0.01}, {"p", 0.0, 1.0, 0.01}}};
  CHECK_THROWS_AS(discretize_example("trade_buyer", big, {}, 1000), InvalidParameters);
}

TEST_CASE("two-stage trade oracle") {
  std::vector<double> g = GridDim{"g", 0.0, 1.0, 0.05}.points();
  TradeOracleResult b = two_stage_trade_oracle(Side::kBuyer, g, g, g);
  CHECK(0.25 >= b.minimizer_lo - 0.05);
  CHECK(0.25 <= b.minimizer_hi + 0.05);
  CHECK(std::fabs(b.value - 0.125) <= 0.01);

  TradeOracleResult s = two_stage_trade_oracle(Side::kSeller, g, g, g);
  for (std::size_t k = 0; k < s.prices.size(); ++k)
    if (s.prices[k] == 0.75) CHECK(s.max_loss[k] <= s.value + 1e-12);
  CHECK(std::fabs(s.value - 1.0 / 16) <= 0.01);

  TradeOracleResult one = two_stage_trade_oracle(Side::kBuyer, g, {0.5}, {0.5});
  CHECK(one.value <= 1e-12);
}

TEST_CASE("discretize: unknown parameters are rejected") {
  GridSpec g{{{"q", 0.0, 1.0, 0.5}}};
  CHECK_THROWS_AS(discretize_example("cournot", g, {{"a_low", 1.0}}), InvalidParameters);
  CHECK_NOTHROW(discretize_example("cournot", g, {{"n_mix", 0}}));
}
