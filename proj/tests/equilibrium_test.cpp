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

#include "doctest.h"
#include "games.hpp"
#include "pce/equilibrium.hpp"
#include "pce/markets.hpp"
#include "pce/oracle.hpp"
#include "pce/profile.hpp"

using namespace pce;
using pce::testing::data_file;
using pce::testing::guessing;

TEST_CASE("verify: guessing game") {
  GameTree g = guessing();
  Candidate half = parse_candidate(g, data_file("guessing_mixed.json"));
  VerificationReport r = verify_pce(g, half.profile, half.beliefs);
  CHECK(r.accepted);
  CHECK(r.global_max_loss[0] == doctest::Approx(0.5).epsilon(1e-12));

  Candidate pure = parse_candidate(g, data_file("guessing_pure_l.json"));
  VerificationReport rm = verify_pce(g, pure.profile, pure.beliefs);
  CHECK_FALSE(rm.accepted);
  REQUIRE(rm.losses.size() == 1);
  CHECK(rm.losses[0].deviation_gap == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rm.first_violation.find("phi1") != std::string::npos);

  VerifyOptions po;
  po.mode = Mode::kPure;
  CHECK(verify_pce(g, pure.profile, pure.beliefs, po).accepted);
}

TEST_CASE("verify: single-state game at its subgame-perfect profile") {
  GameTree g = deserialize(data_file("two_level.json"));
  Candidate c = parse_candidate(g, R"({"strategy": {"p1": {"in": 1, "out": 0}, "p2": {"share": 1, "fight": 0}}})");
  VerificationReport r = verify_pce(g, c.profile, c.beliefs);
  CHECK(r.accepted);
  for (const auto& l : r.losses) CHECK(l.max_loss == 0.0);

  Candidate bad = parse_candidate(g, R"({"strategy": {"p1": {"in": 0, "out": 1}, "p2": {"share": 0, "fight": 1}}})");
  CHECK_FALSE(verify_pce(g, bad.profile, bad.beliefs).accepted);
}

TEST_CASE("verify: inconsistent beliefs are rejected") {
  GameTree chain = deserialize(pce::testing::kChanceChain);
  Candidate c = parse_candidate(chain, R"({"strategy": {"phi": {"go": 1, "stop": 0}},
                                          "posterior": {"phi|w": {"m_u": 0.5, "m_d": 0.5}}})");
  VerificationReport r = verify_pce(chain, c.profile, c.beliefs);
  CHECK_FALSE(r.accepted);
  CHECK_FALSE(r.consistency.violations.empty());
}

TEST_CASE("verify: relative tolerance scales with payoffs") {
  GameTree g = guessing();
  Candidate c = parse_candidate(g, R"({"strategy": {"phi1": {"l": 0.5000000004, "h": 0.4999999996}}})");
  VerifyOptions o;
  o.tol = 1e-10;
  CHECK_FALSE(verify_pce(g, c.profile, c.beliefs, o).accepted);
  o.tol = 1e-9;
  CHECK(verify_pce(g, c.profile, c.beliefs, o).accepted);
}

TEST_CASE("search: iterate on the guessing game") {
  GameTree g = guessing();
  SearchResult r = search_pce(g, SearchMethod::kIterate);
  REQUIRE(r.found.size() == 1);
  CHECK(r.converged);
  const auto& x = r.found[0].profile.at(g.info_set_index("phi1"));
  CHECK(x[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r.found[0].report.accepted);
}

TEST_CASE("search: expost") {
  GameTree m = deserialize(pce::testing::kStateMatching);
  SearchResult r = search_pce(m, SearchMethod::kExPost);
  REQUIRE_FALSE(r.found.empty());
  CHECK(r.found[0].profile.at(m.info_set_index("phi1")) == std::vector<double>{0.0, 1.0});
  for (const auto& l : r.found[0].report.losses) CHECK(l.max_loss == 0.0);

  GameTree two = deserialize(data_file("two_level.json"));
  SearchResult b = search_pce(two, SearchMethod::kExPost);
  REQUIRE_FALSE(b.found.empty());
  CHECK(b.found[0].profile.at(two.info_set_index("p1")) == std::vector<double>{1.0, 0.0});
  CHECK(b.found[0].profile.at(two.info_set_index("p2")) == std::vector<double>{1.0, 0.0});

  CHECK(search_pce(guessing(), SearchMethod::kExPost).found.empty());
}

TEST_CASE("search: discretized Cournot lands within a grid step of the closed form") {
  CournotParams p{1.9, 2.1, 1.05, 0.95};
  double q = cournot_pce(p).quantity;
  GridSpec grid{{{"q", 0.0, 1.0, 0.1}}};
  GameTree g = GameTree::build(discretize_example("cournot", grid, {{"a_lo", 1.9}, {"a_hi", 2.1}, {"b_lo", 1.05},
                                                                    {"b_hi", 0.95}, {"n_mix", 0}}));
  SearchResult r = search_pce(g, SearchMethod::kEnumerate);
  REQUIRE_FALSE(r.found.empty());
  for (const auto& f : r.found)
    for (std::size_t i : g.strategic_info_sets()) {
      std::size_t a = pure_action(f.profile.at(i));
      double qa = std::stod(g.info_set(i).actions[a].substr(2));
      CHECK(std::fabs(qa - q) <= 0.1 + 1e-9);
    }
}

TEST_CASE("search options are validated") {
  SearchOptions o;
  o.step = 0.0;
  CHECK_THROWS_AS(search_pce(guessing(), SearchMethod::kIterate, o), Error);
}

TEST_CASE("elimination of dominated actions") {
  EliminationResult g = eliminate_dominated(guessing());
  CHECK(g.trace.empty());

  GameTree a = deserialize(pce::testing::kGuessingAbstain);
  EliminationResult ra = eliminate_dominated(a);
  REQUIRE(ra.trace.size() == 1);
  CHECK(ra.trace[0].round == 1);
  CHECK(a.info_set(ra.trace[0].info_set).actions[ra.trace[0].action] == "abstain");

  GameTree m = deserialize(pce::testing::kMixedDominance);
  EliminationResult rm = eliminate_dominated(m);
  REQUIRE(rm.trace.size() == 1);
  CHECK(m.info_set(rm.trace[0].info_set).actions[rm.trace[0].action] == "a2");
  // Neither pure alternative dominates a2 on its own.
  CHECK(rm.trace[0].dominator[0] > 0.0);
  CHECK(rm.trace[0].dominator[2] > 0.0);
}

TEST_CASE("pure profile count") {
  CHECK(count_pure_profiles(guessing()) == 2);
  CHECK(count_pure_profiles(deserialize(data_file("two_level.json"))) == 4);
}
