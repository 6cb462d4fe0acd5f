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

#ifndef PCE_TESTS_RANDOM_GAMES_HPP_
#define PCE_TESTS_RANDOM_GAMES_HPP_

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "pce/game_model.hpp"

namespace pce::testing {

struct RandomGameShape {
  int max_states = 3;
  int max_info_sets = 3;
  int max_actions = 3;
  bool allow_single_state = true;
};

// Player 1 moves first, with one set per block of a random partition of the
// states. If sets remain, player 2 moves after some of player 1's actions,
// pooled or split by player 1's action. Payoffs are multiples of 0.01 in
// [-1, 1].
inline GameSpec random_game(std::mt19937_64& rng, const RandomGameShape& shape = {}) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };
  auto pay = [&] { return uni(-100, 100) / 100.0; };

  GameSpec g;
  int ns = uni(shape.allow_single_state ? 1 : 2, shape.max_states);
  for (int s = 0; s < ns; ++s) g.states.push_back("s" + std::to_string(s));

  // Partition of states into player 1's blocks.
  int max_blocks = std::min(ns, shape.max_info_sets);
  int nb = uni(1, max_blocks);
  std::vector<int> block(ns);
  for (int s = 0; s < ns; ++s) block[s] = s < nb ? s : uni(0, nb - 1);
  std::shuffle(block.begin(), block.end(), rng);

  int left = shape.max_info_sets - nb;
  bool second = left > 0 && coin(0.75);
  g.n_players = second ? 2 : 1;
  int n_a1 = uni(2, shape.max_actions);
  int n_a2 = uni(2, shape.max_actions);

  // Which of player 1's actions lead to player 2.
  std::vector<bool> cont(n_a1, false);
  if (second) {
    for (int a = 0; a < n_a1; ++a) cont[a] = coin(0.7);
    if (std::none_of(cont.begin(), cont.end(), [](bool c) { return c; })) cont[uni(0, n_a1 - 1)] = true;
  }
  int n_cont = static_cast<int>(std::count(cont.begin(), cont.end(), true));
  bool split = second && n_cont <= left && coin(0.5);

  auto terminal = [&](const std::string& id) {
    NodeSpec t;
    t.id = id;
    t.kind = NodeKind::kTerminal;
    for (int s = 0; s < ns; ++s) {
      std::vector<double> row{0.0};
      for (int p = 0; p < g.n_players; ++p) row.push_back(pay());
      t.payoffs.push_back(row);
    }
    return t;
  };

  NodeSpec root;
  root.id = "root";
  root.kind = NodeKind::kDecision;
  root.owner = 0;
  root.info_set = "root";
  InfoSetSpec root_set{"root", 0, {}, {"root"}};
  for (int s = 0; s < ns; ++s) {
    root.children[g.states[s]] = "n" + std::to_string(s);
    root_set.actions.push_back(g.states[s]);
  }
  g.nodes.push_back(root);
  g.info_sets.push_back(root_set);

  std::vector<InfoSetSpec> p1(nb), p2;
  for (int b = 0; b < nb; ++b) {
    p1[b].id = "p1_b" + std::to_string(b);
    p1[b].owner = 1;
    for (int a = 0; a < n_a1; ++a) p1[b].actions.push_back("a" + std::to_string(a));
  }
  if (second) {
    int count = split ? n_cont : 1;
    p2.resize(count);
    for (int k = 0; k < count; ++k) {
      p2[k].id = "p2_" + std::to_string(k);
      p2[k].owner = 2;
      for (int a = 0; a < n_a2; ++a) p2[k].actions.push_back("c" + std::to_string(a));
    }
  }

  std::vector<NodeSpec> later;
  for (int s = 0; s < ns; ++s) {
    NodeSpec n;
    n.id = "n" + std::to_string(s);
    n.kind = NodeKind::kDecision;
    n.owner = 1;
    n.info_set = p1[block[s]].id;
    p1[block[s]].nodes.push_back(n.id);
    int k = 0;
    for (int a = 0; a < n_a1; ++a) {
      std::string child = n.id + "_a" + std::to_string(a);
      n.children["a" + std::to_string(a)] = child;
      if (!cont[a]) {
        later.push_back(terminal(child));
        continue;
      }
      NodeSpec m;
      m.id = child;
      m.kind = NodeKind::kDecision;
      m.owner = 2;
      InfoSetSpec& set = p2[split ? k : 0];
      ++k;
      m.info_set = set.id;
      set.nodes.push_back(child);
      for (int c = 0; c < n_a2; ++c) {
        std::string leaf = child + "_c" + std::to_string(c);
        m.children["c" + std::to_string(c)] = leaf;
        later.push_back(terminal(leaf));
      }
      later.push_back(m);
    }
    g.nodes.push_back(n);
  }
  for (auto& n : later) g.nodes.push_back(n);
  for (auto& s : p1) g.info_sets.push_back(s);
  for (auto& s : p2) g.info_sets.push_back(s);
  return g;
}

// Same game with every payoff multiplied by `factor`.
inline GameSpec scaled(GameSpec g, double factor) {
  for (auto& n : g.nodes)
    for (auto& row : n.payoffs)
      for (auto& v : row) v *= factor;
  return g;
}

}  // namespace pce::testing

#endif  // PCE_TESTS_RANDOM_GAMES_HPP_
