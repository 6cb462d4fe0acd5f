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

#include "pce/game_model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace pce {

using nlohmann::json;

SchemaError::SchemaError(std::string path, const std::string& message)
    : Error(path + ": " + message), path_(std::move(path)) {}

namespace {

std::string join_violations(const std::vector<Violation>& v) {
  std::ostringstream out;
  out << "invalid game";
  for (const Violation& x : v) {
    out << "; ";
    if (!x.subject.empty()) out << x.subject << ": ";
    out << x.rule;
  }
  return out.str();
}

}  // namespace

InvalidGame::InvalidGame(std::vector<Violation> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

ValidationResult validate(const GameSpec& spec) {
  ValidationResult res;
  auto fail = [&](const std::string& subject, const std::string& rule) {
    res.violations.push_back({subject, rule});
  };

  if (spec.states.empty()) fail("", "state space is empty");
  {
    std::set<std::string> seen;
    for (const auto& s : spec.states)
      if (!seen.insert(s).second) fail(s, "duplicate state identifier");
  }
  if (spec.n_players < 1) fail("", "n_players must be at least 1");

  std::unordered_map<std::string, std::size_t> node_at, set_at;
  for (std::size_t i = 0; i < spec.nodes.size(); ++i)
    if (!node_at.emplace(spec.nodes[i].id, i).second) fail(spec.nodes[i].id, "duplicate node identifier");
  for (std::size_t i = 0; i < spec.info_sets.size(); ++i)
    if (!set_at.emplace(spec.info_sets[i].id, i).second)
      fail(spec.info_sets[i].id, "duplicate information set identifier");

  const std::size_t n_states = spec.states.size();
  const std::size_t n_payoffs = static_cast<std::size_t>(std::max(spec.n_players, 0)) + 1;

  // Membership: which information set lists each node.
  std::unordered_map<std::string, std::string> member_of;
  for (const auto& is : spec.info_sets) {
    if (is.owner < 0 || is.owner > spec.n_players) fail(is.id, "owner out of range");
    if (is.nodes.empty()) fail(is.id, "information set has no nodes");
    std::set<std::string> acts(is.actions.begin(), is.actions.end());
    if (is.actions.empty()) fail(is.id, "information set has no actions");
    if (acts.size() != is.actions.size()) fail(is.id, "duplicate action identifier");
    for (const auto& n : is.nodes) {
      auto it = node_at.find(n);
      if (it == node_at.end()) {
        fail(is.id, "unknown node '" + n + "'");
        continue;
      }
      auto [pos, fresh] = member_of.emplace(n, is.id);
      if (!fresh) {
        fail(n, "node in multiple information sets");
        continue;
      }
      const NodeSpec& node = spec.nodes[it->second];
      if (node.kind != NodeKind::kDecision) fail(n, "terminal node listed in an information set");
    }
  }

  for (const auto& node : spec.nodes) {
    if (node.kind == NodeKind::kDecision) {
      if (!node.payoffs.empty()) fail(node.id, "decision node carries payoffs");
      auto it = set_at.find(node.info_set);
      if (it == set_at.end()) {
        fail(node.id, "unknown information set '" + node.info_set + "'");
        continue;
      }
      const InfoSetSpec& is = spec.info_sets[it->second];
      auto m = member_of.find(node.id);
      if (m == member_of.end() || m->second != is.id)
        fail(node.id, "node not listed by its information set");
      if (node.owner != is.owner) fail(node.id, "owner differs from information set owner");
      std::set<std::string> keys, acts(is.actions.begin(), is.actions.end());
      for (const auto& [a, child] : node.children) {
        keys.insert(a);
        if (!node_at.count(child)) fail(node.id, "unknown child '" + child + "'");
      }
      if (keys != acts) fail(node.id, "children keys differ from the information set's actions");
    } else {
      if (!node.children.empty()) fail(node.id, "terminal node has children");
      bool shape = node.payoffs.size() == n_states;
      for (const auto& row : node.payoffs) shape = shape && row.size() == n_payoffs;
      if (!shape) {
        fail(node.id, "payoff table must have |states| x (n_players+1) entries");
        continue;
      }
      for (const auto& row : node.payoffs) {
        for (double v : row) {
          if (!std::isfinite(v)) {
            fail(node.id, "non-finite payoff");
            goto next_node;
          }
        }
        if (row[0] != 0.0) {
          fail(node.id, "player 0 payoff must be 0");
          break;
        }
      }
    }
  next_node:;
  }
  if (!res.ok()) return res;

  // Tree shape.
  const std::size_t nn = spec.nodes.size();
  std::vector<std::size_t> parent(nn, GameTree::kNone);
  for (std::size_t i = 0; i < nn; ++i) {
    std::set<std::size_t> kids;
    for (const auto& [a, child] : spec.nodes[i].children) kids.insert(node_at.at(child));
    for (std::size_t k : kids) {
      if (parent[k] != GameTree::kNone) fail(spec.nodes[k].id, "node has more than one parent");
      else parent[k] = i;
    }
  }
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < nn; ++i)
    if (parent[i] == GameTree::kNone) roots.push_back(i);
  if (roots.size() != 1) {
    fail("", roots.empty() ? "no root node" : "more than one parentless node");
    return res;
  }
  const NodeSpec& root = spec.nodes[roots[0]];
  if (root.kind != NodeKind::kDecision || root.owner != 0) {
    fail(root.id, "root must be a decision node of player 0");
    return res;
  }
  const InfoSetSpec& root_set = spec.info_sets[set_at.at(root.info_set)];
  if (root_set.nodes.size() != 1) fail(root_set.id, "root information set must contain only the root");
  if (root_set.actions != spec.states) fail(root_set.id, "root actions must equal the states in order");

  std::vector<bool> seen(nn, false);
  std::vector<std::size_t> stack{roots[0]};
  seen[roots[0]] = true;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (const auto& [a, child] : spec.nodes[v].children) {
      std::size_t c = node_at.at(child);
      if (!seen[c]) {
        seen[c] = true;
        stack.push_back(c);
      }
    }
  }
  for (std::size_t i = 0; i < nn; ++i)
    if (!seen[i]) fail(spec.nodes[i].id, "node unreachable from the root (cycle or orphan)");
  if (!res.ok()) return res;

  // Perfect recall. History = own (information set, action) pairs above the
  // node; nature's initial draw is not part of player 0's history.
  auto history = [&](std::size_t v) {
    std::vector<std::pair<std::string, std::string>> h;
    int owner = spec.nodes[v].owner;
    std::size_t child = v;
    for (std::size_t p = parent[v]; p != GameTree::kNone; child = p, p = parent[p]) {
      if (p == roots[0] || spec.nodes[p].owner != owner) continue;
      for (const auto& [a, c] : spec.nodes[p].children) {
        if (c == spec.nodes[child].id) {
          h.emplace_back(spec.nodes[p].info_set, a);
          break;
        }
      }
    }
    return h;
  };
  for (const auto& is : spec.info_sets) {
    std::set<std::size_t> members;
    for (const auto& n : is.nodes) members.insert(node_at.at(n));
    bool nested = false;
    for (std::size_t v : members)
      for (std::size_t p = parent[v]; p != GameTree::kNone && !nested; p = parent[p])
        nested = members.count(p) > 0;
    if (nested) fail(is.id, "perfect recall: a node is an ancestor of another node in the set");
    auto h0 = history(node_at.at(is.nodes.front()));
    for (const auto& n : is.nodes) {
      if (history(node_at.at(n)) != h0) {
        fail(is.id, "perfect recall: members have different own-action histories");
        break;
      }
    }
  }

  // Chance strategy.
  for (const auto& is : spec.info_sets) {
    if (is.owner != 0 || is.id == root.info_set) continue;
    auto it = spec.chance_strategy.find(is.id);
    if (it == spec.chance_strategy.end()) {
      fail(is.id, "missing chance distribution");
      continue;
    }
    double sum = 0.0;
    bool ok = true;
    for (const auto& [a, p] : it->second) {
      if (std::find(is.actions.begin(), is.actions.end(), a) == is.actions.end()) {
        fail(is.id, "chance distribution names unknown action '" + a + "'");
        ok = false;
      }
      if (!(p >= 0.0) || !std::isfinite(p)) {
        fail(is.id, "negative or non-finite probability");
        ok = false;
      }
      sum += p;
    }
    if (ok && std::fabs(sum - 1.0) > 1e-12) fail(is.id, "distribution not normalized");
  }
  for (const auto& [id, dist] : spec.chance_strategy) {
    auto it = set_at.find(id);
    if (it == set_at.end() || spec.info_sets[it->second].owner != 0 || id == root.info_set)
      fail(id, "chance distribution for a non-chance information set");
  }
  return res;
}

GameTree GameTree::build(const GameSpec& spec) {
  ValidationResult v = validate(spec);
  if (!v.ok()) throw InvalidGame(v.violations);

  GameTree t;
  t.spec_ = spec;
  const std::size_t nn = spec.nodes.size();
  for (std::size_t i = 0; i < spec.states.size(); ++i) t.state_lookup_[spec.states[i]] = i;
  for (std::size_t i = 0; i < nn; ++i) t.node_lookup_[spec.nodes[i].id] = i;
  for (std::size_t i = 0; i < spec.info_sets.size(); ++i) t.info_set_lookup_[spec.info_sets[i].id] = i;

  t.info_sets_.resize(spec.info_sets.size());
  for (std::size_t i = 0; i < spec.info_sets.size(); ++i) {
    const auto& is = spec.info_sets[i];
    InfoSet& out = t.info_sets_[i];
    out.id = is.id;
    out.owner = is.owner;
    out.actions = is.actions;
    for (const auto& n : is.nodes) out.nodes.push_back(t.node_lookup_.at(n));
  }
  t.position_.assign(nn, kNone);
  for (const auto& is : t.info_sets_)
    for (std::size_t k = 0; k < is.nodes.size(); ++k) t.position_[is.nodes[k]] = k;

  t.nodes_.resize(nn);
  for (std::size_t i = 0; i < nn; ++i) {
    const NodeSpec& ns = spec.nodes[i];
    Node& n = t.nodes_[i];
    n.id = ns.id;
    n.kind = ns.kind;
    n.owner = ns.kind == NodeKind::kDecision ? ns.owner : 0;
    n.info_set = ns.kind == NodeKind::kDecision ? t.info_set_lookup_.at(ns.info_set) : kNone;
    n.parent = kNone;
    n.parent_action = kNone;
    n.payoffs = ns.payoffs;
  }
  for (std::size_t i = 0; i < nn; ++i) {
    Node& n = t.nodes_[i];
    if (n.kind != NodeKind::kDecision) continue;
    for (const auto& a : t.info_sets_[n.info_set].actions) {
      std::size_t c = t.node_lookup_.at(spec.nodes[i].children.at(a));
      n.children.push_back(c);
    }
    for (std::size_t k = 0; k < n.children.size(); ++k) {
      Node& c = t.nodes_[n.children[k]];
      if (c.parent == kNone) {
        c.parent = i;
        c.parent_action = k;
      }
    }
  }
  for (std::size_t i = 0; i < nn; ++i)
    if (t.nodes_[i].parent == kNone) t.root_ = i;

  const std::size_t ns = spec.states.size();
  t.node_states_.assign(nn, std::vector<bool>(ns, false));
  for (std::size_t s = 0; s < ns; ++s) {
    std::vector<std::size_t> stack{t.root_child(s)};
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      t.node_states_[v][s] = true;
      for (std::size_t c : t.nodes_[v].children) stack.push_back(c);
    }
  }
  t.node_states_[t.root_].assign(ns, true);
  t.info_set_states_.assign(t.info_sets_.size(), std::vector<bool>(ns, false));
  for (std::size_t i = 0; i < t.info_sets_.size(); ++i)
    for (std::size_t v : t.info_sets_[i].nodes)
      for (std::size_t s = 0; s < ns; ++s)
        if (t.node_states_[v][s]) t.info_set_states_[i][s] = true;

  t.chance_.assign(t.info_sets_.size(), {});
  const std::size_t root_set = t.nodes_[t.root_].info_set;
  for (std::size_t i = 0; i < t.info_sets_.size(); ++i) {
    if (i == root_set) continue;
    t.non_root_.push_back(i);
    if (t.info_sets_[i].owner >= 1) {
      t.strategic_.push_back(i);
      continue;
    }
    const auto& dist = spec.chance_strategy.at(t.info_sets_[i].id);
    for (const auto& a : t.info_sets_[i].actions) {
      auto it = dist.find(a);
      t.chance_[i].push_back(it == dist.end() ? 0.0 : it->second);
    }
  }

  // Forward order over information sets (Kahn, lowest document index first).
  const std::size_t ni = t.info_sets_.size();
  std::vector<std::set<std::size_t>> succ(ni);
  std::vector<std::size_t> indeg(ni, 0);
  for (std::size_t i = 0; i < nn; ++i) {
    const Node& n = t.nodes_[i];
    if (n.kind != NodeKind::kDecision || n.parent == kNone || n.parent == t.root_) continue;
    std::size_t from = t.nodes_[n.parent].info_set;
    if (from != n.info_set && succ[from].insert(n.info_set).second) ++indeg[n.info_set];
  }
  std::vector<bool> done(ni, false);
  done[root_set] = true;
  for (std::size_t k = 1; k < ni; ++k) {
    std::size_t pick = kNone;
    for (std::size_t i = 0; i < ni && pick == kNone; ++i)
      if (!done[i] && indeg[i] == 0) pick = i;
    if (pick == kNone) {
      // Cross-player cycle among information sets: take the first remaining.
      for (std::size_t i = 0; i < ni && pick == kNone; ++i)
        if (!done[i]) pick = i;
    }
    done[pick] = true;
    t.forward_.push_back(pick);
    for (std::size_t j : succ[pick])
      if (indeg[j] > 0) --indeg[j];
  }

  for (const Node& n : t.nodes_)
    for (const auto& row : n.payoffs)
      for (double v : row) t.payoff_scale_ = std::max(t.payoff_scale_, std::fabs(v));
  return t;
}

std::size_t GameTree::state_index(const std::string& id) const {
  auto it = state_lookup_.find(id);
  if (it == state_lookup_.end()) throw Error("unknown state '" + id + "'");
  return it->second;
}

std::size_t GameTree::node_index(const std::string& id) const {
  auto it = node_lookup_.find(id);
  if (it == node_lookup_.end()) throw Error("unknown node '" + id + "'");
  return it->second;
}

std::size_t GameTree::info_set_index(const std::string& id) const {
  auto it = info_set_lookup_.find(id);
  if (it == info_set_lookup_.end()) throw Error("unknown information set '" + id + "'");
  return it->second;
}

bool GameTree::chance_fully_mixed() const {
  for (const auto& d : chance_)
    for (double p : d)
      if (!(p > 0.0)) return false;
  return true;
}

std::vector<std::string> feasible_states(const GameTree& tree, const std::string& info_set) {
  std::size_t i = tree.info_set_index(info_set);
  if (i == tree.root_info_set()) throw Error("feasible set of the root information set is not defined");
  std::vector<std::string> out;
  for (std::size_t s = 0; s < tree.num_states(); ++s)
    if (tree.feasible_mask(i)[s]) out.push_back(tree.state_id(s));
  return out;
}

namespace {

json to_json(const GameSpec& spec) {
  json j;
  j["states"] = spec.states;
  j["n_players"] = spec.n_players;
  j["nodes"] = json::array();
  for (const auto& n : spec.nodes) {
    json r;
    r["id"] = n.id;
    if (n.kind == NodeKind::kDecision) {
      r["kind"] = "decision";
      r["owner"] = n.owner;
      r["info_set"] = n.info_set;
      r["children"] = n.children;
    } else {
      r["kind"] = "terminal";
      r["payoffs"] = n.payoffs;
    }
    j["nodes"].push_back(std::move(r));
  }
  j["info_sets"] = json::array();
  for (const auto& is : spec.info_sets) {
    j["info_sets"].push_back(
        {{"id", is.id}, {"owner", is.owner}, {"actions", is.actions}, {"nodes", is.nodes}});
  }
  j["chance_strategy"] = json::object();
  for (const auto& [id, dist] : spec.chance_strategy) j["chance_strategy"][id] = dist;
  return j;
}

class Reader {
 public:
  const json& object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    for (const auto& [k, v] : j.items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || k == a;
      if (!ok) throw SchemaError(path + "/" + k, "unexpected field");
    }
    return j;
  }
  const json& field(const json& obj, const std::string& path, const char* key, const std::string& what) {
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(path + "/" + key, what + " is missing '" + key + "'");
    return *it;
  }
  std::string str(const json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string");
    return j.get<std::string>();
  }
  int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    return j.get<int>();
  }
  double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    return j.get<double>();
  }
  std::vector<std::string> strings(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(str(j[i], path + "/" + std::to_string(i)));
    return out;
  }
};

}  // namespace

std::string serialize(const GameSpec& spec) { return to_json(spec).dump(2) + "\n"; }

std::string serialize(const GameTree& tree) { return serialize(tree.spec()); }

GameSpec parse_game_spec(const std::string& document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("not valid JSON: ") + e.what());
  }
  Reader r;
  r.object(j, "", {"states", "n_players", "nodes", "info_sets", "chance_strategy"});
  GameSpec spec;
  spec.states = r.strings(r.field(j, "", "states", "game"), "/states");
  spec.n_players = r.integer(r.field(j, "", "n_players", "game"), "/n_players");

  const json& nodes = r.field(j, "", "nodes", "game");
  if (!nodes.is_array()) throw SchemaError("/nodes", "expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::string p = "/nodes/" + std::to_string(i);
    const json& n = nodes[i];
    r.object(n, p, {"id", "kind", "owner", "info_set", "children", "payoffs"});
    NodeSpec ns;
    ns.id = r.str(r.field(n, p, "id", "node"), p + "/id");
    std::string what = "node '" + ns.id + "'";
    std::string kind = r.str(r.field(n, p, "kind", what), p + "/kind");
    if (kind == "decision") {
      ns.kind = NodeKind::kDecision;
      ns.owner = r.integer(r.field(n, p, "owner", "decision " + what), p + "/owner");
      ns.info_set = r.str(r.field(n, p, "info_set", "decision " + what), p + "/info_set");
      const json& ch = r.field(n, p, "children", "decision " + what);
      if (!ch.is_object()) throw SchemaError(p + "/children", "expected an object");
      for (const auto& [a, c] : ch.items()) ns.children[a] = r.str(c, p + "/children/" + a);
      if (n.contains("payoffs")) throw SchemaError(p + "/payoffs", "decision " + what + " must not carry payoffs");
    } else if (kind == "terminal") {
      ns.kind = NodeKind::kTerminal;
      for (const char* k : {"owner", "info_set", "children"})
        if (n.contains(k)) throw SchemaError(p + "/" + k, "terminal " + what + " must not carry '" + k + "'");
      const json& pay = r.field(n, p, "payoffs", "terminal " + what);
      if (!pay.is_array()) throw SchemaError(p + "/payoffs", "expected an array");
      for (std::size_t s = 0; s < pay.size(); ++s) {
        std::string ps = p + "/payoffs/" + std::to_string(s);
        if (!pay[s].is_array()) throw SchemaError(ps, "expected an array");
        std::vector<double> row;
        for (std::size_t k = 0; k < pay[s].size(); ++k) row.push_back(r.number(pay[s][k], ps + "/" + std::to_string(k)));
        ns.payoffs.push_back(std::move(row));
      }
    } else {
      throw SchemaError(p + "/kind", "expected \"decision\" or \"terminal\"");
    }
    spec.nodes.push_back(std::move(ns));
  }

  const json& sets = r.field(j, "", "info_sets", "game");
  if (!sets.is_array()) throw SchemaError("/info_sets", "expected an array");
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::string p = "/info_sets/" + std::to_string(i);
    const json& s = sets[i];
    r.object(s, p, {"id", "owner", "actions", "nodes"});
    InfoSetSpec is;
    is.id = r.str(r.field(s, p, "id", "information set"), p + "/id");
    std::string what = "information set '" + is.id + "'";
    is.owner = r.integer(r.field(s, p, "owner", what), p + "/owner");
    is.actions = r.strings(r.field(s, p, "actions", what), p + "/actions");
    is.nodes = r.strings(r.field(s, p, "nodes", what), p + "/nodes");
    spec.info_sets.push_back(std::move(is));
  }

  if (j.contains("chance_strategy")) {
    const json& cs = j["chance_strategy"];
    if (!cs.is_object()) throw SchemaError("/chance_strategy", "expected an object");
    for (const auto& [id, dist] : cs.items()) {
      std::string p = "/chance_strategy/" + id;
      if (!dist.is_object()) throw SchemaError(p, "expected an object");
      auto& out = spec.chance_strategy[id];
      for (const auto& [a, v] : dist.items()) out[a] = r.number(v, p + "/" + a);
    }
  }
  return spec;
}

GameTree deserialize(const std::string& document) { return GameTree::build(parse_game_spec(document)); }

}  // namespace pce
