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

#include "pce/belief_system.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "json.hpp"

namespace pce {

using nlohmann::json;

std::vector<std::size_t> BeliefSystem::conceivable_states(std::size_t info_set) const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < conceivable[info_set].size(); ++s)
    if (conceivable[info_set][s]) out.push_back(s);
  return out;
}

std::vector<double> reach_probabilities(const GameTree& tree, const StrategyProfile& profile, std::size_t s) {
  std::vector<double> rho(tree.num_nodes(), 0.0);
  rho[tree.root()] = 1.0;
  std::vector<std::size_t> stack{tree.root_child(s)};
  rho[tree.root_child(s)] = 1.0;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    const auto& n = tree.node(v);
    if (n.kind != NodeKind::kDecision) continue;
    const auto& x = profile.at(n.info_set);
    for (std::size_t k = 0; k < n.children.size(); ++k) {
      rho[n.children[k]] = rho[v] * x[k];
      stack.push_back(n.children[k]);
    }
  }
  return rho;
}

namespace {

// Mass sent into the nodes of `target` under state s, grouped by the
// information set it comes from. Sources whose conceivable set lacks s or
// whose posterior is not yet known are skipped.
std::map<std::size_t, std::vector<double>> inflows(const GameTree& tree, const StrategyProfile& profile,
                                                   const BeliefSystem& beliefs, std::size_t target, std::size_t s) {
  std::map<std::size_t, std::vector<double>> out;
  const auto& nodes = tree.info_set(target).nodes;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto& c = tree.node(nodes[k]);
    std::size_t src = tree.node(c.parent).info_set;
    double m = 0.0;
    if (c.parent == tree.root()) {
      m = tree.root_child(s) == nodes[k] ? 1.0 : 0.0;
    } else {
      if (!beliefs.conceivable[src][s]) continue;
      const auto& beta = beliefs.posterior[src][s];
      if (beta.empty()) continue;
      m = beta[tree.position_in_info_set(c.parent)] * profile.at(src)[c.parent_action];
    }
    auto& v = out[src];
    if (v.empty()) v.assign(nodes.size(), 0.0);
    v[k] += m;
  }
  for (auto it = out.begin(); it != out.end();) {
    double mass = 0.0;
    for (double v : it->second) mass += v;
    if (mass > 0.0) {
      for (double& v : it->second) v /= mass;
      ++it;
    } else {
      it = out.erase(it);
    }
  }
  return out;
}

std::string key(const GameTree& tree, std::size_t i, std::size_t s) {
  return tree.info_set(i).id + "|" + tree.state_id(s);
}

}  // namespace

ConsistencyReport check_consistency(const GameTree& tree, const StrategyProfile& profile,
                                    const BeliefSystem& beliefs, double tol) {
  ConsistencyReport rep;
  const std::size_t ns = tree.num_states();
  if (beliefs.conceivable.size() != tree.num_info_sets() || beliefs.posterior.size() != tree.num_info_sets())
    throw Error("belief system does not cover every information set");
  const std::size_t root = tree.root_info_set();
  for (std::size_t s = 0; s < ns; ++s) {
    if (beliefs.conceivable[root].size() != ns || !beliefs.conceivable[root][s]) {
      rep.violations.push_back({tree.info_set(root).id, "", "invariant", "root conceivable set must be every state", 0.0});
      break;
    }
  }

  for (std::size_t i : tree.non_root_info_sets()) {
    const auto& is = tree.info_set(i);
    if (beliefs.conceivable[i].size() != ns || beliefs.posterior[i].size() != ns)
      throw Error("belief system has the wrong number of states at '" + is.id + "'");
    bool any = false;
    for (std::size_t s = 0; s < ns; ++s) {
      if (!beliefs.conceivable[i][s]) continue;
      any = true;
      const auto& beta = beliefs.posterior[i][s];
      if (beta.size() != is.nodes.size()) throw Error("missing posterior entry for " + key(tree, i, s));
      double sum = 0.0;
      bool negative = false;
      for (double v : beta) {
        sum += v;
        negative = negative || v < 0.0;
      }
      if (negative || std::fabs(sum - 1.0) > 1e-12)
        rep.violations.push_back({is.id, tree.state_id(s), "invariant", "posterior is not a distribution", 0.0});
      if (!tree.feasible_mask(i)[s])
        rep.violations.push_back({is.id, tree.state_id(s), "a", "conceivable state is infeasible here", 0.0});
    }
    if (!any) rep.violations.push_back({is.id, "", "invariant", "empty conceivable set", 0.0});
  }

  // (b), one tree edge at a time.
  for (std::size_t s = 0; s < ns; ++s) {
    std::vector<double> rho;
    for (std::size_t i : tree.non_root_info_sets()) {
      auto flows = inflows(tree, profile, beliefs, i, s);
      if (flows.empty()) continue;
      const auto& is = tree.info_set(i);
      if (!beliefs.conceivable[i][s]) {
        rep.violations.push_back({is.id, tree.state_id(s), "b", "reached in one move but state not conceivable", 0.0});
        continue;
      }
      const auto& beta = beliefs.posterior[i][s];
      double dist = 0.0;
      if (flows.size() == 1) {
        const auto& m = flows.begin()->second;
        for (std::size_t k = 0; k < beta.size(); ++k) dist = std::max(dist, std::fabs(beta[k] - m[k]));
      } else {
        if (rho.empty()) rho = reach_probabilities(tree, profile, s);
        double total = 0.0;
        for (std::size_t v : is.nodes) total += rho[v];
        if (total > 0.0) {
          for (std::size_t k = 0; k < beta.size(); ++k)
            dist = std::max(dist, std::fabs(beta[k] - rho[is.nodes[k]] / total));
        } else {
          // Zero reach: within each source's nodes the posterior must have
          // the shape of that source's update.
          for (const auto& [src, m] : flows) {
            double mass = 0.0;
            for (std::size_t k = 0; k < beta.size(); ++k)
              if (tree.node(tree.node(is.nodes[k]).parent).info_set == src) mass += beta[k];
            if (mass <= 0.0) {
              dist = std::max(dist, 1.0);
              continue;
            }
            for (std::size_t k = 0; k < beta.size(); ++k)
              if (tree.node(tree.node(is.nodes[k]).parent).info_set == src)
                dist = std::max(dist, std::fabs(beta[k] / mass - m[k]));
          }
        }
      }
      if (dist > tol) {
        rep.violations.push_back({is.id, tree.state_id(s), "b", "posterior differs from the Bayes update", dist});
      }
    }
  }
  return rep;
}

BeliefSystem derive_feasible_beliefs(const GameTree& tree, const StrategyProfile& profile) {
  const std::size_t ns = tree.num_states();
  const std::size_t ni = tree.num_info_sets();
  BeliefSystem b;
  b.conceivable.assign(ni, std::vector<bool>(ns, false));
  b.posterior.assign(ni, std::vector<std::vector<double>>(ns));
  const std::size_t root = tree.root_info_set();
  b.conceivable[root].assign(ns, true);
  for (std::size_t s = 0; s < ns; ++s) b.posterior[root][s] = {1.0};
  for (std::size_t i : tree.non_root_info_sets()) b.conceivable[i] = tree.feasible_mask(i);

  for (std::size_t s = 0; s < ns; ++s) {
    std::vector<double> rho = reach_probabilities(tree, profile, s);
    for (std::size_t i : tree.info_sets_forward()) {
      if (!b.conceivable[i][s]) continue;
      const auto& nodes = tree.info_set(i).nodes;
      std::vector<double> beta(nodes.size(), 0.0);
      double total = 0.0;
      for (std::size_t v : nodes) total += rho[v];
      if (total > 0.0) {
        for (std::size_t k = 0; k < nodes.size(); ++k) beta[k] = rho[nodes[k]] / total;
      } else {
        auto flows = inflows(tree, profile, b, i, s);
        if (!flows.empty()) {
          double w = 1.0 / static_cast<double>(flows.size());
          for (const auto& [src, m] : flows)
            for (std::size_t k = 0; k < nodes.size(); ++k) beta[k] += w * m[k];
        } else {
          double cnt = 0.0;
          for (std::size_t v : nodes) cnt += tree.node_feasible(v, s) ? 1.0 : 0.0;
          for (std::size_t k = 0; k < nodes.size(); ++k) beta[k] = tree.node_feasible(nodes[k], s) ? 1.0 / cnt : 0.0;
        }
      }
      b.posterior[i][s] = std::move(beta);
    }
  }
  return b;
}

std::optional<std::vector<double>> bayes_step(const std::vector<double>& prior,
                                              const std::vector<std::vector<double>>& transition) {
  if (transition.size() != prior.size()) throw Error("transition rows must match the prior");
  std::size_t width = transition.empty() ? 0 : transition.front().size();
  std::vector<double> post(width, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < prior.size(); ++i) {
    if (!(prior[i] >= 0.0) || !std::isfinite(prior[i])) throw Error("negative prior probability");
    if (transition[i].size() != width) throw Error("ragged transition matrix");
    for (std::size_t j = 0; j < width; ++j) {
      double t = transition[i][j];
      if (!(t >= 0.0) || t > 1.0) throw Error("transition probability outside [0, 1]");
      post[j] += prior[i] * t;
      total += prior[i] * t;
    }
  }
  if (!(total > 0.0)) return std::nullopt;
  for (double& v : post) v /= total;
  return post;
}

Candidate parse_candidate(const GameTree& tree, const std::string& document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("", "expected an object");
  for (const auto& [k, v] : j.items())
    if (k != "strategy" && k != "conceivable" && k != "posterior") throw SchemaError("/" + k, "unexpected field");
  if (!j.contains("strategy")) throw SchemaError("/strategy", "candidate is missing 'strategy'");
  const json& js = j["strategy"];
  if (!js.is_object()) throw SchemaError("/strategy", "expected an object");
  std::map<std::string, ActionMap> strategy;
  for (const auto& [id, dist] : js.items()) {
    if (!dist.is_object()) throw SchemaError("/strategy/" + id, "expected an object");
    for (const auto& [a, v] : dist.items()) {
      if (!v.is_number()) throw SchemaError("/strategy/" + id + "/" + a, "expected a number");
      strategy[id][a] = v.get<double>();
    }
  }
  Candidate c;
  c.profile = profile_from_maps(tree, strategy);
  c.beliefs = derive_feasible_beliefs(tree, c.profile);
  const std::size_t ns = tree.num_states();

  auto set_index = [&](const std::string& id, const std::string& path) {
    std::size_t i;
    try {
      i = tree.info_set_index(id);
    } catch (const Error&) {
      throw SchemaError(path, "unknown information set");
    }
    if (i == tree.root_info_set()) throw SchemaError(path, "beliefs at the root are fixed");
    return i;
  };
  auto state_index = [&](const std::string& id, const std::string& path) {
    try {
      return tree.state_index(id);
    } catch (const Error&) {
      throw SchemaError(path, "unknown state '" + id + "'");
    }
  };

  if (j.contains("conceivable")) {
    const json& jc = j["conceivable"];
    if (!jc.is_object()) throw SchemaError("/conceivable", "expected an object");
    for (const auto& [id, arr] : jc.items()) {
      std::string p = "/conceivable/" + id;
      std::size_t i = set_index(id, p);
      if (!arr.is_array()) throw SchemaError(p, "expected an array");
      std::vector<bool> mask(ns, false);
      for (std::size_t k = 0; k < arr.size(); ++k) {
        if (!arr[k].is_string()) throw SchemaError(p + "/" + std::to_string(k), "expected a string");
        mask[state_index(arr[k].get<std::string>(), p + "/" + std::to_string(k))] = true;
      }
      for (std::size_t s = 0; s < ns; ++s)
        if (!mask[s]) c.beliefs.posterior[i][s].clear();
      c.beliefs.conceivable[i] = std::move(mask);
    }
  }
  if (j.contains("posterior")) {
    const json& jp = j["posterior"];
    if (!jp.is_object()) throw SchemaError("/posterior", "expected an object");
    for (const auto& [k, dist] : jp.items()) {
      std::string p = "/posterior/" + k;
      auto bar = k.rfind('|');
      if (bar == std::string::npos) throw SchemaError(p, "key must be 'info_set|state'");
      std::size_t i = set_index(k.substr(0, bar), p);
      std::size_t s = state_index(k.substr(bar + 1), p);
      if (!c.beliefs.conceivable[i][s]) throw SchemaError(p, "posterior given for a state outside the conceivable set");
      if (!dist.is_object()) throw SchemaError(p, "expected an object");
      const auto& nodes = tree.info_set(i).nodes;
      std::vector<double> beta(nodes.size(), 0.0);
      double sum = 0.0;
      for (const auto& [nid, v] : dist.items()) {
        std::size_t pos = GameTree::kNone;
        for (std::size_t q = 0; q < nodes.size(); ++q)
          if (tree.node(nodes[q]).id == nid) pos = q;
        if (pos == GameTree::kNone) throw SchemaError(p + "/" + nid, "node not in the information set");
        if (!v.is_number() || v.get<double>() < 0.0) throw SchemaError(p + "/" + nid, "probability must be a nonnegative number");
        beta[pos] = v.get<double>();
        sum += beta[pos];
      }
      if (std::fabs(sum - 1.0) > 1e-12) throw SchemaError(p, "distribution not normalized");
      c.beliefs.posterior[i][s] = std::move(beta);
    }
  }
  for (std::size_t i : tree.non_root_info_sets())
    for (std::size_t s = 0; s < ns; ++s)
      if (c.beliefs.conceivable[i][s] && c.beliefs.posterior[i][s].empty())
        throw SchemaError("/posterior/" + key(tree, i, s), "missing posterior entry");
  return c;
}

std::string serialize_candidate(const GameTree& tree, const StrategyProfile& profile, const BeliefSystem& beliefs) {
  json j;
  j["strategy"] = profile_to_maps(tree, profile);
  j["conceivable"] = json::object();
  j["posterior"] = json::object();
  for (std::size_t i : tree.non_root_info_sets()) {
    const auto& is = tree.info_set(i);
    json states = json::array();
    for (std::size_t s : beliefs.conceivable_states(i)) {
      states.push_back(tree.state_id(s));
      json d = json::object();
      for (std::size_t k = 0; k < is.nodes.size(); ++k) d[tree.node(is.nodes[k]).id] = beliefs.posterior[i][s][k];
      j["posterior"][key(tree, i, s)] = d;
    }
    j["conceivable"][is.id] = states;
  }
  return j.dump(2) + "\n";
}

}  // namespace pce
