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

#include "pce/report.hpp"

#include <cmath>
#include <cstdio>

#include "pce/profile.hpp"

namespace pce {

using nlohmann::json;

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  std::string s(buf);
  // snprintf follows LC_NUMERIC; the C locale is assumed but not trusted.
  for (char& c : s)
    if (c == ',') c = '.';
  if (s == "-0") s = "0";
  return s;
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  double r = std::strtod(fmt(x).c_str(), nullptr);
  return r == 0.0 ? 0.0 : r;
}

void round_numbers(json& j) {
  if (j.is_number_float()) {
    j = round12(j.get<double>());
  } else if (j.is_array() || j.is_object()) {
    for (auto& v : j) round_numbers(v);
  }
}

namespace {

json action_map(const GameTree& tree, std::size_t info_set, const std::vector<double>& x) {
  json m = json::object();
  const auto& acts = tree.info_set(info_set).actions;
  for (std::size_t a = 0; a < acts.size() && a < x.size(); ++a) m[acts[a]] = x[a];
  return m;
}

std::string mode_name(Mode m) { return m == Mode::kMixed ? "mixed" : "pure"; }

std::string method_name(SearchMethod m) {
  switch (m) {
    case SearchMethod::kExPost:
      return "expost";
    case SearchMethod::kIterate:
      return "iterate";
    case SearchMethod::kEnumerate:
      return "enumerate";
  }
  return "";
}

}  // namespace

json to_json(const LossReport& r, const GameTree& tree) {
  json j;
  j["info_set"] = tree.info_set(r.info_set).id;
  json per = json::object();
  json best = json::object();
  for (std::size_t k = 0; k < r.states.size(); ++k) {
    const std::string& s = tree.state_id(r.states[k]);
    if (k < r.per_state_loss.size()) per[s] = r.per_state_loss[k];
    if (k < r.best_action_per_state.size()) best[s] = tree.info_set(r.info_set).actions[r.best_action_per_state[k]];
  }
  j["per_state_loss"] = per;
  j["best_action_per_state"] = best;
  j["max_loss"] = r.max_loss;
  j["best_compromise"] = action_map(tree, r.info_set, r.best_compromise);
  j["compromise_value"] = r.compromise_value;
  j["deviation_gap"] = r.deviation_gap;
  return j;
}

json to_json(const VerificationReport& r, const GameTree& tree) {
  json j;
  j["mode"] = mode_name(r.mode);
  j["tol"] = r.tol;
  j["accepted"] = r.accepted;
  j["first_violation"] = r.first_violation;
  j["losses"] = json::array();
  for (const auto& l : r.losses) j["losses"].push_back(to_json(l, tree));
  j["consistency"] = json::array();
  for (const auto& v : r.consistency.violations)
    j["consistency"].push_back(
        {{"info_set", v.info_set}, {"state", v.state}, {"condition", v.condition}, {"rule", v.rule}, {"distance", v.distance}});
  json g = json::object();
  for (std::size_t p = 0; p < r.global_max_loss.size(); ++p) g[std::to_string(p + 1)] = r.global_max_loss[p];
  j["max_loss_by_player"] = g;
  return j;
}

json to_json(const StrategyProfile& p, const GameTree& tree) {
  json j = json::object();
  for (const auto& [set, acts] : profile_to_maps(tree, p)) j[set] = acts;
  return j;
}

json to_json(const SearchResult& r, const GameTree& tree) {
  json j;
  j["method"] = method_name(r.method);
  j["note"] = r.note;
  j["found"] = json::array();
  for (const auto& f : r.found) {
    json e;
    e["strategy"] = to_json(f.profile, tree);
    e["report"] = to_json(f.report, tree);
    j["found"].push_back(e);
  }
  if (r.method == SearchMethod::kIterate) {
    j["converged"] = r.converged;
    j["residual"] = r.residual;
    j["iterations"] = r.iterations;
    if (!r.last_iterate.prob.empty()) j["last_iterate"] = to_json(r.last_iterate, tree);
  } else {
    j["profiles_scanned"] = r.profiles_scanned;
  }
  return j;
}

}  // namespace pce
