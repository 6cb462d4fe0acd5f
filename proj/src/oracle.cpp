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

#include "pce/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "pce/appendix_examples.hpp"
#include "pce/markets.hpp"
#include "pce/parallel.hpp"
#include "pce/report.hpp"

namespace pce {

std::size_t GridDim::count() const {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !std::isfinite(step))
    throw InvalidParameters("grid '" + name + "': bounds and step must be finite");
  if (lower > upper) throw InvalidParameters("grid '" + name + "': lower > upper");
  if (step <= 0.0) throw InvalidParameters("grid '" + name + "': step must be positive");
  double n = (upper - lower) / step;
  if (n > 1e8) throw InvalidParameters("grid '" + name + "': too many points");
  return static_cast<std::size_t>(std::floor(n * (1.0 + 1e-9) + 1e-9)) + 1;
}

std::vector<double> GridDim::points() const {
  std::size_t n = count();
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = std::min(upper, lower + k * step);
  return out;
}

const GridDim& GridSpec::at(const std::string& name) const {
  for (const auto& d : dims)
    if (d.name == name) return d;
  throw InvalidParameters("grid dimension '" + name + "' is missing");
}

bool GridSpec::has(const std::string& name) const {
  for (const auto& d : dims)
    if (d.name == name) return true;
  return false;
}

OracleResult static_minimax_oracle(const StaticPayoff& payoff, const std::vector<double>& own_grid,
                                   const std::vector<double>& opponent, const std::vector<double>& benchmark) {
  if (own_grid.empty() || opponent.empty()) throw InvalidParameters("oracle grids must be nonempty");
  const std::vector<double>& bench = benchmark.empty() ? own_grid : benchmark;
  const std::size_t ns = opponent.size(), na = own_grid.size();
  OracleResult r;
  r.actions = own_grid;
  r.best_per_state.assign(ns, 0.0);

  auto eval = [&](double own, std::size_t s) {
    double u = payoff(own, opponent[s], s);
    if (!std::isfinite(u)) throw Error("oracle: non-finite payoff at action " + fmt(own) + ", state " + std::to_string(s));
    return u;
  };

  parallel_for(ns, [&](std::size_t s) {
    double best = -std::numeric_limits<double>::infinity();
    for (double a : bench) best = std::max(best, eval(a, s));
    r.best_per_state[s] = best;
  });
  r.loss.assign(na, std::vector<double>(ns, 0.0));
  r.max_loss.assign(na, 0.0);
  parallel_for(na, [&](std::size_t k) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < ns; ++s) {
      r.loss[k][s] = r.best_per_state[s] - eval(own_grid[k], s);
      worst = std::max(worst, r.loss[k][s]);
    }
    r.max_loss[k] = worst;
  });
  for (std::size_t k = 1; k < na; ++k)
    if (r.max_loss[k] < r.max_loss[r.argmin]) r.argmin = k;
  r.value = r.max_loss[r.argmin];
  for (std::size_t s = 1; s < ns; ++s)
    if (r.loss[r.argmin][s] > r.loss[r.argmin][r.worst_state]) r.worst_state = s;
  return r;
}

void write_oracle_csv(std::ostream& out, const OracleResult& r, const std::vector<std::string>& state_labels) {
  out << "action";
  for (std::size_t s = 0; s < r.best_per_state.size(); ++s)
    out << ",loss_" << (s < state_labels.size() ? state_labels[s] : std::to_string(s));
  out << ",max_loss\n";
  for (std::size_t k = 0; k < r.actions.size(); ++k) {
    out << fmt(r.actions[k]);
    for (double l : r.loss[k]) out << "," << fmt(l);
    out << "," << fmt(r.max_loss[k]) << "\n";
  }
}

namespace {

std::vector<double> spaced(double lo, double hi, int n) {
  if (n < 1) throw InvalidParameters("need at least one state point");
  if (n == 1 || hi == lo) return {lo};
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = lo + (hi - lo) * k / (n - 1);
  out.back() = hi;
  return out;
}

}  // namespace

OracleResult cournot_oracle(const CournotParams& p, double q_opp, double step, int n_mix) {
  check(p);
  if (n_mix < 0) throw InvalidParameters("n_mix must be nonnegative");
  std::vector<double> weight{1.0, 0.0};  // weight on the low demand
  for (int k = 1; k <= n_mix; ++k) weight.push_back(static_cast<double>(k) / (n_mix + 1));
  std::vector<double> qs = GridDim{"q", 0.0, p.a_hi / p.b_hi, step}.points();
  auto payoff = [&](double q, double r, std::size_t s) {
    double w = weight[s];
    double a = w * p.a_lo + (1 - w) * p.a_hi, b = w * p.b_lo + (1 - w) * p.b_hi;
    return (a - b * (q + r)) * q;
  };
  return static_minimax_oracle(payoff, qs, std::vector<double>(weight.size(), q_opp));
}

OracleResult bertrand_oracle(const BertrandParams& p, double c, double step, int state_points) {
  check(p);
  std::vector<double> rival;
  for (double cj : spaced(p.c_lo, p.c_hi, state_points)) rival.push_back(bertrand_pce(p, cj).price);
  std::vector<double> ps = GridDim{"p", 0.0, p.a, step}.points();
  auto payoff = [&](double own, double r, std::size_t) { return (own - c) * bertrand_demand(p, own, r); };
  return static_minimax_oracle(payoff, ps, rival);
}

OracleResult spence_wage_oracle(ProductivityBounds bounds, double w_rival, double step, int theta_points) {
  std::vector<double> thetas = spaced(bounds.lo, bounds.hi, theta_points);
  std::vector<double> ws = GridDim{"w", 0.0, 1.0, step}.points();
  ws.insert(std::upper_bound(ws.begin(), ws.end(), w_rival), w_rival);
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  auto payoff = [&](double w, double r, std::size_t s) { return spence_firm_payoff(w, r, thetas[s]); };
  return static_minimax_oracle(payoff, ws, std::vector<double>(thetas.size(), w_rival));
}

namespace {

double param(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::string label(const std::string& name, double v) { return name + "=" + fmt(v); }

// Accumulates nodes and information sets; info sets keep first-seen order.
class Builder {
 public:
  Builder(std::vector<std::string> states, int n_players, std::size_t cap) : cap_(cap) {
    spec_.states = std::move(states);
    spec_.n_players = n_players;
    InfoSetSpec root{"root", 0, spec_.states, {"root"}};
    spec_.info_sets.push_back(root);
    NodeSpec r;
    r.id = "root";
    r.kind = NodeKind::kDecision;
    r.owner = 0;
    r.info_set = "root";
    spec_.nodes.push_back(r);
  }

  void root_edge(const std::string& state, const std::string& child) { spec_.nodes[0].children[state] = child; }

  void decision(const std::string& id, int owner, const std::string& set, const std::vector<std::string>& actions,
                const std::vector<std::string>& children) {
    NodeSpec n;
    n.id = id;
    n.kind = NodeKind::kDecision;
    n.owner = owner;
    n.info_set = set;
    for (std::size_t a = 0; a < actions.size(); ++a) n.children[actions[a]] = children[a];
    spec_.nodes.push_back(std::move(n));
    auto it = set_at_.find(set);
    if (it == set_at_.end()) {
      set_at_[set] = spec_.info_sets.size();
      spec_.info_sets.push_back({set, owner, actions, {id}});
    } else {
      spec_.info_sets[it->second].nodes.push_back(id);
    }
  }

  void terminal(const std::string& id, std::vector<std::vector<double>> payoffs) {
    cells_ += payoffs.size();
    if (cells_ > cap_) throw InvalidParameters("discretized game exceeds the cell cap of " + std::to_string(cap_));
    NodeSpec n;
    n.id = id;
    n.kind = NodeKind::kTerminal;
    n.payoffs = std::move(payoffs);
    spec_.nodes.push_back(std::move(n));
  }

  // Refuses up front when `terminals` leaves times the states exceed the cap.
  void reserve(double terminals) const {
    if (terminals * spec_.states.size() > static_cast<double>(cap_))
      throw InvalidParameters("discretized game exceeds the cell cap of " + std::to_string(cap_));
  }

  GameSpec finish() {
    GameSpec out = std::move(spec_);
    ValidationResult v = validate(out);
    if (!v.ok()) throw InvalidGame(v.violations);
    return out;
  }

 private:
  GameSpec spec_;
  std::map<std::string, std::size_t> set_at_;
  std::size_t cap_ = 0, cells_ = 0;
};

std::vector<std::string> labels(const std::string& name, const std::vector<double>& xs) {
  std::vector<std::string> out;
  for (double x : xs) out.push_back(label(name, x));
  return out;
}

// Payoff rows for every state, player 0 first.
template <class F>
std::vector<std::vector<double>> rows(std::size_t ns, F&& f) {
  std::vector<std::vector<double>> out(ns);
  for (std::size_t s = 0; s < ns; ++s) out[s] = f(s);
  return out;
}

GameSpec cournot_game(const GridSpec& g, const std::map<std::string, double>& prm, std::size_t cap) {
  CournotParams p{param(prm, "a_lo", 1.9), param(prm, "a_hi", 2.1), param(prm, "b_lo", 1.05), param(prm, "b_hi", 0.95)};
  check(p);
  int n_mix = static_cast<int>(param(prm, "n_mix", 9));
  if (n_mix < 0) throw InvalidParameters("n_mix must be nonnegative");
  std::vector<double> qs = g.at("q").points();
  std::vector<std::string> states{"P_lo", "P_hi"};
  std::vector<double> weight{1.0, 0.0};  // weight on P_lo
  for (int k = 1; k <= n_mix; ++k) {
    double lam = static_cast<double>(k) / (n_mix + 1);
    states.push_back(label("mix", lam));
    weight.push_back(lam);
  }
  Builder b(states, 2, cap);
  b.reserve(static_cast<double>(qs.size()) * qs.size());
  for (const auto& s : states) b.root_edge(s, "firm1");
  std::vector<std::string> acts = labels("q", qs);
  std::vector<std::string> mid;
  for (std::size_t i = 0; i < qs.size(); ++i) mid.push_back("firm2|" + acts[i]);
  b.decision("firm1", 1, "firm1", acts, mid);
  for (std::size_t i = 0; i < qs.size(); ++i) {
    std::vector<std::string> leaves;
    for (std::size_t j = 0; j < qs.size(); ++j) leaves.push_back("t|" + acts[i] + "|" + acts[j]);
    b.decision(mid[i], 2, "firm2", acts, leaves);
    for (std::size_t j = 0; j < qs.size(); ++j) {
      double q1 = qs[i], q2 = qs[j];
      b.terminal(leaves[j], rows(states.size(), [&](std::size_t s) {
                   double w = weight[s];
                   double a = w * p.a_lo + (1 - w) * p.a_hi, sl = w * p.b_lo + (1 - w) * p.b_hi;
                   double price = a - sl * (q1 + q2);
                   return std::vector<double>{0.0, price * q1, price * q2};
                 }));
    }
  }
  return b.finish();
}

GameSpec bertrand_game(const GridSpec& g, const std::map<std::string, double>& prm, std::size_t cap) {
  BertrandParams p{param(prm, "a", 1.0), param(prm, "b", 1.0), param(prm, "c_lo", 0.0), param(prm, "c_hi", 0.5)};
  check(p);
  std::vector<double> cs = g.has("c") ? g.at("c").points() : GridDim{"c", p.c_lo, p.c_hi, (p.c_hi - p.c_lo) / 2}.points();
  for (double c : cs)
    if (c < p.c_lo - 1e-12 || c > p.c_hi + 1e-12) throw InvalidParameters("cost grid outside [c_lo, c_hi]");
  std::vector<double> ps = g.at("p").points();
  std::vector<std::string> states;
  for (double c1 : cs)
    for (double c2 : cs) states.push_back(label("c1", c1) + "|" + label("c2", c2));
  Builder b(states, 2, cap);
  b.reserve(static_cast<double>(states.size()) * ps.size() * ps.size());
  std::vector<std::string> acts = labels("p", ps);
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j) {
      std::string st = states[i * cs.size() + j];
      std::string n1 = "firm1|" + st;
      b.root_edge(st, n1);
      std::vector<std::string> mid;
      for (const auto& a : acts) mid.push_back("firm2|" + st + "|" + a);
      b.decision(n1, 1, "firm1|" + label("c1", cs[i]), acts, mid);
      for (std::size_t k = 0; k < ps.size(); ++k) {
        std::vector<std::string> leaves;
        for (const auto& a : acts) leaves.push_back("t|" + st + "|" + acts[k] + "|" + a);
        b.decision(mid[k], 2, "firm2|" + label("c2", cs[j]), acts, leaves);
        for (std::size_t l = 0; l < ps.size(); ++l) {
          double p1 = ps[k], p2 = ps[l], c1 = cs[i], c2 = cs[j];
          std::vector<double> row{0.0, (p1 - c1) * bertrand_demand(p, p1, p2), (p2 - c2) * bertrand_demand(p, p2, p1)};
          b.terminal(leaves[l], rows(states.size(), [&](std::size_t) { return row; }));
        }
      }
    }
  return b.finish();
}

GameSpec spence_game(const GridSpec& g, const std::map<std::string, double>& prm, std::size_t cap) {
  SpenceParams p{param(prm, "b", 1.0), param(prm, "delta", 0.25)};
  check(p);
  std::vector<double> thetas = g.at("theta").points();
  std::vector<double> ws = g.at("w").points();
  std::vector<std::string> states;
  std::vector<double> st_theta, st_cost;
  for (double t : thetas)
    for (int hi = 0; hi < 2; ++hi) {
      states.push_back(label("theta", t) + (hi ? "|c=hi" : "|c=lo"));
      st_theta.push_back(t);
      st_cost.push_back(hi ? 1.0 + p.delta - p.b * t : 1.0 - p.b * t);
    }
  Builder b(states, 3, cap);
  b.reserve(static_cast<double>(states.size()) * 2 * ws.size() * ws.size());
  std::vector<std::string> acts = labels("w", ws);
  const std::vector<std::string> edu{"e_L", "e_H"};
  for (std::size_t s = 0; s < states.size(); ++s) {
    std::string w = "worker|" + states[s];
    b.root_edge(states[s], w);
    std::vector<std::string> f2{"firm2|" + states[s] + "|e_L", "firm2|" + states[s] + "|e_H"};
    b.decision(w, 1, w, edu, f2);
    for (int e = 0; e < 2; ++e) {
      std::vector<std::string> f3;
      for (const auto& a : acts) f3.push_back("firm3|" + states[s] + "|" + edu[e] + "|" + a);
      b.decision(f2[e], 2, "firm2|" + edu[e], acts, f3);
      for (std::size_t i = 0; i < ws.size(); ++i) {
        std::vector<std::string> leaves;
        for (const auto& a : acts) leaves.push_back("t|" + states[s] + "|" + edu[e] + "|" + acts[i] + "|" + a);
        b.decision(f3[i], 3, "firm3|" + edu[e], acts, leaves);
        for (std::size_t j = 0; j < ws.size(); ++j) {
          double w2 = ws[i], w3 = ws[j];
          b.terminal(leaves[j], rows(states.size(), [&](std::size_t t) {
                       double cost = e == 1 ? st_cost[t] : 0.0;
                       return std::vector<double>{0.0, std::max(w2, w3) - cost, spence_firm_payoff(w2, w3, st_theta[t]),
                                                  spence_firm_payoff(w3, w2, st_theta[t])};
                     }));
        }
      }
    }
  }
  return b.finish();
}

// Buyer is player 1 and seller player 2 in both trade encodings.
GameSpec trade_game(bool buyer_proposes, const GridSpec& g, std::size_t cap) {
  std::vector<double> xs = g.at("x").points(), ys = g.at("y").points(), ps = g.at("p").points();
  std::vector<std::string> states;
  for (double x : xs)
    for (double y : ys) states.push_back(label("x", x) + "|" + label("y", y));
  Builder b(states, 2, cap);
  b.reserve(static_cast<double>(xs.size()) * ps.size() * 2);
  std::vector<std::string> acts = labels("p", ps);
  const std::vector<std::string> resp{"accept", "reject"};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::string xl = label("x", xs[i]);
    std::string prop = (buyer_proposes ? "buyer|" : "seller|") + xl;
    for (std::size_t j = 0; j < ys.size(); ++j) b.root_edge(states[i * ys.size() + j], prop);
    std::vector<std::string> mid;
    for (const auto& a : acts) mid.push_back((buyer_proposes ? "seller|" : "buyer|") + xl + "|" + a);
    b.decision(prop, buyer_proposes ? 1 : 2, buyer_proposes ? "buyer" : "seller|" + xl, acts, mid);
    for (std::size_t k = 0; k < ps.size(); ++k) {
      std::string set = buyer_proposes ? "seller|" + xl + "|" + acts[k] : "buyer|" + acts[k];
      std::vector<std::string> leaves{"t|" + xl + "|" + acts[k] + "|accept", "t|" + xl + "|" + acts[k] + "|reject"};
      b.decision(mid[k], buyer_proposes ? 2 : 1, set, resp, leaves);
      double price = ps[k];
      b.terminal(leaves[0], rows(states.size(), [&](std::size_t s) {
                   double v = (xs[s / ys.size()] + ys[s % ys.size()]) / 2.0;
                   return std::vector<double>{0.0, v - price, price - v};
                 }));
      b.terminal(leaves[1], rows(states.size(), [&](std::size_t) { return std::vector<double>{0.0, 0.0, 0.0}; }));
    }
  }
  return b.finish();
}

// Seller is player 1, buyer player 2.
GameSpec double_auction_game(const GridSpec& g, std::size_t cap) {
  std::vector<double> vs = g.at("vs").points(), vb = g.at("vb").points(), bids = g.at("bid").points();
  std::vector<std::string> states;
  for (double s : vs)
    for (double t : vb) states.push_back(label("vs", s) + "|" + label("vb", t));
  Builder b(states, 2, cap);
  b.reserve(static_cast<double>(states.size()) * bids.size() * bids.size());
  std::vector<std::string> acts = labels("bid", bids);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vb.size(); ++j) {
      std::string st = states[i * vb.size() + j];
      std::string n1 = "seller|" + st;
      b.root_edge(st, n1);
      std::vector<std::string> mid;
      for (const auto& a : acts) mid.push_back("buyer|" + st + "|" + a);
      b.decision(n1, 1, "seller|" + label("vs", vs[i]), acts, mid);
      for (std::size_t k = 0; k < bids.size(); ++k) {
        std::vector<std::string> leaves;
        for (const auto& a : acts) leaves.push_back("t|" + st + "|" + acts[k] + "|" + a);
        b.decision(mid[k], 2, "buyer|" + label("vb", vb[j]), acts, leaves);
        for (std::size_t l = 0; l < bids.size(); ++l) {
          double s = bids[k], bb = bids[l];
          std::vector<double> row{0.0, 0.0, 0.0};
          if (s <= bb) row = {0.0, (s + bb) / 2.0 - vs[i], vb[j] - (s + bb) / 2.0};
          b.terminal(leaves[l], rows(states.size(), [&](std::size_t) { return row; }));
        }
      }
    }
  return b.finish();
}

GameSpec public_good_game(const GridSpec& g, const std::map<std::string, double>& prm, std::size_t cap) {
  PublicGoodParams p;
  p.n = static_cast<int>(param(prm, "n", 2));
  p.c = param(prm, "c", 0.5);
  p.v_bar = param(prm, "v_bar", 1.0);
  p.rule = static_cast<TransferRule>(static_cast<int>(param(prm, "rule", 0)));
  check(p);
  std::vector<double> vals = g.at("v").points(), bids = g.at("x").points();
  const std::size_t n = p.n, nv = vals.size(), nx = bids.size();
  double n_states = std::pow(static_cast<double>(nv), static_cast<double>(n));
  double n_leaves = n_states * std::pow(static_cast<double>(nx), static_cast<double>(n));
  if (n_leaves * n_states > static_cast<double>(cap))
    throw InvalidParameters("discretized game exceeds the cell cap of " + std::to_string(cap));

  std::vector<std::vector<std::size_t>> profiles;  // value index per agent
  std::vector<std::string> states;
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t k = 0; k < static_cast<std::size_t>(n_states); ++k) {
    std::size_t r = k;
    std::string id;
    for (std::size_t a = n; a-- > 0;) idx[a] = r % nv, r /= nv;
    for (std::size_t a = 0; a < n; ++a) id += (a ? "|" : "") + label("v" + std::to_string(a + 1), vals[idx[a]]);
    profiles.push_back(idx);
    states.push_back(id);
  }
  Builder b(states, static_cast<int>(n), cap);
  std::vector<std::string> acts = labels("x", bids);
  // Agents move in turn; agent a's set is keyed by its own value.
  std::function<void(std::size_t, std::size_t, const std::string&, std::vector<double>&)> grow =
      [&](std::size_t s, std::size_t a, const std::string& id, std::vector<double>& x) {
        if (a == n) {
          std::vector<double> row(n + 1, 0.0);
          if (public_good_provided(p.c, x))
            for (std::size_t i = 0; i < n; ++i)
              row[i + 1] = vals[profiles[s][i]] - public_good_transfer(p.rule, p.c, x, i);
          b.terminal(id, rows(states.size(), [&](std::size_t) { return row; }));
          return;
        }
        std::vector<std::string> kids;
        for (const auto& act : acts) kids.push_back(id + "|" + act);
        b.decision(id, static_cast<int>(a + 1), "agent" + std::to_string(a + 1) + "|" + label("v", vals[profiles[s][a]]),
                   acts, kids);
        for (std::size_t k = 0; k < nx; ++k) {
          x.push_back(bids[k]);
          grow(s, a + 1, kids[k], x);
          x.pop_back();
        }
      };
  for (std::size_t s = 0; s < states.size(); ++s) {
    b.root_edge(states[s], "n|" + states[s]);
    std::vector<double> x;
    grow(s, 0, "n|" + states[s], x);
  }
  return b.finish();
}

}  // namespace

GameSpec discretize_example(const std::string& id, const GridSpec& grid, const std::map<std::string, double>& params,
                            std::size_t cell_cap) {
  static const std::map<std::string, std::set<std::string>> known = {
      {"cournot", {"a_lo", "a_hi", "b_lo", "b_hi", "n_mix"}},
      {"bertrand", {"a", "b", "c_lo", "c_hi"}},
      {"spence", {"b", "delta"}},
      {"trade_buyer", {}},
      {"trade_seller", {}},
      {"double_auction", {}},
      {"public_good", {"n", "c", "v_bar", "rule"}}};
  auto it = known.find(id);
  if (it == known.end()) throw InvalidParameters("unknown example '" + id + "'");
  for (const auto& [key, value] : params)
    if (!it->second.count(key)) throw InvalidParameters("unknown parameter '" + key + "' for " + id);
  if (id == "cournot") return cournot_game(grid, params, cell_cap);
  if (id == "bertrand") return bertrand_game(grid, params, cell_cap);
  if (id == "spence") return spence_game(grid, params, cell_cap);
  if (id == "trade_buyer") return trade_game(true, grid, cell_cap);
  if (id == "trade_seller") return trade_game(false, grid, cell_cap);
  if (id == "double_auction") return double_auction_game(grid, cell_cap);
  if (id == "public_good") return public_good_game(grid, params, cell_cap);
  throw InvalidParameters("unknown example '" + id + "'");
}

TradeOracleResult two_stage_trade_oracle(Side proposer, std::vector<double> prices, const std::vector<double>& xs,
                                         const std::vector<double>& ys, std::size_t cell_cap) {
  if (prices.empty() || xs.empty() || ys.empty()) throw InvalidParameters("trade oracle grids must be nonempty");
  const double star = proposer == Side::kBuyer ? 0.25 : 0.75;
  for (double& p : prices)
    if (std::fabs(p - star) <= 1e-12) p = star;
  if (std::find(prices.begin(), prices.end(), star) == prices.end()) prices.push_back(star);
  std::sort(prices.begin(), prices.end());
  prices.erase(std::unique(prices.begin(), prices.end()), prices.end());
  const std::size_t np = prices.size(), nx = xs.size(), ny = ys.size();
  if (static_cast<double>(np) * nx * ny * np > static_cast<double>(cell_cap))
    throw InvalidParameters("trade oracle exceeds the cell cap of " + std::to_string(cell_cap));
  const double ylo = *std::min_element(ys.begin(), ys.end()), yhi = *std::max_element(ys.begin(), ys.end());
  const double xlo = *std::min_element(xs.begin(), xs.end()), xhi = *std::max_element(xs.begin(), xs.end());

  // alpha[x][p]: responder's acceptance.
  std::vector<std::vector<double>> alpha(nx, std::vector<double>(np));
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t k = 0; k < np; ++k) {
      if (proposer == Side::kBuyer) {
        alpha[i][k] = responder_best_compromise((xs[i] + ylo) / 2, (xs[i] + yhi) / 2, prices[k], Side::kSeller).alpha;
      } else if (prices[k] == star) {
        alpha[i][k] = responder_best_compromise((xlo + ylo) / 2, (xhi + yhi) / 2, prices[k], Side::kBuyer).alpha;
      } else {
        // Off path the buyer conceives only x = 0.
        alpha[i][k] = responder_best_compromise(ylo / 2, yhi / 2, prices[k], Side::kBuyer).alpha;
      }
    }
  auto gain = [&](double v, double p, double a) { return proposer == Side::kBuyer ? (v - p) * a : (p - v) * a; };

  TradeOracleResult r;
  r.prices = prices;
  r.max_loss.assign(np, 0.0);
  parallel_for(np, [&](std::size_t k) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < ny; ++j) {
        double v = (xs[i] + ys[j]) / 2.0;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t q = 0; q < np; ++q) best = std::max(best, gain(v, prices[q], alpha[i][q]));
        worst = std::max(worst, best - gain(v, prices[k], alpha[i][k]));
      }
    r.max_loss[k] = worst;
  });
  for (std::size_t k = 1; k < np; ++k)
    if (r.max_loss[k] < r.max_loss[r.argmin]) r.argmin = k;
  r.value = r.max_loss[r.argmin];
  r.minimizer_lo = std::numeric_limits<double>::infinity();
  r.minimizer_hi = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < np; ++k)
    if (r.max_loss[k] <= r.value + 1e-12) {
      r.minimizer_lo = std::min(r.minimizer_lo, prices[k]);
      r.minimizer_hi = std::max(r.minimizer_hi, prices[k]);
    }
  return r;
}

void write_trade_oracle_csv(std::ostream& out, const TradeOracleResult& r) {
  out << "price,max_loss\n";
  for (std::size_t k = 0; k < r.prices.size(); ++k) out << fmt(r.prices[k]) << "," << fmt(r.max_loss[k]) << "\n";
}

}  // namespace pce
