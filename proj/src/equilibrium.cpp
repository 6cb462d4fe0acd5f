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

#include "pce/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include "pce/lp.hpp"
#include "pce/parallel.hpp"

namespace pce {

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

void check_profile(const GameTree& tree, const StrategyProfile& profile) {
  if (profile.prob.size() != tree.num_info_sets()) throw Error("profile does not cover every information set");
  for (std::size_t i : tree.non_root_info_sets()) {
    const auto& x = profile.at(i);
    if (x.size() != tree.info_set(i).actions.size())
      throw Error("profile has the wrong number of actions at '" + tree.info_set(i).id + "'");
    double sum = 0.0;
    for (double v : x) {
      if (!(v >= 0.0)) throw Error("negative probability at '" + tree.info_set(i).id + "'");
      sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-9) throw Error("distribution not normalized at '" + tree.info_set(i).id + "'");
  }
}

}  // namespace

VerificationReport verify_pce(const GameTree& tree, const StrategyProfile& profile, const BeliefSystem& beliefs,
                              const VerifyOptions& options) {
  check_profile(tree, profile);
  VerificationReport rep;
  rep.mode = options.mode;
  rep.tol = options.tol;
  if (options.relative_tol && tree.payoff_scale() > 0.0) rep.tol *= tree.payoff_scale();
  const bool pure = options.mode == Mode::kPure;
  rep.consistency = check_consistency(tree, profile, beliefs, options.tol);
  PlayValues values(tree, profile);
  rep.global_max_loss.assign(static_cast<std::size_t>(tree.num_players()), 0.0);
  for (std::size_t i : tree.strategic_info_sets()) {
    LossReport r = loss_report(tree, values, profile, beliefs, i, pure);
    const std::string& id = tree.info_set(i).id;
    if (rep.first_violation.empty()) {
      if (pure && pure_action(profile.at(i)) == GameTree::kNone) {
        rep.first_violation = "(a) mixed action at '" + id + "' in pure mode";
      } else if (r.deviation_gap > rep.tol) {
        rep.first_violation = "(a) not a best compromise at '" + id + "': deviation gap " + fmt(r.deviation_gap);
      }
    }
    double& g = rep.global_max_loss[static_cast<std::size_t>(tree.info_set(i).owner) - 1];
    g = std::max(g, r.max_loss);
    rep.losses.push_back(std::move(r));
  }
  if (rep.first_violation.empty() && !rep.consistency.ok()) {
    const auto& v = rep.consistency.violations.front();
    rep.first_violation = "(b) inconsistent beliefs at '" + v.info_set + "'" +
                          (v.state.empty() ? "" : " in state '" + v.state + "'") + ": " + v.rule;
  }
  rep.accepted = rep.first_violation.empty();
  return rep;
}

std::size_t count_pure_profiles(const GameTree& tree) {
  std::size_t total = 1;
  for (std::size_t i : tree.strategic_info_sets()) {
    std::size_t m = tree.info_set(i).actions.size();
    if (total > std::numeric_limits<std::size_t>::max() / m) return std::numeric_limits<std::size_t>::max();
    total *= m;
  }
  return total;
}

namespace {

// Mixed-radix decoding; the first strategic set varies slowest.
StrategyProfile pure_profile(const GameTree& tree, std::size_t index) {
  StrategyProfile p = uniform_profile(tree);
  const auto& sets = tree.strategic_info_sets();
  for (std::size_t j = sets.size(); j-- > 0;) {
    std::size_t m = tree.info_set(sets[j]).actions.size();
    p.at(sets[j]).assign(m, 0.0);
    p.at(sets[j])[index % m] = 1.0;
    index /= m;
  }
  return p;
}

void scan_pure(const GameTree& tree, const SearchOptions& opt, bool expost, SearchResult& out) {
  std::size_t total = count_pure_profiles(tree);
  if (total > opt.max_profiles)
    throw Error("game has " + (total == std::numeric_limits<std::size_t>::max() ? std::string("too many")
                                                                                  : std::to_string(total)) +
                " pure profiles, above the limit of " + std::to_string(opt.max_profiles));
  VerifyOptions vo;
  vo.mode = expost ? Mode::kMixed : Mode::kPure;
  vo.tol = opt.tol;
  const std::size_t batch = 256;
  for (std::size_t lo = 0; lo < total && out.found.size() < opt.max_results; lo += batch) {
    std::size_t hi = std::min(total, lo + batch);
    std::vector<std::optional<Found>> slots(hi - lo);
    parallel_for(hi - lo, [&](std::size_t k) {
      StrategyProfile p = pure_profile(tree, lo + k);
      BeliefSystem b = derive_feasible_beliefs(tree, p);
      VerificationReport r = verify_pce(tree, p, b, vo);
      if (!r.accepted) return;
      if (expost) {
        for (const auto& l : r.losses)
          if (l.max_loss > opt.tol) return;
      }
      slots[k] = Found{std::move(p), std::move(b), std::move(r)};
    });
    out.profiles_scanned = hi;
    for (auto& s : slots) {
      if (s && out.found.size() < opt.max_results) out.found.push_back(std::move(*s));
    }
  }
}

// One damped best-compromise sweep in document order; returns the largest
// probability change.
double sweep(const GameTree& tree, StrategyProfile& p, double step) {
  double change = 0.0;
  for (std::size_t i : tree.strategic_info_sets()) {
    BeliefSystem b = derive_feasible_beliefs(tree, p);
    PlayValues values(tree, p);
    Compromise c = best_compromise_mixed(payoff_table(tree, values, b, i));
    auto& x = p.at(i);
    for (std::size_t k = 0; k < x.size(); ++k) {
      double nx = (1.0 - step) * x[k] + step * c.action[k];
      change = std::max(change, std::fabs(nx - x[k]));
      x[k] = nx;
    }
  }
  return change;
}

struct IterateOutcome {
  StrategyProfile last;
  bool converged = false;
  double residual = 0.0;
  std::size_t iterations = 0;
  std::optional<Found> found;
};

IterateOutcome run_iterate(const GameTree& tree, StrategyProfile start, const SearchOptions& opt) {
  IterateOutcome o;
  o.last = std::move(start);
  for (o.iterations = 0; o.iterations < opt.max_iters;) {
    o.residual = sweep(tree, o.last, opt.step);
    ++o.iterations;
    if (o.residual < opt.eps) {
      o.converged = true;
      break;
    }
  }
  VerifyOptions vo;
  vo.tol = opt.tol;
  // The damped iterate approaches its limit geometrically; an undamped sweep
  // lands on it.
  StrategyProfile polished = o.last;
  sweep(tree, polished, 1.0);
  for (const StrategyProfile* cand : {&o.last, &polished}) {
    BeliefSystem b = derive_feasible_beliefs(tree, *cand);
    VerificationReport r = verify_pce(tree, *cand, b, vo);
    if (r.accepted) {
      o.found = Found{*cand, std::move(b), std::move(r)};
      break;
    }
  }
  return o;
}

}  // namespace

SearchResult search_pce(const GameTree& tree, SearchMethod method, const SearchOptions& opt) {
  SearchResult out;
  out.method = method;
  switch (method) {
    case SearchMethod::kExPost:
      scan_pure(tree, opt, true, out);
      if (out.found.empty()) out.note = "no pure ex post equilibrium; other PCE may exist";
      break;
    case SearchMethod::kEnumerate:
      scan_pure(tree, opt, false, out);
      if (out.found.empty()) out.note = "no pure-mode PCE; mixed PCE may exist";
      break;
    case SearchMethod::kIterate: {
      if (!tree.chance_fully_mixed()) throw Error("iterate requires a fully mixed chance strategy");
      if (!(opt.step > 0.0 && opt.step <= 1.0)) throw Error("step must lie in (0, 1]");
      IterateOutcome o = run_iterate(tree, uniform_profile(tree), opt);
      out.converged = o.converged;
      out.residual = o.residual;
      out.iterations = o.iterations;
      out.last_iterate = o.last;
      if (o.found) out.found.push_back(std::move(*o.found));
      std::mt19937_64 rng(opt.seed);
      std::exponential_distribution<double> expo(1.0);
      for (std::size_t r = 0; r < opt.random_restarts; ++r) {
        StrategyProfile start = uniform_profile(tree);
        for (std::size_t i : tree.strategic_info_sets()) {
          double sum = 0.0;
          for (double& v : start.at(i)) sum += (v = expo(rng));
          for (double& v : start.at(i)) v /= sum;
        }
        IterateOutcome ro = run_iterate(tree, std::move(start), opt);
        if (!ro.found) continue;
        bool dup = false;
        for (const auto& f : out.found) dup = dup || profile_distance(tree, f.profile, ro.found->profile) < 1e-9;
        if (!dup && out.found.size() < opt.max_results) out.found.push_back(std::move(*ro.found));
      }
      if (!out.converged) out.note = "iteration did not converge; residual " + fmt(out.residual);
      else if (out.found.empty()) out.note = "iteration converged to a profile the verifier rejects";
      break;
    }
  }
  if (!out.note.empty()) out.note += "; ";
  out.note += "search is not exhaustive";
  return out;
}

namespace {

// Payoff to `player` at node v in state s when every set in the subtree is
// played with `profile`.
double subtree_value(const GameTree& tree, const StrategyProfile& profile, std::size_t v, std::size_t s,
                     std::size_t player) {
  const auto& n = tree.node(v);
  if (n.kind == NodeKind::kTerminal) return n.payoffs[s][player];
  const auto& x = profile.at(n.info_set);
  double total = 0.0;
  for (std::size_t k = 0; k < n.children.size(); ++k)
    if (x[k] != 0.0) total += x[k] * subtree_value(tree, profile, n.children[k], s, player);
  return total;
}

}  // namespace

EliminationResult eliminate_dominated(const GameTree& tree, std::size_t max_contexts) {
  EliminationResult res;
  const std::size_t ni = tree.num_info_sets();
  res.surviving.assign(ni, {});
  for (std::size_t i = 0; i < ni; ++i) res.surviving[i].assign(tree.info_set(i).actions.size(), true);

  // Strategic sets met below each set.
  std::vector<std::vector<std::size_t>> below(ni);
  for (std::size_t i : tree.strategic_info_sets()) {
    std::vector<bool> mark(ni, false);
    std::vector<std::size_t> stack;
    for (std::size_t v : tree.info_set(i).nodes)
      for (std::size_t c : tree.node(v).children) stack.push_back(c);
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      const auto& n = tree.node(v);
      if (n.kind != NodeKind::kDecision) continue;
      if (n.owner >= 1) mark[n.info_set] = true;
      for (std::size_t c : n.children) stack.push_back(c);
    }
    for (std::size_t j = 0; j < ni; ++j)
      if (mark[j]) below[i].push_back(j);
  }

  const double scale = std::max(tree.payoff_scale(), 1.0);
  for (bool changed = true; changed;) {
    changed = false;
    ++res.rounds;
    std::vector<EliminationStep> removals;
    for (std::size_t i : tree.strategic_info_sets()) {
      std::vector<std::size_t> alive;
      for (std::size_t a = 0; a < res.surviving[i].size(); ++a)
        if (res.surviving[i][a]) alive.push_back(a);
      if (alive.size() < 2) continue;

      // Continuations: pure surviving choices at the sets below.
      std::vector<std::vector<std::size_t>> options;
      std::size_t n_ctx = 1;
      for (std::size_t j : below[i]) {
        std::vector<std::size_t> o;
        for (std::size_t a = 0; a < res.surviving[j].size(); ++a)
          if (res.surviving[j][a]) o.push_back(a);
        n_ctx = (n_ctx > max_contexts / o.size()) ? max_contexts + 1 : n_ctx * o.size();
        options.push_back(std::move(o));
      }
      const auto& is = tree.info_set(i);
      const std::size_t owner = static_cast<std::size_t>(is.owner);
      if (n_ctx * is.nodes.size() * tree.num_states() > max_contexts) {
        if (std::find(res.skipped.begin(), res.skipped.end(), i) == res.skipped.end()) res.skipped.push_back(i);
        continue;
      }
      // u[ctx][action]
      std::vector<std::vector<double>> u;
      StrategyProfile p = uniform_profile(tree);
      std::vector<std::size_t> digit(below[i].size(), 0);
      for (std::size_t c = 0; c < n_ctx; ++c) {
        for (std::size_t q = 0; q < below[i].size(); ++q) {
          auto& x = p.at(below[i][q]);
          std::fill(x.begin(), x.end(), 0.0);
          x[options[q][digit[q]]] = 1.0;
        }
        for (std::size_t v : is.nodes) {
          for (std::size_t s = 0; s < tree.num_states(); ++s) {
            std::vector<double> row(is.actions.size(), 0.0);
            for (std::size_t a : alive) row[a] = subtree_value(tree, p, tree.node(v).children[a], s, owner);
            u.push_back(std::move(row));
          }
        }
        for (std::size_t q = below[i].size(); q-- > 0;) {
          if (++digit[q] < options[q].size()) break;
          digit[q] = 0;
        }
      }
      for (std::size_t a : alive) {
        // max eps s.t. sum_b y_b (u_b - u_a) >= eps on every row, y in simplex.
        std::vector<std::size_t> others;
        for (std::size_t b : alive)
          if (b != a) others.push_back(b);
        const std::size_t r = others.size();
        LinearProgram lp;
        lp.objective.assign(r + 1, 0.0);
        lp.objective[r] = 1.0;
        for (const auto& row : u) {
          std::vector<double> coef(r + 1, 0.0);
          for (std::size_t k = 0; k < r; ++k) coef[k] = row[others[k]] - row[a];
          coef[r] = -1.0;
          lp.add_row(std::move(coef), RowSense::kGreaterEqual, 0.0);
        }
        std::vector<double> ones(r + 1, 1.0);
        ones[r] = 0.0;
        lp.add_row(std::move(ones), RowSense::kEqual, 1.0);
        LpResult sol = solve_lp(lp);
        if (sol.status != LpStatus::kOptimal || sol.value <= 1e-9 * scale) continue;
        EliminationStep st;
        st.round = res.rounds;
        st.info_set = i;
        st.action = a;
        st.margin = sol.value;
        st.dominator.assign(is.actions.size(), 0.0);
        for (std::size_t k = 0; k < r; ++k) st.dominator[others[k]] = sol.x[k];
        removals.push_back(std::move(st));
      }
    }
    for (auto& st : removals) {
      res.surviving[st.info_set][st.action] = false;
      res.trace.push_back(std::move(st));
      changed = true;
    }
  }
  return res;
}

}  // namespace pce
