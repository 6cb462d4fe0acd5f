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

#ifndef PCE_EQUILIBRIUM_HPP_
#define PCE_EQUILIBRIUM_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pce/belief_system.hpp"
#include "pce/compromise.hpp"
#include "pce/game_model.hpp"
#include "pce/profile.hpp"

namespace pce {

enum class Mode { kMixed, kPure };

struct VerifyOptions {
  Mode mode = Mode::kMixed;
  double tol = 1e-9;
  // Scale tol by the largest absolute payoff.
  bool relative_tol = false;
};

struct VerificationReport {
  Mode mode = Mode::kMixed;
  double tol = 0.0;  // as applied
  std::vector<LossReport> losses;  // strategic sets, document order
  ConsistencyReport consistency;
  bool accepted = false;
  std::string first_violation;  // empty when accepted
  std::vector<double> global_max_loss;  // index p-1 for player p
};

VerificationReport verify_pce(const GameTree& tree, const StrategyProfile& profile, const BeliefSystem& beliefs,
                              const VerifyOptions& options = {});

enum class SearchMethod { kExPost, kIterate, kEnumerate };

struct SearchOptions {
  double eps = 1e-12;       // iterate: stop when no probability moves more
  std::size_t max_iters = 20000;  // iterate: full sweeps
  double step = 0.5;        // iterate: damping
  std::size_t max_profiles = 1000000;  // enumerate/expost
  std::size_t max_results = 16;
  std::size_t random_restarts = 0;  // iterate
  std::uint64_t seed = 0;
  double tol = 1e-9;
};

struct Found {
  StrategyProfile profile;
  BeliefSystem beliefs;
  VerificationReport report;
};

struct SearchResult {
  SearchMethod method = SearchMethod::kIterate;
  std::vector<Found> found;
  // iterate only
  bool converged = false;
  double residual = 0.0;
  std::size_t iterations = 0;
  StrategyProfile last_iterate;
  // enumerate/expost
  std::size_t profiles_scanned = 0;
  std::string note;
};

// Every returned profile is verifier-accepted with derived feasible beliefs
// (mixed mode for expost and iterate, pure mode for enumerate). The search
// is not exhaustive over mixed profiles; an empty result proves nothing.
SearchResult search_pce(const GameTree& tree, SearchMethod method, const SearchOptions& options = {});

// Number of pure strategic profiles (saturates at SIZE_MAX).
std::size_t count_pure_profiles(const GameTree& tree);

struct EliminationStep {
  std::size_t round = 0;
  std::size_t info_set = 0;
  std::size_t action = 0;
  std::vector<double> dominator;  // mixed action over A(phi)
  double margin = 0.0;
};

struct EliminationResult {
  std::vector<std::vector<bool>> surviving;  // [info set][action]
  std::vector<EliminationStep> trace;
  std::size_t rounds = 0;
  // Sets skipped because the continuation profiles below them exceed the cap.
  std::vector<std::size_t> skipped;
};

// Iterated removal of actions strictly dominated by a mixture of surviving
// actions, uniformly over every state, every node of the set and every pure
// surviving continuation below it (chance follows s0).
EliminationResult eliminate_dominated(const GameTree& tree, std::size_t max_contexts = 200000);

}  // namespace pce

#endif  // PCE_EQUILIBRIUM_HPP_
