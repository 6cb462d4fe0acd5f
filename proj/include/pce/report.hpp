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

#ifndef PCE_REPORT_HPP_
#define PCE_REPORT_HPP_

#include <string>

#include "json.hpp"

#include "pce/belief_system.hpp"
#include "pce/compromise.hpp"
#include "pce/equilibrium.hpp"
#include "pce/game_model.hpp"

namespace pce {

// 12 significant digits, '.' as decimal separator.
std::string fmt(double x);
// x rounded to 12 significant digits (non-finite values pass through).
double round12(double x);

nlohmann::json to_json(const LossReport& r, const GameTree& tree);
nlohmann::json to_json(const VerificationReport& r, const GameTree& tree);
nlohmann::json to_json(const SearchResult& r, const GameTree& tree);
nlohmann::json to_json(const StrategyProfile& p, const GameTree& tree);

// Rounds every floating-point number in place.
void round_numbers(nlohmann::json& j);

}  // namespace pce

#endif  // PCE_REPORT_HPP_
