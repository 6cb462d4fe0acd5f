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

#ifndef PCE_LP_HPP_
#define PCE_LP_HPP_

#include <vector>

namespace pce {

// Small dense linear programs: maximize c.x subject to rows and x >= 0.
// Two-phase tableau simplex with Bland's rule, so it terminates on
// degenerate problems and gives the same answer on every run.
enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct LinearProgram {
  std::vector<double> objective;  // maximized
  std::vector<std::vector<double>> rows;
  std::vector<RowSense> senses;
  std::vector<double> rhs;

  void add_row(std::vector<double> coefficients, RowSense sense, double b);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double value = 0.0;
};

LpResult solve_lp(const LinearProgram& lp, double eps = 1e-11);

}  // namespace pce

#endif  // PCE_LP_HPP_
